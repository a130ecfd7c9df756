"""Scramble-diffuse-scramble image cipher.

Pipeline for an ``n x n`` grayscale image ``Q`` (``n`` a prime power):

1. ``sumQ`` perturbs the secret key; the perturbed ``key0`` seeds a length-n
   logistic orbit whose sort order labels GF(n), giving the squares ``M``,
   ``M1``, ``Mgamma`` and the transversal decomposition ``D``.
2. Every transversal of ``D`` is rotated one step: the pixel at its i-th cell
   moves to its (i+1)-th cell (cyclically).
3. The result is flattened row-major and chained with a keystream derived
   from a second logistic orbit and the column-major flattenings of ``M`` and
   ``M1``:  ``P3[i] = P2[i] ^ b[i] ^ P3[i-1]``.
4. Reshaped row-major, pixels are scattered by the orthogonal pair
   ``(M1, Mgamma)``:  ``C[i, j] = P4[M1[i, j], Mgamma[i, j]]``.

Decryption runs the inverse of each stage in reverse order, which requires
``sumQ``; it travels in the clear inside :class:`CipherEnvelope`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import latin
from .chaos import DIFFUSION_BURN_IN, KeyMaterial, logistic_sequence, perturb_keys, sort_index
from .errors import (
    LengthMismatch,
    MalformedEnvelope,
    NotOrthogonal,
    OrderMismatch,
    SumMismatch,
    UnsupportedSize,
)
from .field import SUPPORTED_ORDERS, FiniteField, default_field
from .latin import Labeling, TransversalDecomposition

log = logging.getLogger(__name__)

SUPPORTED_SIZES = SUPPORTED_ORDERS


@dataclass(frozen=True)
class CipherEnvelope:
    """Ciphertext plus what decryption needs besides the key."""

    n: int
    sum_q: int
    payload: bytes

    def __post_init__(self):
        if self.n < 1:
            raise MalformedEnvelope(f"bad side length {self.n}")
        if len(self.payload) != self.n * self.n:
            raise MalformedEnvelope(
                f"payload has {len(self.payload)} bytes, expected {self.n * self.n}"
            )
        if not 0 <= self.sum_q <= 255 * self.n * self.n:
            raise MalformedEnvelope(f"sumQ={self.sum_q} impossible for n={self.n}")
        object.__setattr__(self, "payload", bytes(self.payload))

    @property
    def image(self) -> np.ndarray:
        return np.frombuffer(self.payload, dtype=np.uint8).reshape(self.n, self.n).copy()

    def with_image(self, img) -> "CipherEnvelope":
        img = as_image(img, check_size=False)
        if img.shape[0] != self.n:
            raise OrderMismatch("replacement payload has a different side length")
        return CipherEnvelope(self.n, self.sum_q, img.tobytes())


@dataclass(frozen=True, eq=False)
class CipherMaterial:
    """Everything derived from the key and ``sumQ``."""

    field: FiniteField
    labeling: Labeling
    a_code: int
    M: np.ndarray
    M1: np.ndarray
    Mgamma: np.ndarray
    decomposition: TransversalDecomposition
    x2: np.ndarray

    @property
    def n(self) -> int:
        return self.field.order

    def verify(self) -> dict[str, bool]:
        return latin.verify_design(self.field, self.labeling, self.a_code)


def as_image(img, check_size: bool = True) -> np.ndarray:
    a = np.asarray(img)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise OrderMismatch(f"image must be square, got shape {a.shape}")
    if a.dtype != np.uint8:
        if a.size and (a.min() < 0 or a.max() > 255):
            raise ValueError("pixel values must lie in [0, 255]")
        a = a.astype(np.uint8)
    if check_size and a.shape[0] not in SUPPORTED_SIZES:
        raise UnsupportedSize(f"side {a.shape[0]} not in {SUPPORTED_SIZES}")
    return a


def _field_for(n: int, field: FiniteField | None) -> FiniteField:
    if field is None:
        if n not in SUPPORTED_SIZES:
            raise UnsupportedSize(f"side {n} not in {SUPPORTED_SIZES}")
        return default_field(n)
    if field.order != n:
        raise OrderMismatch(f"GF({field.order}) cannot key an image of side {n}")
    return field


def derive_material(
    sum_q: int,
    n: int,
    key: KeyMaterial,
    *,
    field: FiniteField | None = None,
    labeling: Labeling | None = None,
) -> CipherMaterial:
    """Build squares, decomposition and diffusion orbit for one image.

    ``labeling`` overrides the key-derived labeling (test vectors only).
    """
    field = _field_for(n, field)
    key0, key1 = perturb_keys(key.key0, key.key1, sum_q, n)
    if labeling is None:
        x1 = logistic_sequence(key.mu0, key0, n)
        labeling = Labeling(sort_index(x1)[1])
    a = field.generator if key.a_code is None else key.a_code
    M, M1, Mg = latin.build_squares(field, labeling, a)
    x2 = logistic_sequence(key.mu0, key1, n * n, DIFFUSION_BURN_IN)
    return CipherMaterial(field, labeling, a, M, M1, Mg, TransversalDecomposition(Mg), x2)


# -- stage 1: rotation along transversals -------------------------------------

def _transversal_moves(D: TransversalDecomposition):
    src = D.flat_indices()
    return src.ravel(), np.roll(src, -1, axis=0).ravel()


def scramble_transversal(img, D: TransversalDecomposition) -> np.ndarray:
    img = as_image(img, check_size=False)
    if img.shape[0] != D.n:
        raise OrderMismatch(f"image side {img.shape[0]} vs decomposition order {D.n}")
    src, dst = _transversal_moves(D)
    out = np.empty(img.size, dtype=np.uint8)
    out[dst] = img.ravel()[src]
    return out.reshape(img.shape)


def unscramble_transversal(img, D: TransversalDecomposition) -> np.ndarray:
    img = as_image(img, check_size=False)
    if img.shape[0] != D.n:
        raise OrderMismatch(f"image side {img.shape[0]} vs decomposition order {D.n}")
    src, dst = _transversal_moves(D)
    out = np.empty(img.size, dtype=np.uint8)
    out[src] = img.ravel()[dst]
    return out.reshape(img.shape)


# -- stage 2: chained diffusion -----------------------------------------------

def keystream(x2, lm, lm1, c1: float, c2: float) -> np.ndarray:
    """``b[i] = floor(x2[i] * (1000 + c1*lm[i] + c2*lm1[i])) mod 256``."""
    x2 = np.asarray(x2, dtype=np.float64)
    lm = np.asarray(lm, dtype=np.float64)
    lm1 = np.asarray(lm1, dtype=np.float64)
    if not x2.shape == lm.shape == lm1.shape or x2.ndim != 1:
        raise LengthMismatch(f"lengths {x2.shape}, {lm.shape}, {lm1.shape} differ")
    weights = (1000.0 + c1 * lm) + c2 * lm1
    return (np.floor(x2 * weights).astype(np.int64) % 256).astype(np.uint8)


def _bytes_vector(v, length: int) -> np.ndarray:
    v = np.asarray(v)
    if v.shape != (length,):
        raise LengthMismatch(f"vector of shape {v.shape}, expected ({length},)")
    return v.astype(np.uint8)


def diffuse(p2, x2, lm, lm1, c1: float, c2: float) -> np.ndarray:
    b = keystream(x2, lm, lm1, c1, c2)
    p2 = _bytes_vector(p2, b.size)
    # P3[i] = P2[i] ^ b[i] ^ P3[i-1] is a running XOR
    return np.bitwise_xor.accumulate(p2 ^ b)


def undiffuse(p3, x2, lm, lm1, c1: float, c2: float) -> np.ndarray:
    b = keystream(x2, lm, lm1, c1, c2)
    p3 = _bytes_vector(p3, b.size)
    prev = np.concatenate(([0], p3[:-1])).astype(np.uint8)
    return p3 ^ b ^ prev


# -- stage 3: orthogonal-pair scatter -----------------------------------------

def _pair_index(M1, Mg, n: int, verify: bool) -> np.ndarray:
    M1 = np.asarray(M1, dtype=np.int64)
    Mg = np.asarray(Mg, dtype=np.int64)
    if M1.shape != (n, n) or Mg.shape != (n, n):
        raise OrderMismatch(f"squares {M1.shape}/{Mg.shape} for image side {n}")
    if verify and not latin.are_orthogonal(M1, Mg):
        raise NotOrthogonal("second scrambling needs an orthogonal pair")
    return (M1 * n + Mg).ravel()


def scramble_orthogonal(img, M1, Mg, verify: bool = True) -> np.ndarray:
    img = as_image(img, check_size=False)
    idx = _pair_index(M1, Mg, img.shape[0], verify)
    return img.ravel()[idx].reshape(img.shape)


def unscramble_orthogonal(img, M1, Mg, verify: bool = True) -> np.ndarray:
    img = as_image(img, check_size=False)
    idx = _pair_index(M1, Mg, img.shape[0], verify)
    out = np.empty(img.size, dtype=np.uint8)
    out[idx] = img.ravel()
    return out.reshape(img.shape)


# -- whole pipeline -----------------------------------------------------------

def _column_major(sq) -> np.ndarray:
    return np.asarray(sq).T.ravel()


def encrypt_stages(q, material: CipherMaterial, c1: float, c2: float, verify: bool = False) -> dict:
    """Run the forward pipeline and return every intermediate array."""
    q = as_image(q, check_size=False)
    n = q.shape[0]
    if n != material.n:
        raise OrderMismatch(f"material for n={material.n} used on image of side {n}")
    p1 = scramble_transversal(q, material.decomposition)
    p2 = p1.ravel()
    p3 = diffuse(p2, material.x2, _column_major(material.M), _column_major(material.M1), c1, c2)
    p4 = p3.reshape(n, n)
    cipher = scramble_orthogonal(p4, material.M1, material.Mgamma, verify=verify)
    return {"P1": p1, "P2": p2, "P3": p3, "P4": p4, "cipher": cipher}


def encrypt_image(q, material: CipherMaterial, c1: float, c2: float, verify: bool = False) -> np.ndarray:
    return encrypt_stages(q, material, c1, c2, verify)["cipher"]


def decrypt_image(c, material: CipherMaterial, c1: float, c2: float, verify: bool = False) -> np.ndarray:
    c = as_image(c, check_size=False)
    n = c.shape[0]
    if n != material.n:
        raise OrderMismatch(f"material for n={material.n} used on image of side {n}")
    p4 = unscramble_orthogonal(c, material.M1, material.Mgamma, verify=verify)
    p2 = undiffuse(
        p4.ravel(), material.x2, _column_major(material.M), _column_major(material.M1), c1, c2
    )
    return unscramble_transversal(p2.reshape(n, n), material.decomposition)


def _checked(material: CipherMaterial):
    checks = material.verify()
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise NotOrthogonal(f"design checks failed: {', '.join(failed)}")


def encrypt(q, key: KeyMaterial, *, field: FiniteField | None = None, debug_verify: bool = False) -> CipherEnvelope:
    q = as_image(q, check_size=field is None)
    n = q.shape[0]
    sum_q = int(q.sum(dtype=np.int64))
    material = derive_material(sum_q, n, key, field=field)
    if debug_verify:
        _checked(material)
    cipher = encrypt_image(q, material, key.c1, key.c2, verify=debug_verify)
    return CipherEnvelope(n, sum_q, cipher.tobytes())


def decrypt(
    env: CipherEnvelope,
    key: KeyMaterial,
    *,
    field: FiniteField | None = None,
    check_sum: bool = True,
    debug_verify: bool = False,
) -> np.ndarray:
    """Invert :func:`encrypt`.

    With ``check_sum`` a recovered image whose pixel sum differs from
    ``env.sum_q`` raises :class:`SumMismatch`, which carries the image.
    """
    if not isinstance(env, CipherEnvelope):
        raise MalformedEnvelope(f"expected CipherEnvelope, got {type(env).__name__}")
    material = derive_material(env.sum_q, env.n, key, field=field)
    if debug_verify:
        _checked(material)
    plain = decrypt_image(env.image, material, key.c1, key.c2, verify=debug_verify)
    total = int(plain.sum(dtype=np.int64))
    if total != env.sum_q:
        if check_sum:
            raise SumMismatch(
                f"recovered pixel sum {total} != {env.sum_q}",
                image=plain,
                expected=env.sum_q,
                actual=total,
            )
        log.debug("pixel sum mismatch after decryption: %d != %d", total, env.sum_q)
    return plain
