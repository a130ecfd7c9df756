"""Statistical and robustness measurements for cipher images."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .chaos import KeyMaterial
from .cipher import CipherEnvelope, decrypt, encrypt
from .errors import BadParameter, DimensionMismatch, UnsupportedFraction

DIRECTIONS = {"horizontal": (0, 1), "vertical": (1, 0), "diagonal": (1, 1)}
CUT_FRACTIONS = (Fraction(1, 16), Fraction(1, 8), Fraction(1, 4), Fraction(1, 2))
KEY_COMPONENTS = ("mu0", "key0", "key1")


class Correlations(NamedTuple):
    """Adjacent-pixel correlation per direction; None marks a constant sample."""

    horizontal: float | None
    vertical: float | None
    diagonal: float | None


def _gray(img) -> np.ndarray:
    a = np.asarray(img)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D grayscale image, got shape {a.shape}")
    return a


def _same_shape(a, b):
    a, b = _gray(a), _gray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a.astype(np.int64), b.astype(np.int64)


def histogram(img) -> np.ndarray:
    return np.bincount(_gray(img).ravel().astype(np.int64), minlength=256)


def histogram_variance(img) -> float:
    hist = histogram(img).astype(np.float64)
    return float(np.mean((hist - hist.mean()) ** 2))


def entropy(img) -> float:
    hist = histogram(img)
    p = hist[hist > 0] / hist.sum()
    return float(-(p * np.log2(p)).sum())


def pearson(u, v) -> float | None:
    """Population correlation of two samples, None when either is constant."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    du, dv = u - u.mean(), v - v.mean()
    var_u, var_v = np.mean(du * du), np.mean(dv * dv)
    if var_u == 0 or var_v == 0:
        return None
    return float(np.mean(du * dv) / math.sqrt(var_u * var_v))


def adjacent_pairs(img, direction: str, pairs: int | None, rng: np.random.Generator | None = None):
    """Pixel values at sampled positions and their neighbours in ``direction``.

    ``pairs=None`` takes every in-bounds pair; otherwise ``pairs`` anchors
    are drawn uniformly without replacement.
    """
    a = _gray(img)
    dr, dc = DIRECTIONS[direction]
    h, w = a.shape[0] - dr, a.shape[1] - dc
    if h <= 0 or w <= 0:
        raise DimensionMismatch("image too small for neighbour sampling")
    if pairs is None:
        return a[:h, :w].ravel(), a[dr:, dc:].ravel()
    if pairs > h * w:
        raise BadParameter(f"cannot draw {pairs} distinct pairs from {h * w}")
    flat = rng.choice(h * w, size=pairs, replace=False)
    r, c = np.divmod(flat, w)
    return a[r, c], a[r + dr, c + dc]


def correlation_coefficients(img, pairs: int | None = 4000, seed: int = 0) -> Correlations:
    if pairs is not None and pairs < 2:
        raise BadParameter("need at least two pairs")
    rng = np.random.default_rng(seed)
    return Correlations(*(pearson(*adjacent_pairs(img, d, pairs, rng)) for d in DIRECTIONS))


def npcr_uaci(c1, c2) -> tuple[float, float]:
    """Percentages of changed pixels and of mean absolute intensity change."""
    a, b = _same_shape(c1, c2)
    diff = np.abs(a - b)
    npcr = 100.0 * np.count_nonzero(diff) / diff.size
    uaci = 100.0 * diff.sum() / (255.0 * diff.size)
    return float(npcr), float(uaci)


def psnr(reference, test) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` for identical images."""
    a, b = _same_shape(reference, test)
    sse = float(((a - b) ** 2).sum())
    if sse == 0:
        return math.inf
    return 10.0 * math.log10(a.size * 255.0**2 / sse)


def differing_percentage(a, b) -> float:
    return npcr_uaci(a, b)[0]


# -- attacks on the transmitted ciphertext ------------------------------------

def _as_fraction(fraction) -> Fraction:
    fr = Fraction(fraction).limit_denominator(64)
    if fr not in CUT_FRACTIONS:
        raise UnsupportedFraction(f"cut fraction {fraction} not in {{1/16, 1/8, 1/4, 1/2}}")
    return fr


def cut_region(n: int, fraction) -> tuple[int, int]:
    """Rows and columns of the top-left block covering ``fraction`` of the image.

    Powers of 1/4 give a square; 1/8 and 1/2 double the width of the next
    smaller square (n/4 x n/2 and n/2 x n).
    """
    fr = _as_fraction(fraction)
    side = {Fraction(1, 16): (4, 4), Fraction(1, 8): (4, 2), Fraction(1, 4): (2, 2), Fraction(1, 2): (2, 1)}
    dr, dc = side[fr]
    return round(n / dr), round(n / dc)


def cut_attack(env: CipherEnvelope, fraction) -> CipherEnvelope:
    rows, cols = cut_region(env.n, fraction)
    img = env.image
    img[:rows, :cols] = 0
    return env.with_image(img)


def salt_pepper_attack(env: CipherEnvelope, density: float, seed: int = 0) -> CipherEnvelope:
    if not 0.0 <= density <= 1.0:
        raise BadParameter(f"density {density} outside [0, 1]")
    rng = np.random.default_rng(seed)
    img = env.image
    hit = rng.random(img.shape) < density
    salt = rng.random(img.shape) < 0.5
    img[hit] = np.where(salt[hit], 255, 0)
    return env.with_image(img)


def gaussian_attack(env: CipherEnvelope, variance: float, seed: int = 0) -> CipherEnvelope:
    """Add N(0, variance) noise on the [0, 1] intensity scale."""
    if not variance > 0:
        raise BadParameter(f"variance must be positive, got {variance}")
    rng = np.random.default_rng(seed)
    img = env.image.astype(np.float64)
    noisy = np.rint(img + 255.0 * rng.normal(0.0, math.sqrt(variance), img.shape))
    return env.with_image(np.clip(noisy, 0, 255).astype(np.uint8))


def noise_attack(env: CipherEnvelope, kind: str, amount: float, seed: int = 0) -> CipherEnvelope:
    """``kind`` is ``"salt-pepper"`` (amount = density) or ``"gaussian"`` (amount = variance)."""
    if kind in ("salt-pepper", "salt_pepper"):
        return salt_pepper_attack(env, amount, seed)
    if kind == "gaussian":
        return gaussian_attack(env, amount, seed)
    raise BadParameter(f"unknown noise kind {kind!r}")


# -- reports ------------------------------------------------------------------

@dataclass
class MetricsReport:
    name: str
    variance: float
    r_h: float | None
    r_v: float | None
    r_d: float | None
    entropy: float
    npcr: float | None = None
    uaci: float | None = None
    psnr: float | None = None
    histogram: list[int] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["psnr"] == math.inf:
            d["psnr"] = "inf"
        return d

    def to_text(self) -> str:
        lines = []
        for k, v in self.to_dict().items():
            if k == "histogram":
                v = " ".join(map(str, v))
            elif v is None:
                v = "undefined" if k.startswith("r_") else "na"
            elif isinstance(v, float):
                v = f"{v:.6f}"
            lines.append(f"{k}={v}")
        return "\n".join(lines) + "\n"


def analyze_image(img, name: str = "image", reference=None, pairs: int | None = 4000, seed: int = 0) -> MetricsReport:
    """Single-image statistics; with ``reference`` also NPCR/UACI/PSNR against it."""
    r = correlation_coefficients(img, pairs, seed)
    report = MetricsReport(
        name=name,
        variance=histogram_variance(img),
        r_h=r.horizontal,
        r_v=r.vertical,
        r_d=r.diagonal,
        entropy=entropy(img),
        histogram=histogram(img).tolist(),
    )
    if reference is not None:
        report.npcr, report.uaci = npcr_uaci(reference, img)
        report.psnr = psnr(reference, img)
    return report


def key_sensitivity_report(q, key: KeyMaterial, delta: float = 1e-15) -> dict[str, dict[str, float]]:
    """Differing-pixel percentages when each key component moves by ``delta``.

    ``encryption``: ciphertext under the true key vs under the perturbed key.
    ``decryption``: plaintext vs the perturbed key's decryption of the true
    ciphertext.
    """
    env = encrypt(q, key)
    plain = np.asarray(q)
    report = {}
    for comp in KEY_COMPONENTS:
        other = key.perturbed(comp, delta)
        enc = differing_percentage(env.image, encrypt(q, other).image)
        dec = differing_percentage(plain, decrypt(env, other, check_sum=False))
        report[comp] = {"encryption": enc, "decryption": dec}
    return report
