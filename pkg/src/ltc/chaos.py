"""Logistic-map key schedule.

The secret key is three reals ``(mu0, key0, key1)``.  ``key0`` and ``key1``
are first mixed with the plaintext pixel sum, then seed two logistic orbits:
a short one whose sort order labels the field elements, and a long one that
drives diffusion.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateOrbit, KeyOutOfRange

CHAOS_THRESHOLD = 3.573815
KEY_DIGITS = 15
DIFFUSION_BURN_IN = 100


@dataclass(frozen=True)
class KeyMaterial:
    """Secret key plus the public parameters.

    ``a_code=None`` selects the generator of whichever field the image size
    calls for.
    """

    mu0: float
    key0: float
    key1: float
    a_code: int | None = None
    c1: float = 1.3
    c2: float = 1.5

    def __post_init__(self):
        if not CHAOS_THRESHOLD < self.mu0 <= 4.0:
            raise KeyOutOfRange(f"mu0={self.mu0!r} outside ({CHAOS_THRESHOLD}, 4]")
        for name in ("key0", "key1"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise KeyOutOfRange(f"{name}={v!r} outside (0, 1)")

    def perturbed(self, component: str, delta: float) -> "KeyMaterial":
        return replace(self, **{component: getattr(self, component) + delta})


PAPER_KEY = KeyMaterial(mu0=3.99999, key0=0.123456, key1=0.234567)


def logistic_sequence(lam: float, x0: float, length: int, burn_in: int = 0) -> np.ndarray:
    """Iterate ``x <- lam * x * (1 - x)`` from ``x0``.

    The first ``burn_in`` iterates are discarded and the next ``length`` are
    returned; ``x0`` itself is never part of the output.  Raises
    :class:`DegenerateOrbit` if the seed or any iterate is 0, 1, outside
    (0, 1), or exactly the fixed point ``1 - 1/lam``.
    """
    if not 0.0 < lam <= 4.0:
        raise ValueError(f"lambda={lam!r} outside (0, 4]")
    if length < 0 or burn_in < 0:
        raise ValueError("length and burn_in must be non-negative")
    fixed = 1.0 - 1.0 / lam
    x = float(x0)
    if not 0.0 < x < 1.0 or x == fixed:
        raise DegenerateOrbit(f"seed {x0!r} is degenerate for lambda={lam!r}")
    lam = float(lam)
    out = [0.0] * length
    for k in range(burn_in + length):
        x = lam * x * (1.0 - x)
        if not 0.0 < x < 1.0 or x == fixed:
            raise DegenerateOrbit(f"iterate {k + 1} collapsed to {x!r}")
        if k >= burn_in:
            out[k - burn_in] = x
    return np.array(out, dtype=np.float64)


def plaintext_offset(sum_q: int, n: int) -> float:
    """Pixel sum normalised to [0, 1] and truncated to 15 decimals.

    The floor is taken in exact integer arithmetic.
    """
    top = 255 * n * n
    if not 0 <= sum_q <= top:
        raise KeyOutOfRange(f"sumQ={sum_q} outside [0, {top}]")
    scale = 10**KEY_DIGITS
    return (sum_q * scale // top) / scale


def perturb_keys(key0: float, key1: float, sum_q: int, n: int) -> tuple[float, float]:
    s = plaintext_offset(sum_q, n)
    new = ((key0 + s) / 2, (key1 + s) / 2)
    for v in new:
        if not 0.0 < v < 1.0:
            raise KeyOutOfRange(f"perturbed key {v!r} outside (0, 1)")
    return new


def sort_index(x) -> tuple[np.ndarray, np.ndarray]:
    """Ascending sort; ``lx`` holds original positions, ties keep input order."""
    x = np.asarray(x, dtype=np.float64)
    lx = np.argsort(x, kind="stable")
    return x[lx], lx
