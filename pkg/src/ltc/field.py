"""Arithmetic in GF(p^m).

Elements are coded as integers ``0 .. p^m - 1``: the base-``p`` digits of a
code are the polynomial coefficients of the element, least significant digit
first.  Code 0 is the additive identity, code 1 the multiplicative identity,
and for ``m >= 2`` code ``p`` is the indeterminate ``x``.  Over GF(2^m),
addition of codes is a plain XOR.

Polynomials are passed as coefficient sequences ordered from the constant
term upwards, so ``x^2 + x + 2`` over GF(3) is ``(2, 1, 1)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import CodeOutOfRange, NotIrreducible, NotPrime, NotPrimitive

MAX_ORDER = 1 << 16

# x (the root) is primitive for each of these; 0x11B from AES is deliberately
# absent because x does not generate its multiplicative group.
DEFAULT_POLYNOMIALS = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 1, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 1, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
}

SUPPORTED_ORDERS = tuple(sorted(DEFAULT_POLYNOMIALS))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``n == p**m`` or None if n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    m, rest = 0, n
    while rest % p == 0:
        rest //= p
        m += 1
    return (p, m) if rest == 1 else None


# -- dense polynomial helpers over GF(p), lowest coefficient first ------------

def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a divided by the monic polynomial b."""
    a = list(a)
    db = len(b) - 1
    for shift in range(len(a) - 1 - db, -1, -1):
        c = a[shift + db] % p
        if c:
            for k, bk in enumerate(b):
                a[shift + k] = (a[shift + k] - c * bk) % p
    return _trim([c % p for c in a[:db]] or [0])


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if _poly_mod(list(poly), list(low) + [1], p) == [0]:
                return False
    return True


class FiniteField:
    """GF(p^m) defined by a monic primitive polynomial.

    Construction checks that ``p`` is prime, that the polynomial is
    irreducible and that its root generates the multiplicative group; the
    field is immutable afterwards.  The arithmetic methods accept Python ints
    or integer numpy arrays (broadcasting like numpy) and return the same
    kind.
    """

    def __init__(self, p: int, m: int, poly):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError(f"extension degree must be >= 1, got {m}")
        n = p**m
        if n > MAX_ORDER:
            raise ValueError(f"fields larger than {MAX_ORDER} are not supported")
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != m + 1 or poly[-1] != 1:
            raise ValueError(f"polynomial must be monic of degree {m}: {poly}")
        if not _is_irreducible(poly, p):
            raise NotIrreducible(f"{format_poly(poly)} is reducible over GF({p})")

        self.p, self.m, self.order = p, m, n
        self.poly = poly

        weights = p ** np.arange(m, dtype=np.int64)
        digits = (np.arange(n, dtype=np.int64)[:, None] // weights) % p
        self._weights = weights
        self._digits = digits

        # Powers of the root: multiply by x and reduce with x^m = -(poly[:m]).
        exp = np.zeros(n - 1, dtype=np.int64)
        log = np.full(n, -1, dtype=np.int64)
        tail = np.array(poly[:m], dtype=np.int64)
        vec = np.zeros(m, dtype=np.int64)
        vec[0] = 1
        for k in range(n - 1):
            code = int(vec @ weights)
            if log[code] >= 0:
                raise NotPrimitive(
                    f"{format_poly(poly)} is irreducible but its root has order {k}"
                )
            exp[k] = code
            log[code] = k
            top = vec[-1]
            vec = np.concatenate(([0], vec[:-1]))
            vec = (vec - top * tail) % p
        if int(vec @ weights) != 1:
            raise NotPrimitive(f"{format_poly(poly)} does not define a cyclic group")
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp_table = exp
        self.log_table = log
        self.generator = int(exp[1]) if n > 2 else 1

    def __repr__(self):
        return f"FiniteField(p={self.p}, m={self.m}, poly={format_poly(self.poly)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.poly) == (other.p, other.poly)

    def __hash__(self):
        return hash((self.p, self.poly))

    # -- helpers --------------------------------------------------------------

    def _codes(self, *xs):
        out = []
        for x in xs:
            a = np.asarray(x, dtype=np.int64)
            if a.size and (a.min() < 0 or a.max() >= self.order):
                raise CodeOutOfRange(f"element code outside [0, {self.order - 1}]")
            out.append(a)
        return out

    @staticmethod
    def _result(r, *inputs):
        if all(np.ndim(x) == 0 for x in inputs):
            return int(r)
        return r

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- arithmetic -----------------------------------------------------------

    def add(self, x, y):
        a, b = self._codes(x, y)
        if self.p == 2:
            r = a ^ b
        else:
            r = ((self._digits[a] + self._digits[b]) % self.p) @ self._weights
        return self._result(r, x, y)

    def neg(self, x):
        (a,) = self._codes(x)
        if self.p == 2:
            r = a
        else:
            r = ((-self._digits[a]) % self.p) @ self._weights
        return self._result(r, x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        a, b = self._codes(x, y)
        r = np.where(
            (a == 0) | (b == 0),
            0,
            self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.order - 1)],
        )
        return self._result(r, x, y)

    def inv(self, x):
        (a,) = self._codes(x)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no multiplicative inverse")
        r = self.exp_table[(-self.log_table[a]) % (self.order - 1)]
        return self._result(r, x)

    def pow(self, x, k: int):
        (a,) = self._codes(x)
        if k == 0:
            return self._result(np.ones_like(a), x)
        if k < 0:
            return self.pow(self.inv(x), -k)
        r = np.where(a == 0, 0, self.exp_table[(self.log_table[a] * k) % (self.order - 1)])
        return self._result(r, x)

    def scalar(self, k: int) -> int:
        """The element ``k * 1``, i.e. the prime-subfield image of integer k."""
        return int(k) % self.p

    def addition_table(self) -> np.ndarray:
        e = self.elements()
        return self.add(e[:, None], e[None, :])

    def multiplication_table(self) -> np.ndarray:
        e = self.elements()
        return self.mul(e[:, None], e[None, :])


def format_poly(poly) -> str:
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = poly[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = str(c) if (c != 1 or k == 0) else ""
        terms.append(coef + mono)
    return " + ".join(terms) or "0"


def build_field(p: int, m: int, poly=None) -> FiniteField:
    """Build GF(p^m); ``poly=None`` uses the default polynomial for ``p**m``."""
    if poly is None:
        n = p**m
        if n not in DEFAULT_POLYNOMIALS:
            raise ValueError(f"no default primitive polynomial for order {n}")
        poly = DEFAULT_POLYNOMIALS[n]
    return FiniteField(p, m, poly)


@lru_cache(maxsize=None)
def default_field(n: int) -> FiniteField:
    """The field of order n built from :data:`DEFAULT_POLYNOMIALS` (cached)."""
    pm = prime_power(n)
    if pm is None or n not in DEFAULT_POLYNOMIALS:
        raise ValueError(f"order {n} is not one of the supported orders {SUPPORTED_ORDERS}")
    return FiniteField(*pm, DEFAULT_POLYNOMIALS[n])
