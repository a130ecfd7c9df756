"""Latin squares built from a labelled finite field, and their verifiers.

A :class:`Labeling` fixes the order in which field elements are indexed: the
i-th element ``g_i`` is the element with code ``perm[i]``.  Every square built
here stores *indices* (``theta(g) = i`` for ``g = g_i``), never raw codes, so
the symbols of an order-n square are always ``0 .. n-1``.

For a multiplier ``a`` outside ``{0, 1, -1}`` the three squares

* ``M[i, j]      = theta(g_i + g_j)``           (Cayley table of addition)
* ``M1[i, j]     = theta((1 + a) g_i + g_j)``
* ``Mgamma[i, j] = theta(a g_i + g_j)``

are pairwise orthogonal, and column j of ``Mgamma`` lists the column of the
i-th cell of a transversal of ``M``.  Together the n transversals partition
the n^2 cells of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidA, NotBijection, OrderMismatch
from .field import FiniteField


@dataclass(frozen=True, eq=False)
class Labeling:
    """Key-dependent indexing of field elements; ``g_i`` has code ``perm[i]``."""

    perm: np.ndarray

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64).copy()
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise NotBijection("labeling must be a permutation of 0..n-1")
        perm.setflags(write=False)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(perm.size)
        inv.setflags(write=False)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "theta_inv", inv)

    @classmethod
    def identity(cls, n: int) -> "Labeling":
        return cls(np.arange(n))

    @property
    def n(self) -> int:
        return self.perm.size

    def __eq__(self, other):
        return isinstance(other, Labeling) and np.array_equal(self.perm, other.perm)


@dataclass(frozen=True, eq=False)
class TransversalDecomposition:
    """n disjoint transversals of ``M`` stored by column index.

    ``columns[i, j]`` is the column of the i-th cell of transversal j, whose
    row is i.  This is the natural-index form of the truncated decomposition
    array: ``positions[i, j] == (i, columns[i, j])``.
    """

    columns: np.ndarray

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def positions(self) -> np.ndarray:
        n = self.n
        rows = np.broadcast_to(np.arange(n)[:, None], (n, n))
        return np.stack([rows, self.columns], axis=-1)

    def transversal(self, j: int) -> list[tuple[int, int]]:
        return [(i, int(c)) for i, c in enumerate(self.columns[:, j])]

    def flat_indices(self) -> np.ndarray:
        """Row-major cell index of every ``positions[i, j]``."""
        return np.arange(self.n)[:, None] * self.n + self.columns


def check_multiplier(field: FiniteField, a: int) -> int:
    a = int(a)
    if not 0 <= a < field.order:
        raise InvalidA(f"a={a} is not an element code of GF({field.order})")
    if a in (0, 1, field.scalar(-1)):
        raise InvalidA(f"a={a} must not be 0, 1 or -1 in GF({field.order})")
    return a


def valid_multipliers(field: FiniteField) -> list[int]:
    bad = {0, 1, field.scalar(-1)}
    return [a for a in range(field.order) if a not in bad]


def _check_labeling(field: FiniteField, labeling: Labeling | None) -> Labeling:
    if labeling is None:
        return Labeling.identity(field.order)
    if labeling.n != field.order:
        raise OrderMismatch(f"labeling of size {labeling.n} for GF({field.order})")
    return labeling


def build_squares(field: FiniteField, labeling: Labeling | None, a: int):
    """Return ``(M, M1, Mgamma)`` as ``int64`` arrays of labelled indices.

    ``a`` is a canonical element code, independent of the labeling.
    """
    labeling = _check_labeling(field, labeling)
    a = check_multiplier(field, a)
    g = labeling.perm
    theta = labeling.theta_inv
    col = g[None, :]
    M = theta[field.add(g[:, None], col)]
    Mg = theta[field.add(field.mul(a, g)[:, None], col)]
    M1 = theta[field.add(field.mul(field.add(1, a), g)[:, None], col)]
    return M, M1, Mg


def build_decomposition(field: FiniteField, labeling: Labeling | None, a: int) -> TransversalDecomposition:
    _, _, Mg = build_squares(field, labeling, a)
    return TransversalDecomposition(Mg)


def gamma_mapping(field: FiniteField, labeling: Labeling | None, a: int, j: int) -> np.ndarray:
    """The map ``x -> a x + g_j`` as a permutation of labelled indices."""
    labeling = _check_labeling(field, labeling)
    a = check_multiplier(field, a)
    g = labeling.perm
    return labeling.theta_inv[field.add(field.mul(a, g), g[j])]


# -- verifiers ----------------------------------------------------------------

def is_latin_square(sq) -> bool:
    try:
        a = np.asarray(sq, dtype=np.int64)
    except (TypeError, ValueError):
        return False
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.size == 0:
        return False
    n = a.shape[0]
    if a.min() < 0 or a.max() >= n:
        return False
    target = np.arange(n)
    return bool(
        (np.sort(a, axis=1) == target).all() and (np.sort(a, axis=0) == target[:, None]).all()
    )


def are_orthogonal(A, B) -> bool:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise OrderMismatch(f"cannot compare squares of shapes {A.shape} and {B.shape}")
    n = A.shape[0]
    pairs = A.ravel() * n + B.ravel()
    return np.unique(pairs).size == n * n


def is_transversal(sq, positions) -> bool:
    a = np.asarray(sq, dtype=np.int64)
    pos = np.asarray(positions, dtype=np.int64).reshape(-1, 2)
    n = a.shape[0]
    if pos.shape[0] != n or pos.min() < 0 or pos.max() >= n:
        return False
    rows, cols = pos[:, 0], pos[:, 1]
    symbols = a[rows, cols]
    return all(np.unique(v).size == n for v in (rows, cols, symbols))


def is_complete_mapping(field: FiniteField, labeling: Labeling | None, mapping) -> bool:
    """True iff ``x -> x + mapping(x)`` is a bijection.

    ``mapping`` is a permutation of labelled indices: ``mapping[i] = k`` means
    ``g_i`` maps to ``g_k``.
    """
    labeling = _check_labeling(field, labeling)
    mp = np.asarray(mapping, dtype=np.int64)
    if mp.shape != (field.order,) or not np.array_equal(np.sort(mp), np.arange(field.order)):
        raise NotBijection("mapping is not a permutation of the field")
    g = labeling.perm
    sigma = field.add(g, g[mp])
    return np.unique(sigma).size == field.order


def is_decomposition_of(M, decomposition: TransversalDecomposition) -> bool:
    """Every column is a transversal of M and together they cover every cell once."""
    M = np.asarray(M)
    n = M.shape[0]
    if decomposition.n != n:
        return False
    pos = decomposition.positions
    if not all(is_transversal(M, pos[:, j]) for j in range(n)):
        return False
    return np.unique(decomposition.flat_indices()).size == n * n


def verify_design(field: FiniteField, labeling: Labeling | None, a: int) -> dict[str, bool]:
    """Run every combinatorial check on the material built from (field, labeling, a)."""
    labeling = _check_labeling(field, labeling)
    M, M1, Mg = build_squares(field, labeling, a)
    D = TransversalDecomposition(Mg)
    return {
        "M_latin": is_latin_square(M),
        "M1_latin": is_latin_square(M1),
        "Mgamma_latin": is_latin_square(Mg),
        "M_M1_orthogonal": are_orthogonal(M, M1),
        "M_Mgamma_orthogonal": are_orthogonal(M, Mg),
        "M1_Mgamma_orthogonal": are_orthogonal(M1, Mg),
        "n_transversal": is_decomposition_of(M, D),
        "complete_mappings": all(
            is_complete_mapping(field, labeling, gamma_mapping(field, labeling, a, j))
            for j in range(field.order)
        ),
    }


# -- text form ----------------------------------------------------------------

def square_to_text(sq) -> str:
    """Row-major text, one row per line, symbols separated by single spaces."""
    return "".join(" ".join(str(int(v)) for v in row) + "\n" for row in np.asarray(sq))


def square_from_text(text: str) -> np.ndarray:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    return np.array(rows, dtype=np.int64)
