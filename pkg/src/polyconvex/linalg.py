"""Exact Gaussian elimination, subspaces and orthogonal complements."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import Vector, dot, vec


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` with zero rows dropped; ``pivots[i]`` is the
    pivot column of ``rows[i]``.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise ValueError("vectors must share a dimension")
    return len(rref(vectors)[1])


def nullspace(rows: Sequence[Vector], ncols: int) -> list[Vector]:
    """Basis of ``{x : r.x = 0 for r in rows}``."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_linear(rows: Sequence[Vector], rhs: Sequence[Fraction]) -> Vector | None:
    """One solution of ``rows x = rhs`` (free variables zero) or None."""
    n = len(rows[0])
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(vec(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")
        for b in basis:
            if len(b) != self.ambient_dim:
                raise ValueError(f"basis vector of dim {len(b)} in ambient dim {self.ambient_dim}")
        if rank(list(basis)) != len(basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def span(cls, ambient_dim: int, vectors) -> "Subspace":
        """Subspace spanned by possibly dependent ``vectors``."""
        vectors = [vec(v) for v in vectors]
        red, _ = rref(vectors, ambient_dim) if vectors else ([], [])
        return cls(ambient_dim, tuple(red))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(n, [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: Vector) -> bool:
        return rank(list(self.basis) + [vec(x)]) == self.dim

    def same_span(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return rank(list(self.basis) + list(other.basis)) == self.dim


def orthogonal_complement(S: Subspace) -> Subspace:
    return Subspace(S.ambient_dim, tuple(nullspace(list(S.basis), S.ambient_dim)))


def is_orthogonal(S: Subspace, T: Subspace) -> bool:
    return all(dot(a, b) == 0 for a in S.basis for b in T.basis)
