"""Partially-open polyhedral convex sets.

A :class:`Cell` is a finite conjunction of linear constraints, each ``<=``,
``<`` or ``=``. A :class:`ConvexRegion` is a finite union of cells that is
asserted (and probed) to be convex. :class:`HPolyhedron` is the closed
special case, used for every set the calculus produces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import dd
from .linalg import rref
from .lp import EQ, LE, LPProblem, solve_lp
from .rational import (
    MINUS_INF,
    PLUS_INF,
    ExtRational,
    Vector,
    dot,
    fmt,
    integer_scaled,
    vec,
)

MAX_DIM = 8
LE_, LT_, EQ_ = "le", "lt", "eq"
_RELATIONS = (LE_, LT_, EQ_)


class DimensionCapError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LinearConstraint:
    normal: Vector
    bound: Fraction
    relation: str = LE_

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"relation must be one of {_RELATIONS}, got {self.relation!r}")
        object.__setattr__(self, "normal", vec(self.normal))
        object.__setattr__(self, "bound", Fraction(self.bound))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def holds(self, x: Vector) -> bool:
        v = dot(self.normal, x)
        if self.relation == LE_:
            return v <= self.bound
        if self.relation == LT_:
            return v < self.bound
        return v == self.bound

    def relaxed(self) -> "LinearConstraint":
        if self.relation == LT_:
            return LinearConstraint(self.normal, self.bound, LE_)
        return self

    def negations(self) -> list["LinearConstraint"]:
        """Constraints whose union is the complement of this one."""
        neg = tuple(-a for a in self.normal)
        if self.relation == LE_:
            return [LinearConstraint(neg, -self.bound, LT_)]
        if self.relation == LT_:
            return [LinearConstraint(neg, -self.bound, LE_)]
        return [
            LinearConstraint(self.normal, self.bound, LT_),
            LinearConstraint(neg, -self.bound, LT_),
        ]

    def normalized(self) -> "LinearConstraint":
        """Positive rescaling with the first nonzero coefficient of size one."""
        lead = next((a for a in self.normal if a != 0), None)
        if lead is None:
            return self
        s = abs(lead) if self.relation != EQ_ else lead
        return LinearConstraint(tuple(a / s for a in self.normal), self.bound / s, self.relation)

    def __str__(self):
        sym = {LE_: "<=", LT_: "<", EQ_: "="}[self.relation]
        return f"{_linear_form(self.normal)} {sym} {fmt(self.bound)}"


def _linear_form(a: Sequence[Fraction]) -> str:
    terms = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else f"{fmt(mag)}*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{coef}x{i + 1}"))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in terms[1:]])


def le(normal, bound) -> LinearConstraint:
    return LinearConstraint(vec(normal), Fraction(bound), LE_)


def ge(normal, bound) -> LinearConstraint:
    return LinearConstraint(tuple(-a for a in vec(normal)), -Fraction(bound), LE_)


def lt(normal, bound) -> LinearConstraint:
    return LinearConstraint(vec(normal), Fraction(bound), LT_)


def gt(normal, bound) -> LinearConstraint:
    return LinearConstraint(tuple(-a for a in vec(normal)), -Fraction(bound), LT_)


def eq(normal, bound) -> LinearConstraint:
    return LinearConstraint(vec(normal), Fraction(bound), EQ_)


def _check_dim(n: int):
    if n < 1:
        raise ValueError("ambient dimension must be positive")


@dataclass(frozen=True)
class Cell:
    ambient_dim: int
    constraints: tuple = ()

    def __post_init__(self):
        _check_dim(self.ambient_dim)
        cons = tuple(self.constraints)
        for c in cons:
            if c.dim != self.ambient_dim:
                raise ValueError(f"constraint of dim {c.dim} in a cell of dim {self.ambient_dim}")
        object.__setattr__(self, "constraints", cons)

    def contains(self, x: Vector) -> bool:
        return all(c.holds(x) for c in self.constraints)

    @property
    def is_closed_form(self) -> bool:
        return all(c.relation != LT_ for c in self.constraints)

    def relaxed(self) -> "HPolyhedron":
        return HPolyhedron(self.ambient_dim, tuple(c.relaxed() for c in self.constraints))

    def meet(self, other: "Cell | HPolyhedron") -> "Cell":
        return Cell(self.ambient_dim, self.constraints + tuple(other.constraints))

    def with_constraints(self, extra: Iterable[LinearConstraint]) -> "Cell":
        return Cell(self.ambient_dim, self.constraints + tuple(extra))


@dataclass(frozen=True)
class HPolyhedron:
    """Closed polyhedron ``{x : a.x <= b, e.x = c}``."""

    ambient_dim: int
    constraints: tuple = ()

    def __post_init__(self):
        _check_dim(self.ambient_dim)
        cons = tuple(self.constraints)
        for c in cons:
            if c.relation == LT_:
                raise ValueError("HPolyhedron cannot hold strict constraints")
            if c.dim != self.ambient_dim:
                raise ValueError(f"constraint of dim {c.dim} in a polyhedron of dim {self.ambient_dim}")
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def empty(cls, n: int) -> "HPolyhedron":
        return cls(n, (LinearConstraint((Fraction(0),) * n, Fraction(-1), LE_),))

    @classmethod
    def universe(cls, n: int) -> "HPolyhedron":
        return cls(n, ())

    @classmethod
    def box(cls, bounds: Sequence[tuple]) -> "HPolyhedron":
        """Product of intervals; ``None`` marks an infinite end."""
        n = len(bounds)
        cons = []
        for i, (lo, hi) in enumerate(bounds):
            e = tuple(Fraction(int(j == i)) for j in range(n))
            if lo is not None and hi is not None and Fraction(lo) == Fraction(hi):
                cons.append(eq(e, lo))
                continue
            if lo is not None:
                cons.append(ge(e, lo))
            if hi is not None:
                cons.append(le(e, hi))
        return cls(n, tuple(cons))

    def contains(self, x: Vector) -> bool:
        return all(c.holds(x) for c in self.constraints)

    def as_cell(self) -> Cell:
        return Cell(self.ambient_dim, self.constraints)

    def as_region(self) -> "ConvexRegion":
        return ConvexRegion(self.ambient_dim, (self.as_cell(),), True)

    def meet(self, other: "HPolyhedron") -> "HPolyhedron":
        return HPolyhedron(self.ambient_dim, self.constraints + other.constraints)

    def is_empty(self) -> bool:
        return cell_is_empty(self.as_cell())

    def canonical(self) -> "HPolyhedron":
        return canonical(self)

    def as_box(self):
        """Per-coordinate ``(lo, hi)`` bounds if every constraint is axis-aligned."""
        return as_box(self)

    def describe(self) -> str:
        return describe(self)


@dataclass(frozen=True)
class ConvexRegion:
    ambient_dim: int
    cells: tuple
    convexity_checked: bool = False

    def __post_init__(self):
        _check_dim(self.ambient_dim)
        cells = tuple(self.cells)
        if not cells:
            raise ValueError("a region needs at least one cell (use an empty cell for the empty set)")
        for c in cells:
            if c.ambient_dim != self.ambient_dim:
                raise ValueError("cell dimension does not match region")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_cells(cls, *cells: Cell) -> "ConvexRegion":
        return cls(cells[0].ambient_dim, tuple(cells))

    def checked(self) -> "ConvexRegion":
        """Validated copy; raises ``ValueError`` when a convexity probe fails."""
        if self.convexity_checked:
            return self
        ok, witness = validate_convexity(self)
        if not ok:
            u, v, m = witness
            raise ValueError(
                f"region is not convex: segment [{_pt(u)}, {_pt(v)}] leaves it at {_pt(m)}"
            )
        return ConvexRegion(self.ambient_dim, self.cells, True)

    def contains(self, x: Vector) -> bool:
        return contains(self, x)


SetLike = Union[ConvexRegion, HPolyhedron, Cell]


def _pt(x) -> str:
    return "(" + ", ".join(fmt(v) for v in x) + ")"


def _cells_of(A: SetLike) -> tuple:
    if isinstance(A, ConvexRegion):
        return A.cells
    if isinstance(A, HPolyhedron):
        return (A.as_cell(),)
    return (A,)


def _dim_of(A: SetLike) -> int:
    return A.ambient_dim


# -- LP helpers ---------------------------------------------------------------


def _lp_rows(constraints: Iterable[LinearConstraint], extra_zeros: int = 0):
    pad = (Fraction(0),) * extra_zeros
    rows = []
    for c in constraints:
        rel = EQ if c.relation == EQ_ else LE
        rows.append((c.normal + pad, rel, c.bound))
    return rows


def cell_point(cell: Cell) -> Vector | None:
    """A point of the cell, or None when it is empty.

    Strict constraints ``a.x < b`` are enforced by maximising a common slack
    ``t <= 1`` in ``a.x + t <= b``; the cell is nonempty iff the optimum is
    positive.
    """
    n = cell.ambient_dim
    strict = [c for c in cell.constraints if c.relation == LT_]
    closed = [c for c in cell.constraints if c.relation != LT_]
    if not strict:
        res = solve_lp(LPProblem((Fraction(0),) * n, "min", tuple(_lp_rows(closed))))
        return res.witness if res.optimal else None
    rows = _lp_rows(closed, 1)
    for c in strict:
        rows.append((c.normal + (Fraction(1),), LE, c.bound))
    rows.append(((Fraction(0),) * n + (Fraction(1),), LE, Fraction(1)))
    obj = (Fraction(0),) * n + (Fraction(1),)
    res = solve_lp(LPProblem(obj, "max", tuple(rows)))
    if not res.optimal or res.value.value <= 0:
        return None
    return res.witness[:n]


def cell_is_empty(cell: Cell) -> bool:
    return cell_point(cell) is None


def _maximize_over(cons, direction: Vector):
    res = solve_lp(LPProblem(direction, "max", tuple(_lp_rows(cons))))
    return res


# -- basic operations -------------------------------------------------------------


def contains(R: SetLike, x: Vector) -> bool:
    x = vec(x)
    if len(x) != _dim_of(R):
        raise ValueError(f"point of dim {len(x)} vs set of dim {_dim_of(R)}")
    return any(c.contains(x) for c in _cells_of(R))


def is_empty(R: SetLike) -> bool:
    return all(cell_is_empty(c) for c in _cells_of(R))


def nonempty_cells(R: SetLike) -> list[Cell]:
    return [c for c in _cells_of(R) if not cell_is_empty(c)]


def region_point(R: SetLike) -> Vector | None:
    for c in _cells_of(R):
        p = cell_point(c)
        if p is not None:
            return p
    return None


def closure(R: SetLike) -> HPolyhedron:
    """Topological closure of a convex region as a closed polyhedron.

    The closure of a nonempty partially-open cell is its relaxation; the
    closure of a convex union is the closed convex hull of those, obtained
    by projecting the disjunctive lift
    ``x = sum x_k, A_k x_k <= l_k b_k, sum l_k = 1, l_k >= 0``.
    """
    if isinstance(R, HPolyhedron):
        return R
    if isinstance(R, ConvexRegion) and not R.convexity_checked:
        raise ValueError("closure needs a convexity-checked region")
    n = _dim_of(R)
    cells = nonempty_cells(R)
    if not cells:
        return HPolyhedron.empty(n)
    if len(cells) == 1:
        return cells[0].relaxed()
    return hull_of_union([c.relaxed() for c in cells])


def hull_of_union(polys: Sequence[HPolyhedron]) -> HPolyhedron:
    """Closed convex hull of a union of nonempty closed polyhedra."""
    n = polys[0].ambient_dim
    K = len(polys)
    N = n + K * n + K
    z = Fraction(0)
    cons = []
    # x - sum x_k = 0
    for i in range(n):
        a = [z] * N
        a[i] = Fraction(1)
        for k in range(K):
            a[n + k * n + i] = Fraction(-1)
        cons.append(eq(a, 0))
    for k, P in enumerate(polys):
        for c in P.constraints:
            a = [z] * N
            a[n + k * n : n + (k + 1) * n] = c.normal
            a[n + K * n + k] = -c.bound
            cons.append(LinearConstraint(tuple(a), z, c.relation))
        a = [z] * N
        a[n + K * n + k] = Fraction(-1)
        cons.append(le(a, 0))
    cons.append(eq([z] * (n + K * n) + [Fraction(1)] * K, 1))
    return project(HPolyhedron(N, tuple(cons)), range(n))


# -- Fourier-Motzkin ---------------------------------------------------------------


def _norm_key(c: LinearConstraint):
    ints = integer_scaled(c.normal + (c.bound,))
    return ints


def _dedupe(cons: Sequence[LinearConstraint]) -> list[LinearConstraint] | None:
    """Drop trivial and parallel-dominated inequalities; None if trivially infeasible."""
    best: dict[tuple, LinearConstraint] = {}
    eqs = []
    for c in cons:
        if not any(c.normal):
            if (c.relation == EQ_ and c.bound != 0) or (c.relation == LE_ and c.bound < 0):
                return None
            continue
        if c.relation == EQ_:
            eqs.append(c.normalized())
            continue
        nc = c.normalized()
        key = nc.normal
        if key not in best or nc.bound < best[key].bound:
            best[key] = nc
    seen = set()
    out_eqs = []
    for e in eqs:
        k = (e.normal, e.bound)
        if k not in seen:
            seen.add(k)
            out_eqs.append(e)
    return out_eqs + [best[k] for k in sorted(best)]


_FM_PRUNE_AT = 24


def _dedupe_rows(rows):
    """FM rows ``(normal, bound, history)``: drop trivial ones, keep the tightest parallel."""
    best: dict = {}
    for a, b, h in rows:
        lead = next((x for x in a if x != 0), None)
        if lead is None:
            if b < 0:
                return None
            continue
        s = abs(lead)
        a, b = tuple(x / s for x in a), b / s
        old = best.get(a)
        if old is None or b < old[0] or (b == old[0] and len(h) < len(old[1])):
            best[a] = (b, h)
    return [(a, b, h) for a, (b, h) in sorted(best.items())]


def remove_redundant(cons: Sequence[LinearConstraint], n: int) -> list[LinearConstraint]:
    """Drop inequalities implied by the others, one certifying LP each."""
    cons = list(cons)
    eqs = [c for c in cons if c.relation == EQ_]
    ineqs = [c for c in cons if c.relation != EQ_]
    kept = list(ineqs)
    i = 0
    while i < len(kept):
        c = kept[i]
        others = eqs + kept[:i] + kept[i + 1 :]
        res = _maximize_over(others, c.normal)
        if res.status == "infeasible":
            return [LinearConstraint((Fraction(0),) * n, Fraction(-1), LE_)]
        if res.optimal and res.value.value <= c.bound:
            del kept[i]
        else:
            i += 1
    return eqs + kept


def project(P: HPolyhedron, coords: Iterable[int]) -> HPolyhedron:
    """Orthogonal projection onto ``coords`` (in the given order) by Fourier-Motzkin.

    Equalities are used for substitution first; each remaining coordinate is
    eliminated by pairing positive and negative occurrences, followed by
    LP-certified redundancy removal.
    """
    n = P.ambient_dim
    keep = list(coords)
    if any(not 0 <= c < n for c in keep) or len(set(keep)) != len(keep):
        raise ValueError(f"bad coordinate selection {keep} for dimension {n}")
    if len(keep) > MAX_DIM:
        raise DimensionCapError(f"projection target dimension {len(keep)} exceeds cap {MAX_DIM}")
    elim = [c for c in range(n) if c not in keep]
    cons = _dedupe(P.constraints)
    if cons is None:
        return HPolyhedron.empty(len(keep))

    # substitute away eliminated coordinates that occur in equalities
    remaining = list(elim)
    while True:
        pick = None
        for c in cons:
            if c.relation == EQ_:
                j = next((j for j in remaining if c.normal[j] != 0), None)
                if j is not None:
                    pick = (c, j)
                    break
        if pick is None:
            break
        e, j = pick
        remaining.remove(j)
        new = []
        for c in cons:
            if c is e:
                continue
            f = c.normal[j]
            if f == 0:
                new.append(c)
                continue
            r = f / e.normal[j]
            new.append(
                LinearConstraint(
                    tuple(a - r * b for a, b in zip(c.normal, e.normal)), c.bound - r * e.bound, c.relation
                )
            )
        cons = _dedupe(new)
        if cons is None:
            return HPolyhedron.empty(len(keep))

    eqs = [c for c in cons if c.relation == EQ_]
    # inequalities carry the set of input rows they were combined from
    rows = [(c.normal, c.bound, frozenset([i])) for i, c in enumerate(c for c in cons if c.relation != EQ_)]
    eliminated = 0
    while remaining:
        # cheapest coordinate first
        def cost(j):
            p = sum(1 for r in rows if r[0][j] > 0)
            m = sum(1 for r in rows if r[0][j] < 0)
            return p * m - p - m

        j = min(remaining, key=cost)
        remaining.remove(j)
        eliminated += 1
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        new = [r for r in rows if r[0][j] == 0]
        for pn, pb, ph in pos:
            for mn, mb, mh in neg:
                hist = ph | mh
                if len(hist) > eliminated + 1:
                    continue  # Kohler: provably redundant
                a, b = pn[j], -mn[j]
                new.append((tuple(b * x + a * y for x, y in zip(pn, mn)), b * pb + a * mb, hist))
        rows = _dedupe_rows(new)
        if rows is None:
            return HPolyhedron.empty(len(keep))
        if len(rows) > _FM_PRUNE_AT and remaining:
            alive = remove_redundant(eqs + [LinearConstraint(a, b, LE_) for a, b, _ in rows], n)
            if any(not any(c.normal) and c.bound < 0 for c in alive):
                return HPolyhedron.empty(len(keep))
            kept = {(c.normal, c.bound) for c in alive if c.relation == LE_}
            # the pruned system is a fresh input, so histories restart
            rows = [(a, b, frozenset([i])) for i, (a, b, _) in enumerate(r for r in rows if (r[0], r[1]) in kept)]
            eliminated = 0
    cons = eqs + [LinearConstraint(a, b, LE_) for a, b, _ in rows]

    out = []
    for c in cons:
        out.append(LinearConstraint(tuple(c.normal[k] for k in keep), c.bound, c.relation))
    res = _dedupe(out)
    if res is None:
        return HPolyhedron.empty(len(keep))
    return HPolyhedron(len(keep), tuple(remove_redundant(res, len(keep))))


def equals_projection(A: HPolyhedron, L: HPolyhedron) -> bool:
    """Whether ``A`` is the projection of ``L`` onto its leading coordinates.

    Decided without projecting: every constraint of ``A`` is bounded over
    ``L`` by one LP, and every generator of ``A`` lifts into ``L`` (points)
    or into its recession cone (rays and lines) by one feasibility LP.
    """
    n, N = A.ambient_dim, L.ambient_dim
    pad = (Fraction(0),) * (N - n)
    gens = generators(A)
    if not gens[0]:
        return is_empty(L)
    for c in A.constraints:
        for sign in (1, -1) if c.relation == EQ_ else (1,):
            res = _maximize_over(L.constraints, tuple(sign * a for a in c.normal) + pad)
            if res.status == "infeasible":
                return False
            if not res.optimal or res.value.value > sign * c.bound:
                return False
    cone = [LinearConstraint(c.normal, Fraction(0), c.relation) for c in L.constraints]
    points, rays, lines = gens
    targets = [(L.constraints, p) for p in points]
    targets += [(cone, r) for r in rays]
    targets += [(cone, t) for l in lines for t in (l, tuple(-a for a in l))]
    for cons, w in targets:
        fix = [LinearConstraint(tuple(Fraction(int(j == i)) for j in range(N)), w[i], EQ_) for i in range(n)]
        if cell_is_empty(Cell(N, tuple(cons) + tuple(fix))):
            return False
    return True


def generators(P: HPolyhedron):
    """``(points, rays, lines)`` of a closed polyhedron; three empty lists when empty."""
    return dd.h_to_v(P.ambient_dim, *_split_rows(P.constraints))


def _split_rows(cons):
    ineqs = [(c.normal, c.bound) for c in cons if c.relation != EQ_]
    eqs = [(c.normal, c.bound) for c in cons if c.relation == EQ_]
    return ineqs, eqs


def minkowski_sum(P: HPolyhedron, Q: HPolyhedron) -> HPolyhedron:
    """``{p + q : p in P, q in Q}`` by eliminating ``p`` from ``p in P, x - p in Q``."""
    n = P.ambient_dim
    if Q.ambient_dim != n:
        raise ValueError("dimension mismatch in Minkowski sum")
    if P.is_empty() or Q.is_empty():
        return HPolyhedron.empty(n)
    z = (Fraction(0),) * n
    cons = []
    for c in P.constraints:  # on p
        cons.append(LinearConstraint(z + c.normal, c.bound, c.relation))
    for c in Q.constraints:  # on x - p
        cons.append(LinearConstraint(c.normal + tuple(-a for a in c.normal), c.bound, c.relation))
    return project(HPolyhedron(2 * n, tuple(cons)), range(n))


def product(*parts: HPolyhedron) -> HPolyhedron:
    n = sum(p.ambient_dim for p in parts)
    cons = []
    off = 0
    for p in parts:
        for c in p.constraints:
            a = [Fraction(0)] * n
            a[off : off + p.ambient_dim] = c.normal
            cons.append(LinearConstraint(tuple(a), c.bound, c.relation))
        off += p.ambient_dim
    return HPolyhedron(n, tuple(cons))


def lift_cell(cell: Cell, offset: int, total: int) -> Cell:
    cons = []
    for c in cell.constraints:
        a = [Fraction(0)] * total
        a[offset : offset + cell.ambient_dim] = c.normal
        cons.append(LinearConstraint(tuple(a), c.bound, c.relation))
    return Cell(total, tuple(cons))


def product_region(*regions: ConvexRegion) -> ConvexRegion:
    total = sum(r.ambient_dim for r in regions)
    offsets = list(itertools.accumulate([0] + [r.ambient_dim for r in regions]))[:-1]
    cells = []
    for combo in itertools.product(*(r.cells for r in regions)):
        cons = ()
        for cell, off in zip(combo, offsets):
            cons += lift_cell(cell, off, total).constraints
        cells.append(Cell(total, cons))
    checked = all(r.convexity_checked for r in regions)
    return ConvexRegion(total, tuple(cells), checked)


# -- set comparison ----------------------------------------------------------------


def subtract(cell: Cell, others: Sequence[Cell]) -> list[Cell]:
    """Nonempty cells whose union is ``cell`` minus the union of ``others``."""
    pieces = [] if cell_is_empty(cell) else [cell]
    for o in others:
        nxt = []
        for p in pieces:
            prefix: list[LinearConstraint] = []
            for c in o.constraints:
                for neg in c.negations():
                    cand = p.with_constraints(prefix + [neg])
                    if not cell_is_empty(cand):
                        nxt.append(cand)
                prefix.append(c)
        pieces = nxt
        if not pieces:
            break
    return pieces


def inclusion_witness(A: SetLike, B: SetLike) -> Vector | None:
    """A point of ``A`` outside ``B``, or None when ``A`` is contained in ``B``."""
    if _dim_of(A) != _dim_of(B):
        raise ValueError("dimension mismatch")
    bcells = _cells_of(B)
    for a in _cells_of(A):
        if cell_is_empty(a):
            continue
        if len(bcells) == 1:
            for c in bcells[0].constraints:
                for neg in c.negations():
                    p = cell_point(a.with_constraints([neg]))
                    if p is not None:
                        return p
            continue
        rest = subtract(a, bcells)
        if rest:
            return cell_point(rest[0])
    return None


def includes(A: SetLike, B: SetLike) -> bool:
    """True iff ``A`` is a subset of ``B``."""
    if isinstance(A, HPolyhedron) and isinstance(B, HPolyhedron):
        return _closed_included(A, B)
    return inclusion_witness(A, B) is None


_GENERATOR_DIM = 4


def _closed_included(A: HPolyhedron, B: HPolyhedron) -> bool:
    if A.ambient_dim <= _GENERATOR_DIM:
        return _included_by_generators(A, B)
    return _included_by_lp(A, B)


def _included_by_generators(A: HPolyhedron, B: HPolyhedron) -> bool:
    """Every vertex of ``A`` in ``B``; every ray and line in the recession cone of ``B``."""
    points, rays, lines = generators(A)
    for c in B.constraints:
        for p in points:
            if not c.holds(p):
                return False
        for r in rays:
            k = dot(c.normal, r)
            if k > 0 or (k != 0 and c.relation == EQ_):
                return False
        for l in lines:
            if dot(c.normal, l) != 0:
                return False
    return True


def _included_by_lp(A: HPolyhedron, B: HPolyhedron) -> bool:
    if A.is_empty():
        return True
    for c in B.constraints:
        hi = _maximize_over(A.constraints, c.normal)
        if not hi.optimal or hi.value.value > c.bound:
            return False
        if c.relation == EQ_:
            lo = _maximize_over(A.constraints, tuple(-a for a in c.normal))
            if not lo.optimal or -lo.value.value < c.bound:
                return False
    return True


def set_equal(A: SetLike, B: SetLike) -> bool:
    if _dim_of(A) != _dim_of(B):
        raise ValueError("dimension mismatch")
    return includes(A, B) and includes(B, A)


def region_is_closed(R: SetLike) -> bool:
    if isinstance(R, HPolyhedron):
        return True
    return includes(closure(R), R)


# -- convexity probing -----------------------------------------------------------


_FRACTIONS = (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))


def _probe_points(cell: Cell, n: int) -> list[Vector]:
    pts = []
    p = cell_point(cell)
    if p is not None:
        pts.append(p)
    if n <= 6:
        P = cell.relaxed()
        ineqs = [(c.normal, c.bound) for c in P.constraints if c.relation == LE_]
        eqs = [(c.normal, c.bound) for c in P.constraints if c.relation == EQ_]
        verts, rays, lines = dd.h_to_v(n, ineqs, eqs)
        for v in verts:
            if cell.contains(v):
                pts.append(v)
            for r in rays:
                w = tuple(a + b for a, b in zip(v, r))
                if cell.contains(w):
                    pts.append(w)
    seen, out = set(), []
    for x in pts:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def validate_convexity(R: SetLike):
    """Probe the union of cells for convexity.

    Every pair of sample points taken from two different cells must keep its
    midpoint and quartiles inside the region. Sound for the returned witness,
    incomplete in general. Returns ``(ok, (u, v, m) | None)``.
    """
    cells = nonempty_cells(R)
    if len(cells) <= 1:
        return True, None
    n = _dim_of(R)
    samples = [_probe_points(c, n) for c in cells]
    pairs = []
    for i, j in itertools.combinations(range(len(cells)), 2):
        for u in samples[i]:
            for v in samples[j]:
                d = sum((a - b) ** 2 for a, b in zip(u, v))
                pairs.append((d, u, v) if u <= v else (d, v, u))
    pairs.sort()
    for _, u, v in pairs:
        for t in _FRACTIONS:
            m = tuple(a + t * (b - a) for a, b in zip(u, v))
            if not any(c.contains(m) for c in cells):
                return False, (u, v, m)
    return True, None


# -- canonical form ------------------------------------------------------------------


def implicit_equalities(P: HPolyhedron) -> HPolyhedron:
    """Turn every inequality that is tight on all of ``P`` into an equality."""
    out = []
    for c in P.constraints:
        if c.relation == LE_ and any(c.normal):
            lo = _maximize_over(P.constraints, tuple(-a for a in c.normal))
            if lo.optimal and -lo.value.value == c.bound:
                out.append(LinearConstraint(c.normal, c.bound, EQ_))
                continue
        out.append(c)
    return HPolyhedron(P.ambient_dim, tuple(out))


def canonical(P: HPolyhedron) -> HPolyhedron:
    """A normal form: RREF equalities, reduced irredundant inequalities, sorted.

    Two equal polyhedra have identical canonical forms.
    """
    n = P.ambient_dim
    if P.is_empty():
        return HPolyhedron.empty(n)
    P = implicit_equalities(P)
    eq_rows = [c.normal + (c.bound,) for c in P.constraints if c.relation == EQ_]
    red, pivots = rref(eq_rows, n + 1) if eq_rows else ([], [])
    eqs = [LinearConstraint(r[:n], r[n], EQ_) for r in red]
    ineqs = []
    for c in P.constraints:
        if c.relation != LE_:
            continue
        a, b = list(c.normal), c.bound
        for r, p in zip(red, pivots):
            f = a[p]
            if f:
                a = [x - f * y for x, y in zip(a, r[:n])]
                b -= f * r[n]
        ineqs.append(LinearConstraint(tuple(a), b, LE_))
    cons = _dedupe(eqs + ineqs)
    cons = remove_redundant(cons, n)
    eqs = sorted((c for c in cons if c.relation == EQ_), key=lambda c: [-abs(x) for x in c.normal])
    ineqs = sorted(
        (c.normalized() for c in cons if c.relation == LE_),
        key=lambda c: (tuple((a == 0, -abs(a), -a) for a in c.normal), c.bound),
    )
    return HPolyhedron(n, tuple(eqs + ineqs))


def as_box(P: HPolyhedron):
    if P.is_empty():
        return None
    C = canonical(P)
    lo: list = [None] * P.ambient_dim
    hi: list = [None] * P.ambient_dim
    for c in C.constraints:
        nz = [i for i, a in enumerate(c.normal) if a != 0]
        if len(nz) != 1:
            return None
        i = nz[0]
        val = c.bound / c.normal[i]
        if c.relation == EQ_:
            lo[i] = hi[i] = val
        elif c.normal[i] > 0:
            hi[i] = val
        else:
            lo[i] = val
    return list(zip(lo, hi))


def _interval_str(lo, hi) -> str:
    if lo is None and hi is None:
        return "R"
    if lo is not None and hi is not None and lo == hi:
        return "{" + fmt(lo) + "}"
    if lo is None:
        return "(-inf, " + fmt(hi) + "]" if hi != 0 else "R_-"
    if hi is None:
        return "[" + fmt(lo) + ", +inf)" if lo != 0 else "R_+"
    return f"[{fmt(lo)}, {fmt(hi)}]"


def describe(P: HPolyhedron) -> str:
    """Human-readable description: an interval product when axis-aligned."""
    if P.is_empty():
        return "empty"
    box = as_box(P)
    if box is not None:
        return " x ".join(_interval_str(lo, hi) for lo, hi in box)
    return "{x : " + ", ".join(str(c) for c in canonical(P).constraints) + "}"


def support_value(R: SetLike, u: Vector) -> ExtRational:
    """``sup_{x in R} <u, x>``; the sup over a set equals that over its closure."""
    u = vec(u)
    if len(u) != _dim_of(R):
        raise ValueError("dimension mismatch")
    best = MINUS_INF
    for c in nonempty_cells(R):
        res = _maximize_over(c.relaxed().constraints, u)
        if res.status == "unbounded":
            return PLUS_INF
        if res.optimal and res.value > best:
            best = res.value
    return best
