"""Polyhedral convex functions with partially-open domains and their calculus.

A :class:`PolyhedralFunction` is ``x -> max_j (<a_j, x> + b_j)`` on a
convex region and ``+inf`` elsewhere. Indicators are a single zero piece.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import dd
from .lp import EQ, LE, LPProblem, solve_lp
from .rational import MINUS_INF, PLUS_INF, ExtRational, Vector, dot, vec, vsub
from .sets import (
    EQ_,
    LE_,
    LT_,
    Cell,
    ConvexRegion,
    HPolyhedron,
    LinearConstraint,
    SetLike,
    cell_is_empty,
    cell_point,
    closure,
    lift_cell,
    nonempty_cells,
    product_region,
    set_equal,
    support_value,
)

CONJUGATE_MAX_DIM = 6


class ImproperFunctionError(ValueError):
    pass


@dataclass(frozen=True)
class AffinePiece:
    slope: Vector
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", vec(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def __call__(self, x: Vector) -> Fraction:
        return dot(self.slope, x) + self.offset


@dataclass(frozen=True)
class PolyhedralFunction:
    dim: int
    pieces: tuple
    domain: ConvexRegion

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if not pieces:
            raise ValueError("a polyhedral function needs at least one affine piece")
        for p in pieces:
            if len(p.slope) != self.dim:
                raise ValueError(f"piece slope of dim {len(p.slope)} in a function of dim {self.dim}")
        if self.domain.ambient_dim != self.dim:
            raise ValueError("domain dimension does not match function")
        object.__setattr__(self, "pieces", tuple(dict.fromkeys(pieces)))
        object.__setattr__(self, "domain", self.domain.checked())

    @classmethod
    def indicator(cls, region: SetLike) -> "PolyhedralFunction":
        if isinstance(region, HPolyhedron):
            region = region.as_region()
        elif isinstance(region, Cell):
            region = ConvexRegion(region.ambient_dim, (region,))
        n = region.ambient_dim
        return cls(n, (AffinePiece((Fraction(0),) * n, Fraction(0)),), region)

    @classmethod
    def on(cls, region: SetLike, pieces: Sequence) -> "PolyhedralFunction":
        """Max of ``pieces`` (pairs ``(slope, offset)``) restricted to ``region``."""
        if isinstance(region, HPolyhedron):
            region = region.as_region()
        elif isinstance(region, Cell):
            region = ConvexRegion(region.ambient_dim, (region,))
        ps = tuple(p if isinstance(p, AffinePiece) else AffinePiece(*p) for p in pieces)
        return cls(region.ambient_dim, ps, region)

    @property
    def is_proper(self) -> bool:
        return bool(nonempty_cells(self.domain))

    def __call__(self, x) -> ExtRational:
        return evaluate(self, x)

    def raw(self, x: Vector) -> Fraction:
        """Max of the pieces, ignoring the domain."""
        return max(p(x) for p in self.pieces)


@dataclass(frozen=True)
class SubdiffResult:
    set: HPolyhedron
    epsilon: Fraction
    base_point: Vector
    base_value: ExtRational


def _require_proper(f: PolyhedralFunction):
    if not f.is_proper:
        raise ImproperFunctionError("function has empty domain (identically +inf)")


def evaluate(f: PolyhedralFunction, x) -> ExtRational:
    x = vec(x)
    if len(x) != f.dim:
        raise ValueError(f"point of dim {len(x)} for a function of dim {f.dim}")
    if not f.domain.contains(x):
        return PLUS_INF
    return ExtRational.of(f.raw(x))


def lsc_hull(f: PolyhedralFunction) -> PolyhedralFunction:
    """Same pieces on the closure of the domain (pieces are continuous)."""
    _require_proper(f)
    return PolyhedralFunction(f.dim, f.pieces, closure(f.domain).as_region())


def is_closed_function(f: PolyhedralFunction) -> bool:
    return all(c.is_closed_form for c in f.domain.cells) and len(f.domain.cells) == 1


@functools.lru_cache(maxsize=4096)
def conjugate(f: PolyhedralFunction) -> PolyhedralFunction:
    """Closed polyhedral representation of ``y -> sup_x <y, x> - f(x)``.

    The epigraph of ``cl f`` is enumerated into points ``(x_k, t_k)``, rays
    and lines; then ``f*(y) = max_k <y, x_k> - t_k`` on the cone
    ``{y : <y, d> <= s for every ray (d, s)}`` (equality for lines).
    """
    _require_proper(f)
    n = f.dim
    if n > CONJUGATE_MAX_DIM:
        raise ValueError(f"conjugation is capped at dimension {CONJUGATE_MAX_DIM}")
    D = closure(f.domain)
    ineqs, eqs = [], []
    for c in D.constraints:
        row = (c.normal + (Fraction(0),), c.bound)
        (eqs if c.relation == EQ_ else ineqs).append(row)
    for p in f.pieces:
        ineqs.append((p.slope + (Fraction(-1),), -p.offset))
    points, rays, lines = dd.h_to_v(n + 1, ineqs, eqs)
    pieces = [AffinePiece(pt[:n], -pt[n]) for pt in points]
    cons = []
    for r in rays:
        if any(r[:n]):
            cons.append(LinearConstraint(r[:n], r[n], LE_))
        elif r[n] < 0:  # pragma: no cover - epigraph rays never point down
            raise ImproperFunctionError("epigraph has a downward ray")
    for l in lines:
        if any(l[:n]):
            cons.append(LinearConstraint(l[:n], l[n], EQ_))
    dom = HPolyhedron(n, tuple(cons)).canonical()
    region = ConvexRegion(n, (dom.as_cell(),), True)
    return PolyhedralFunction(n, tuple(sorted(pieces, key=lambda p: (p.slope, p.offset))), region)


def eps_subdifferential(f: PolyhedralFunction, x, eps) -> SubdiffResult:
    """``{y : f*(y) <= <y, x> - f(x) + eps}`` as an explicit closed polyhedron.

    Empty when ``f(x)`` is infinite.
    """
    x = vec(x)
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    fx = evaluate(f, x)
    if not fx.is_finite:
        return SubdiffResult(HPolyhedron.empty(f.dim), eps, x, fx)
    fs = conjugate(f)
    cons = list(fs.domain.cells[0].constraints)
    for p in fs.pieces:
        cons.append(LinearConstraint(vsub(p.slope, x), -p.offset - fx.value + eps, LE_))
    return SubdiffResult(HPolyhedron(f.dim, tuple(cons)), eps, x, fx)


def _alpha_interval(cell: Cell, x: Vector, y: Vector):
    """``{a > 0 : x + a y in cell}`` as ``(lo, lo_open, hi, hi_open)`` or None.

    ``hi is None`` means unbounded above.
    """
    lo, lo_open, hi, hi_open = Fraction(0), True, None, False
    for c in cell.constraints:
        k = dot(c.normal, y)
        r = c.bound - dot(c.normal, x)
        strict = c.relation == LT_
        if c.relation == EQ_:
            if k == 0:
                if r != 0:
                    return None
                continue
            a = r / k
            if a < lo or (a == lo and lo_open) or (hi is not None and (a > hi or (a == hi and hi_open))):
                return None
            lo, lo_open, hi, hi_open = a, False, a, False
            continue
        if k == 0:
            if r < 0 or (strict and r == 0):
                return None
            continue
        a = r / k
        if k > 0:  # a' <= a  (strict: <)
            if hi is None or a < hi or (a == hi and strict):
                hi, hi_open = a, strict
        else:  # a' >= a
            if a > lo or (a == lo and strict):
                lo, lo_open = a, strict
    if hi is not None and (hi < lo or (hi == lo and (lo_open or hi_open))):
        return None
    return lo, lo_open, hi, hi_open


def eps_directional_derivative(f: PolyhedralFunction, x, y, eps) -> ExtRational:
    """``inf_{a > 0} (f(x + a y) - f(x) + eps) / a``, exactly.

    On each cell the admissible ``a`` form an interval. With ``b = 1/a`` the
    quotient is ``max_j (d_j + e_j b)``, convex piecewise affine in ``b``, so
    the infimum sits at a breakpoint or at an interval end (as a limit when
    the end is open). No admissible ``a`` gives ``+inf``.
    """
    x, y = vec(x), vec(y)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    fx = evaluate(f, x)
    if not fx.is_finite:
        raise ValueError("f(x) must be finite")
    d = [dot(p.slope, y) for p in f.pieces]
    e = [p(x) - fx.value + eps for p in f.pieces]

    def g(b):
        return max(dj + ej * b for dj, ej in zip(d, e))

    best = PLUS_INF
    for cell in f.domain.cells:
        iv = _alpha_interval(cell, x, y)
        if iv is None:
            continue
        lo, _, hi, _ = iv
        # b-range: [1/hi, 1/lo] with 1/inf = 0 and 1/0 = +inf
        b_lo = Fraction(0) if hi is None else 1 / hi
        b_hi = None if lo == 0 else 1 / lo
        cands = [b_lo]
        if b_hi is not None:
            cands.append(b_hi)
        for (d1, e1), (d2, e2) in itertools.combinations(zip(d, e), 2):
            if e1 != e2:
                b = (d2 - d1) / (e1 - e2)
                if b > b_lo and (b_hi is None or b < b_hi):
                    cands.append(b)
        val = ExtRational.of(min(g(b) for b in cands))
        best = min(best, val)
    return best


def support_function(P: SetLike, u) -> ExtRational:
    """``sup_{x in P} <u, x>``; ``-inf`` for the empty set."""
    return support_value(P, vec(u))


def _joint_cells(f: PolyhedralFunction, g: PolyhedralFunction, x: Vector):
    """Cells in ``y`` with ``x - y in dom f`` and ``y in dom g``."""
    n = f.dim
    out = []
    for cf in f.domain.cells:
        for cg in g.domain.cells:
            cons = []
            for c in cf.constraints:  # a.(x - y) rel b  ->  -a.y rel b - a.x
                cons.append(LinearConstraint(tuple(-a for a in c.normal), c.bound - dot(c.normal, x), c.relation))
            cons.extend(cg.constraints)
            out.append(Cell(n, tuple(cons)))
    return out


def inf_convolution_value(f: PolyhedralFunction, g: PolyhedralFunction, x):
    """``inf_y f(x - y) + g(y)`` as ``(value, attained, witness_y)``.

    Each nonempty joint cell contributes the LP value over its closure; the
    infimum is attained iff some cell meets the optimal level set.
    """
    x = vec(x)
    if f.dim != g.dim or len(x) != f.dim:
        raise ValueError("dimension mismatch")
    _require_proper(f)
    _require_proper(g)
    n = f.dim
    z = Fraction(0)
    cells = [c for c in _joint_cells(f, g, x) if not cell_is_empty(c)]
    if not cells:
        return PLUS_INF, False, None

    def epi_rows():
        rows = []
        for p in f.pieces:  # a.(x - y) + b <= t1
            rows.append((tuple(-a for a in p.slope) + (Fraction(-1), z), LE, -p.offset - dot(p.slope, x)))
        for p in g.pieces:
            rows.append((p.slope + (z, Fraction(-1)), LE, -p.offset))
        return rows

    best = PLUS_INF
    witness = None
    obj = (z,) * n + (Fraction(1), Fraction(1))
    for cell in cells:
        rows = epi_rows()
        for c in cell.relaxed().constraints:
            rows.append((c.normal + (z, z), EQ if c.relation == EQ_ else LE, c.bound))
        res = solve_lp(LPProblem(obj, "min", tuple(rows)))
        if res.status == "unbounded":
            return MINUS_INF, False, None
        if res.optimal and res.value < best:
            best, witness = res.value, res.witness[:n]
    attained = False
    for cell in cells:
        lifted = lift_cell(cell, 0, n + 2).constraints
        extra = [LinearConstraint(a, b, LE_) for a, _, b in epi_rows()]
        extra.append(LinearConstraint(obj, best.value, LE_))
        pt = cell_point(Cell(n + 2, lifted + tuple(extra)))
        if pt is not None:
            attained, witness = True, pt[:n]
            break
    return best, attained, witness


def separable_sum(fs: Sequence[PolyhedralFunction]) -> PolyhedralFunction:
    """``g(x_1, ..., x_m) = sum_i f_i(x_i)`` on the product space."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one block")
    if len(fs) == 1:
        return fs[0]
    total = sum(f.dim for f in fs)
    pieces = []
    for combo in itertools.product(*(f.pieces for f in fs)):
        slope: tuple = ()
        off = Fraction(0)
        for p in combo:
            slope += p.slope
            off += p.offset
        pieces.append(AffinePiece(slope, off))
    return PolyhedralFunction(total, tuple(pieces), product_region(*(f.domain for f in fs)))


def add(f: PolyhedralFunction, g: PolyhedralFunction) -> PolyhedralFunction:
    """Pointwise sum on the common space; domain is the intersection."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    pieces = tuple(
        AffinePiece(tuple(a + b for a, b in zip(p.slope, r.slope)), p.offset + r.offset)
        for p in f.pieces
        for r in g.pieces
    )
    cells = [a.meet(b) for a in f.domain.cells for b in g.domain.cells]
    live = [c for c in cells if not cell_is_empty(c)]
    if not live:
        live = [HPolyhedron.empty(f.dim).as_cell()]
    return PolyhedralFunction(f.dim, pieces, ConvexRegion(f.dim, tuple(live), True))


def _max_gap(cells, lower: PolyhedralFunction, upper: PolyhedralFunction) -> bool:
    """True iff ``lower <= upper`` on the union of ``cells`` (closures)."""
    for cell in cells:
        base = cell.relaxed().constraints
        for k, q_k in enumerate(upper.pieces):
            # region where upper equals q_k
            region = list(base)
            for j, q_j in enumerate(upper.pieces):
                if j != k:
                    region.append(
                        LinearConstraint(vsub(q_j.slope, q_k.slope), q_k.offset - q_j.offset, LE_)
                    )
            rows = [(c.normal, EQ if c.relation == EQ_ else LE, c.bound) for c in region]
            for p in lower.pieces:
                res = solve_lp(LPProblem(vsub(p.slope, q_k.slope), "max", tuple(rows)))
                if res.status == "unbounded":
                    return False
                if res.optimal and res.value.value + p.offset - q_k.offset > 0:
                    return False
    return True


def functions_equal(f: PolyhedralFunction, g: PolyhedralFunction) -> bool:
    """Extensional equality: equal domains and equal values on them.

    Values are compared exactly: on each region where one function's max is
    attained by a fixed piece, every piece of the other is bounded by an LP.
    """
    if f.dim != g.dim:
        return False
    if not set_equal(f.domain, g.domain):
        return False
    cells = nonempty_cells(f.domain)
    return _max_gap(cells, f, g) and _max_gap(cells, g, f)
