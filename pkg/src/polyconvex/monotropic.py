"""Extended monotropic programs: exact primal/dual values and hypothesis checks.

Primal: minimise ``sum_i f_i(x_i)`` over a subspace ``S`` of the product
space. Dual: maximise ``-sum_i f_i*(y_i)`` over ``S``'s orthogonal
complement. Weak duality ``v(P) >= v(D)`` always holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .functions import (
    PolyhedralFunction,
    conjugate,
    eps_subdifferential,
    evaluate,
    separable_sum,
)
from .linalg import Subspace, orthogonal_complement
from .lp import EQ, LE, LPProblem, solve_lp
from .rational import MINUS_INF, PLUS_INF, ExtRational, Vector, vec
from .sets import (
    EQ_,
    LE_,
    Cell,
    HPolyhedron,
    LinearConstraint,
    cell_is_empty,
    cell_point,
    closure,
    lift_cell,
    minkowski_sum,
    product,
    region_is_closed,
    subtract,
)


class InfeasibleInstanceError(ValueError):
    pass


@dataclass(frozen=True)
class MonotropicInstance:
    blocks: tuple  # of PolyhedralFunction
    S: Subspace

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("an instance needs at least one block")
        object.__setattr__(self, "blocks", blocks)
        if self.S.ambient_dim != self.total_dim:
            raise ValueError(
                f"subspace lives in dimension {self.S.ambient_dim}, blocks span {self.total_dim}"
            )
        for i, f in enumerate(blocks):
            if not f.is_proper:
                raise ValueError(f"block {i} is not proper (empty domain)")

    @property
    def dims(self) -> tuple:
        return tuple(f.dim for f in self.blocks)

    @property
    def total_dim(self) -> int:
        return sum(f.dim for f in self.blocks)

    @property
    def offsets(self) -> list[int]:
        return list(itertools.accumulate((0,) + self.dims))[:-1]

    def split(self, x: Vector) -> list[Vector]:
        return [tuple(x[o : o + d]) for o, d in zip(self.offsets, self.dims)]

    def g(self) -> PolyhedralFunction:
        return separable_sum(self.blocks)

    def subspace_polyhedron(self) -> HPolyhedron:
        """``S`` as equalities ``<w, x> = 0`` for ``w`` spanning its complement."""
        perp = orthogonal_complement(self.S)
        return HPolyhedron(self.total_dim, tuple(LinearConstraint(w, 0, EQ_) for w in perp.basis))

    def perp_polyhedron(self) -> HPolyhedron:
        return HPolyhedron(self.total_dim, tuple(LinearConstraint(b, 0, EQ_) for b in self.S.basis))

    def is_feasible(self) -> bool:
        return bool(feasible_cells(self))


@dataclass(frozen=True)
class TSetQuery:
    point: Vector
    epsilon: Fraction

    def __post_init__(self):
        object.__setattr__(self, "point", vec(self.point))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class SolveResult:
    value: ExtRational
    attained: bool
    witness: Vector | None


@dataclass
class DualityReport:
    primal_value: ExtRational
    primal_attained: bool
    dual_value: ExtRational
    dual_attained: bool
    gap: ExtRational
    weak_duality_ok: bool
    bertsekas_closedness_ok: bool | None = None
    thm34_regularity_ok: bool | None = None
    regularity_witness: Vector | None = None
    primal_witness: Vector | None = None
    dual_witness: Vector | None = None
    failing_query: TSetQuery | None = None
    zero_gap_predicted: bool = False
    notes: list = field(default_factory=list)


def feasible_cells(I: MonotropicInstance) -> list[Cell]:
    """Nonempty cells of ``prod dom f_i`` intersected with ``S``."""
    Sp = I.subspace_polyhedron()
    cells = []
    for cell in I.g().domain.cells:
        c = cell.meet(Sp)
        if not cell_is_empty(c):
            cells.append(c)
    return cells


def _epigraph_rows(f: PolyhedralFunction, nvars: int):
    """Rows ``piece(x) <= t`` with ``t`` the last of ``nvars`` variables."""
    rows = []
    z = Fraction(0)
    pad = (z,) * (nvars - f.dim - 1)
    for p in f.pieces:
        rows.append((p.slope + pad + (Fraction(-1),), LE, -p.offset))
    return rows


def _cons_rows(cons, pad: int):
    tail = (Fraction(0),) * pad
    return [(c.normal + tail, EQ if c.relation == EQ_ else LE, c.bound) for c in cons]


def solve_primal(I: MonotropicInstance) -> SolveResult:
    """Exact ``inf sum f_i(x_i)`` over ``prod dom f_i`` and ``S``.

    Each feasible cell is handled by an LP over its closure; the infimum
    over a nonempty partially-open cell equals that over its closure since
    the objective is continuous there.
    """
    g = I.g()
    n = g.dim
    cells = feasible_cells(I)
    if not cells:
        return SolveResult(PLUS_INF, False, None)
    obj = (Fraction(0),) * n + (Fraction(1),)
    best, witness = PLUS_INF, None
    for cell in cells:
        rows = _epigraph_rows(g, n + 1) + _cons_rows(cell.relaxed().constraints, 1)
        res = solve_lp(LPProblem(obj, "min", tuple(rows)))
        if res.status == "unbounded":
            return SolveResult(MINUS_INF, False, None)
        if res.optimal and res.value < best:
            best, witness = res.value, res.witness[:n]
    for cell in cells:
        lifted = lift_cell(cell, 0, n + 1).constraints
        extra = [LinearConstraint(a, b, LE_) for a, _, b in _epigraph_rows(g, n + 1)]
        extra.append(LinearConstraint(obj, best.value, LE_))
        pt = cell_point(Cell(n + 1, lifted + tuple(extra)))
        if pt is not None:
            return SolveResult(best, True, pt[:n])
    return SolveResult(best, False, witness)


def solve_dual(I: MonotropicInstance) -> SolveResult:
    """Exact ``sup -sum f_i*(y_i)`` over the orthogonal complement of ``S``."""
    conj = [conjugate(f) for f in I.blocks]
    n = I.total_dim
    m = len(conj)
    N = n + m
    rows = []
    for i, (fs, off) in enumerate(zip(conj, I.offsets)):
        for p in fs.pieces:
            a = [Fraction(0)] * N
            a[off : off + fs.dim] = p.slope
            a[n + i] = Fraction(-1)
            rows.append((tuple(a), LE, -p.offset))
        for c in fs.domain.cells[0].constraints:
            a = [Fraction(0)] * N
            a[off : off + fs.dim] = c.normal
            rows.append((tuple(a), EQ if c.relation == EQ_ else LE, c.bound))
    for b in I.S.basis:
        rows.append((tuple(b) + (Fraction(0),) * m, EQ, Fraction(0)))
    obj = (Fraction(0),) * n + (Fraction(-1),) * m
    res = solve_lp(LPProblem(obj, "max", tuple(rows)))
    if res.status == "infeasible":
        return SolveResult(MINUS_INF, False, None)
    if res.status == "unbounded":
        return SolveResult(PLUS_INF, False, None)
    return SolveResult(res.value, True, res.witness[:n])


def build_T(I: MonotropicInstance, query: TSetQuery) -> HPolyhedron:
    """``S-perp + prod_i d_eps f_i(x_i)``; empty when some block subdifferential is."""
    x = query.point
    if len(x) != I.total_dim:
        raise ValueError("query point has the wrong dimension")
    parts = [eps_subdifferential(f, xi, query.epsilon).set for f, xi in zip(I.blocks, I.split(x))]
    if any(p.is_empty() for p in parts):
        return HPolyhedron.empty(I.total_dim)
    return minkowski_sum(I.perp_polyhedron(), product(*parts))


def query_is_feasible(I: MonotropicInstance, query: TSetQuery) -> bool:
    x = query.point
    return I.S.contains(x) and evaluate(I.g(), x).is_finite


def check_bertsekas_closedness(I: MonotropicInstance, sample: Sequence[TSetQuery]):
    """Closedness of ``T(x, eps)`` on every sampled query.

    Returns ``(ok, failing_query)``. The verdict covers the sample only.
    """
    for qy in sample:
        if not query_is_feasible(I, qy):
            raise ValueError(f"query point {qy.point} is not feasible")
        T = build_T(I, qy)
        if not region_is_closed(T):
            return False, qy
    return True, None


def check_lsc_hulls_proper(I: MonotropicInstance) -> bool:
    return all(not closure(f.domain).is_empty() for f in I.blocks)


def regularity_witness(I: MonotropicInstance) -> Vector | None:
    """A point of ``dom(cl g) & S`` where ``g`` differs from ``cl g``, if any.

    ``g`` and ``cl g`` share their pieces, so they differ exactly on
    ``prod cl(dom f_i) & S`` minus ``prod dom f_i``; that difference is
    built cell by cell and tested for emptiness.
    """
    Sp = I.subspace_polyhedron()
    closed = product(*(closure(f.domain) for f in I.blocks)).meet(Sp)
    rest = subtract(closed.as_cell(), list(I.g().domain.cells))
    for piece in rest:
        p = cell_point(piece)
        if p is not None:
            return p
    return None


def check_thm34_regularity(I: MonotropicInstance):
    """Hypotheses of the corrected zero-gap theorem, minus the closedness of T.

    Each ``cl f_i`` must be proper and ``g = cl g`` on ``dom(cl g) & S``.
    Returns ``(ok, witness)``.
    """
    if not check_lsc_hulls_proper(I):
        return False, None
    w = regularity_witness(I)
    return w is None, w


def blockwise_regularity(I: MonotropicInstance) -> bool:
    """Sufficient block-wise test: ``f_i = cl f_i`` on ``dom(cl f_i) & pr_i S``."""
    for f, off in zip(I.blocks, I.offsets):
        proj = Subspace.span(f.dim, [b[off : off + f.dim] for b in I.S.basis])
        perp = orthogonal_complement(proj)
        slab = HPolyhedron(f.dim, tuple(LinearConstraint(w, 0, EQ_) for w in perp.basis))
        region = closure(f.domain).meet(slab)
        if subtract(region.as_cell(), list(f.domain.cells)):
            return False
    return True


def default_sample(I: MonotropicInstance, eps_values=(Fraction(1, 2), Fraction(1), Fraction(2))):
    """The primal witness (when attained) at a few eps values."""
    res = solve_primal(I)
    if res.witness is None or not evaluate(I.g(), res.witness).is_finite:
        cells = feasible_cells(I)
        if not cells:
            return []
        pt = cell_point(cells[0])
    else:
        pt = res.witness
    return [TSetQuery(pt, e) for e in eps_values]


def duality_report(I: MonotropicInstance, sample: Sequence[TSetQuery] | None = None) -> DualityReport:
    P = solve_primal(I)
    D = solve_dual(I)
    if P.value.is_finite and D.value.is_finite:
        gap = P.value - D.value
    elif P.value != D.value:
        gap = PLUS_INF if P.value > D.value else MINUS_INF
    else:
        # both -inf (or both +inf): the optimal values coincide
        gap = ExtRational.of(0)
    weak = P.value >= D.value
    rep = DualityReport(
        primal_value=P.value,
        primal_attained=P.attained,
        dual_value=D.value,
        dual_attained=D.attained,
        gap=gap,
        weak_duality_ok=weak,
        primal_witness=P.witness,
        dual_witness=D.witness,
    )
    if sample is None:
        sample = default_sample(I)
    if sample:
        ok, failing = check_bertsekas_closedness(I, sample)
        rep.bertsekas_closedness_ok = ok
        rep.failing_query = failing
        rep.notes.append(f"closedness checked on {len(sample)} sampled queries")
    reg_ok, wit = check_thm34_regularity(I)
    rep.thm34_regularity_ok = reg_ok
    rep.regularity_witness = wit
    rep.zero_gap_predicted = bool(reg_ok and rep.bertsekas_closedness_ok)
    if not weak:  # pragma: no cover - would indicate a solver bug
        raise AssertionError(f"weak duality violated: v(P)={P.value} < v(D)={D.value}")
    if rep.zero_gap_predicted and gap != 0:  # pragma: no cover
        raise AssertionError(f"zero gap predicted but v(P)={P.value}, v(D)={D.value}")
    return rep
