"""Formula checkers, brute-force grid oracles and seeded random instances."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import dd
from .functions import (
    AffinePiece,
    PolyhedralFunction,
    add,
    conjugate,
    eps_subdifferential,
    evaluate,
    functions_equal,
    inf_convolution_value,
    lsc_hull,
)
from .linalg import Subspace, rref
from .lp import LPProblem, solve_lp
from .monotropic import MonotropicInstance
from .rational import MINUS_INF, PLUS_INF, ExtRational, Vector, dot, vadd, vec, vsub
from .sets import (
    EQ_,
    LE_,
    LT_,
    Cell,
    ConvexRegion,
    HPolyhedron,
    LinearConstraint,
    canonical,
    equals_projection,
    includes,
    inclusion_witness,
    minkowski_sum,
    nonempty_cells,
    project,
    set_equal,
)

DEFAULT_ETAS = tuple(Fraction(1, 2**k) for k in range(21))


@dataclass(frozen=True)
class GridOracleConfig:
    box_bound: Fraction = Fraction(10)
    spacing: Fraction = Fraction(1, 4)
    dims: int = 1

    def __post_init__(self):
        object.__setattr__(self, "box_bound", Fraction(self.box_bound))
        object.__setattr__(self, "spacing", Fraction(self.spacing))
        if self.box_bound <= 0 or self.spacing <= 0:
            raise ValueError("box_bound and spacing must be positive")
        if self.dims < 1:
            raise ValueError("dims must be positive")

    def axis(self) -> list[Fraction]:
        k = int(self.box_bound // self.spacing)
        return [i * self.spacing for i in range(-k, k + 1)]

    def points(self) -> Iterator[Vector]:
        return itertools.product(self.axis(), repeat=self.dims)

    def on_grid(self, x: Vector) -> bool:
        return all(abs(v) <= self.box_bound and (v / self.spacing).denominator == 1 for v in x)


@dataclass
class FormulaVerdict:
    lhs: HPolyhedron
    rhs: HPolyhedron
    condition_holds: bool
    equal: bool
    counterexample_point: Vector | None = None
    included: bool = True
    status: str = ""
    nested_ok: bool = True
    sampled_agrees: bool = True
    details: dict = field(default_factory=dict)


# -- condition cl(f+g) = cl f + cl g ------------------------------------------------------


def check_cl_sum_condition(f: PolyhedralFunction, g: PolyhedralFunction) -> bool:
    s = add(f, g)
    closed_sum = add(lsc_hull(f), lsc_hull(g))
    if not s.is_proper:
        return not closed_sum.is_proper
    return functions_equal(lsc_hull(s), closed_sum)


# -- generalized Hiriart-Urruty--Phelps formula ---------------------------------------


def _level_rows(fs: PolyhedralFunction, fx: Fraction, x: Vector, offset: int, N: int, eps_col: int, sign: int):
    """Rows ``fs(u) + fx - <u, x> <= sign * e`` plus the domain of ``fs``.

    ``u`` occupies ``[offset, offset + n)``; ``e`` is column ``eps_col``.
    """
    n = fs.dim
    out = []
    for p in fs.pieces:
        a = [Fraction(0)] * N
        a[offset : offset + n] = vsub(p.slope, x)
        a[eps_col] = Fraction(-sign)
        out.append(LinearConstraint(tuple(a), -p.offset - fx, LE_))
    for c in fs.domain.cells[0].constraints:
        a = [Fraction(0)] * N
        a[offset : offset + n] = c.normal
        out.append(LinearConstraint(tuple(a), c.bound, c.relation))
    return out


def _hup_rows(f: PolyhedralFunction, g: PolyhedralFunction, x: Vector, eps: Fraction, eta: Fraction) -> HPolyhedron:
    """Lifted polyhedron in ``w | u | v | e1`` whose ``w``-shadow is the ``eta``-set.

    ``w = u + v`` with ``u`` in ``d_e1 f(x)`` and ``v`` in ``d_(eps + eta - e1) g(x)``.
    """
    n = f.dim
    fx = evaluate(f, x).value
    gx = evaluate(g, x).value
    fs, gs = conjugate(f), conjugate(g)
    W, U, V, E1 = 0, n, 2 * n, 3 * n
    N = 3 * n + 1
    cons = []
    for i in range(n):
        a = [Fraction(0)] * N
        a[W + i], a[U + i], a[V + i] = Fraction(1), Fraction(-1), Fraction(-1)
        cons.append(LinearConstraint(tuple(a), 0, EQ_))
    cons += _level_rows(fs, fx, x, U, N, E1, 1)
    # g part: gs(v) + gx - <v, x> <= eps + eta - e1
    for p in gs.pieces:
        a = [Fraction(0)] * N
        a[V : V + n] = vsub(p.slope, x)
        a[E1] = Fraction(1)
        cons.append(LinearConstraint(tuple(a), eps + eta - p.offset - gx, LE_))
    for c in gs.domain.cells[0].constraints:
        a = [Fraction(0)] * N
        a[V : V + n] = c.normal
        cons.append(LinearConstraint(tuple(a), c.bound, c.relation))
    a = [Fraction(0)] * N
    a[E1] = Fraction(-1)
    cons.append(LinearConstraint(tuple(a), 0, LE_))
    a = [Fraction(0)] * N
    a[E1] = Fraction(1)
    cons.append(LinearConstraint(tuple(a), eps + eta, LE_))
    return HPolyhedron(N, tuple(cons))


def hup_lift_fm(f: PolyhedralFunction, g: PolyhedralFunction, x, eps, eta) -> HPolyhedron:
    """The ``eta``-set by Fourier-Motzkin elimination of the lift (small dims)."""
    return project(_hup_rows(f, g, vec(x), Fraction(eps), Fraction(eta)), range(f.dim))


def _epigraph_vrep(F: PolyhedralFunction):
    n = F.dim
    ineqs = [(p.slope + (Fraction(-1),), -p.offset) for p in F.pieces]
    eqs = []
    for c in F.domain.cells[0].constraints:
        row = (c.normal + (Fraction(0),), c.bound)
        (eqs if c.relation == EQ_ else ineqs).append(row)
    return dd.h_to_v(n + 1, ineqs, eqs)


def epigraph_sum(F: PolyhedralFunction, G: PolyhedralFunction) -> HPolyhedron:
    """``epi F + epi G``, which is the epigraph of ``F box G`` for closed polyhedral ``F, G``."""
    n = F.dim
    pf, rf, lf = _epigraph_vrep(F)
    pg, rg, lg = _epigraph_vrep(G)
    if not pf or not pg:
        return HPolyhedron.empty(n + 1)
    points = sorted({vadd(a, b) for a in pf for b in pg})
    ineqs, eqs = dd.v_to_h(n + 1, points, rf + rg, lf + lg)
    cons = [LinearConstraint(a, b, LE_) for a, b in ineqs] + [LinearConstraint(a, b, EQ_) for a, b in eqs]
    return HPolyhedron(n + 1, tuple(cons))


def hup_lift(f: PolyhedralFunction, g: PolyhedralFunction, x: Vector, eps: Fraction, eta=None) -> HPolyhedron:
    """The union over ``e1 + e2 = eps + eta`` of ``d_e1 f(x) + d_e2 g(x)``.

    Each summand's slack ``f*(u) + f(x) - <u, x>`` is nonnegative, so the
    union is the level set ``{w : (f* box g*)(w) - <w, x> + f(x) + g(x) <= eps + eta}``
    whose epigraph side is ``epi f* + epi g*``, an exact vertex-sum.
    With ``eta=None`` the result lives in ``(w, eta)`` space with ``eta >= 0``;
    otherwise ``eta`` is fixed and the result lives in ``w`` space.
    """
    n = f.dim
    x = vec(x)
    c0 = Fraction(eps) - evaluate(f, x).value - evaluate(g, x).value
    E = epigraph_sum(conjugate(f), conjugate(g))
    param = eta is None
    cons = []
    # substitute s = c0 + eta + <w, x> into a.w + b s <= r
    for c in E.constraints:
        a, b = c.normal[:n], c.normal[n]
        row = tuple(ai + b * xi for ai, xi in zip(a, x))
        bound = c.bound - b * c0
        if param:
            cons.append(LinearConstraint(row + (b,), bound, c.relation))
        else:
            cons.append(LinearConstraint(row, bound - b * Fraction(eta), c.relation))
    if param:
        cons.append(LinearConstraint((Fraction(0),) * n + (Fraction(-1),), 0, LE_))
        return HPolyhedron(n + 1, tuple(cons))
    return HPolyhedron(n, tuple(cons))


def slice_eta(Q: HPolyhedron, eta: Fraction) -> HPolyhedron:
    """Fix the trailing parameter coordinate of ``Q`` at ``eta``."""
    n = Q.ambient_dim - 1
    cons = []
    for c in Q.constraints:
        cons.append(LinearConstraint(c.normal[:n], c.bound - c.normal[n] * eta, c.relation))
    return HPolyhedron(n, tuple(cons))


def hup_formula_check(
    f: PolyhedralFunction,
    g: PolyhedralFunction,
    x,
    eps,
    etas: Sequence = DEFAULT_ETAS,
) -> FormulaVerdict:
    """Both sides of the generalized Hiriart-Urruty--Phelps formula.

    The left side is ``d_eps (f + g)(x)``. On the right, each ``eta``-set is
    a slice of one parametric projection; the intersection over ``eta > 0``
    is the slice at ``eta = 0`` because the projection is closed and
    monotone in ``eta``. The sampled schedule must be nested, must contain
    the limit, and the smallest sampled set is recomputed by a direct
    projection as an independent cross-check.
    """
    x = vec(x)
    eps = Fraction(eps)
    etas = sorted((Fraction(e) for e in etas), reverse=True)
    if any(e <= 0 for e in etas):
        raise ValueError("etas must be positive")
    if not (evaluate(f, x).is_finite and evaluate(g, x).is_finite):
        raise ValueError("x must lie in dom f and dom g")
    cond = check_cl_sum_condition(f, g)
    lhs = eps_subdifferential(add(f, g), x, eps).set
    Q = hup_lift(f, g, x, eps)
    limit = canonical(slice_eta(Q, Fraction(0)))
    sampled = [slice_eta(Q, e) for e in etas]
    nested = all(includes(b, a) for a, b in zip(sampled, sampled[1:])) and all(
        includes(limit, s) for s in sampled
    )
    agrees = True
    if etas:
        # independent route: the smallest sampled set against the lifted description
        agrees = equals_projection(sampled[-1], _hup_rows(f, g, x, eps, etas[-1]))
    included = includes(limit, lhs)
    equal = included and includes(lhs, limit)
    cex = None
    if not equal:
        cex = inclusion_witness(lhs, limit) if included else inclusion_witness(limit, lhs)
    if cond and not equal:
        status = "formula-violated"
    elif equal:
        status = "equal"
    else:
        status = "superset-only"
    return FormulaVerdict(
        lhs=canonical(lhs),
        rhs=limit,
        condition_holds=cond,
        equal=equal,
        counterexample_point=cex,
        included=included,
        status=status,
        nested_ok=nested,
        sampled_agrees=agrees,
        details={"etas": len(etas)},
    )


# -- infimal convolution -------------------------------------------------------------------


def _level_set(F: PolyhedralFunction, x: Vector, level: Fraction) -> HPolyhedron:
    """``{z : F(z) - <z, x> <= level}`` for a closed ``F``."""
    cons = list(F.domain.cells[0].constraints)
    for p in F.pieces:
        cons.append(LinearConstraint(vsub(p.slope, x), level - p.offset, LE_))
    return HPolyhedron(F.dim, tuple(cons))


def inf_conv_subdiff_check(
    f1: PolyhedralFunction,
    f2: PolyhedralFunction,
    x,
    eps,
    etas: Sequence = DEFAULT_ETAS,
    cfg: GridOracleConfig | None = None,
) -> FormulaVerdict:
    """The eps-subdifferential of an infimal convolution against its formula.

    The left side uses ``(f1 box f2)* = f1* + f2*``. For a witness ``y`` the
    union over ``e1 + e2 = eps + eta`` of ``d_e1 f1(x - y) & d_e2 f2(y)`` is
    the level set ``{z : (f1* + f2*)(z) - <z, x> <= eps + eta - f1(x-y) - f2(y)}``.
    Witnesses are the grid lattice plus the exact LP minimiser. Every
    sampled set is shown to lie in the left side exactly; the reverse
    inclusion is confirmed when some witness is within ``eta`` of optimal
    for every ``eta`` in the schedule, and otherwise left unresolved.
    """
    x = vec(x)
    eps = Fraction(eps)
    n = f1.dim
    cfg = cfg or GridOracleConfig(dims=n)
    F = add(conjugate(f1), conjugate(f2))
    if not F.is_proper:
        empty = HPolyhedron.empty(n)
        return FormulaVerdict(empty, empty, False, False, status="precondition-failed")
    value, attained, ystar = inf_convolution_value(f1, f2, x)
    if not value.is_finite:
        raise ValueError(f"(f1 box f2)(x) = {value} is not finite")
    v = value.value
    lhs = _level_set(F, x, eps - v)
    witnesses = list(cfg.points())
    if ystar is not None:
        witnesses.append(ystar)
    best = None
    included = True
    cex = None
    for y in witnesses:
        a, b = evaluate(f1, vsub(x, y)), evaluate(f2, y)
        if not (a.is_finite and b.is_finite):
            continue
        Fy = a.value + b.value
        if Fy > v + eps:
            continue  # level set empty at eta -> 0
        U = _level_set(F, x, eps - Fy)
        w = inclusion_witness(U, lhs)
        if w is not None:  # pragma: no cover - contradicts Young-Fenchel
            included, cex = False, w
        if best is None or Fy < best[0]:
            best = (Fy, U)
    if best is None:
        return FormulaVerdict(canonical(lhs), HPolyhedron.empty(n), True, False, included=included, status="unresolved")
    gap = best[0] - v
    confirmed = all(gap <= e for e in etas) and gap == 0
    rhs = canonical(best[1])
    equal = confirmed and set_equal(lhs, rhs)
    status = "confirmed-on-sample" if equal else "unresolved"
    if not included:
        status = "formula-violated"
    return FormulaVerdict(
        lhs=canonical(lhs),
        rhs=rhs,
        condition_holds=True,
        equal=equal,
        counterexample_point=cex,
        included=included,
        status=status,
        details={"value": value, "attained": attained, "witnesses": len(witnesses), "best_gap": gap},
    )


# -- the inclusion that fails without lower semicontinuity --------------------------------


def bertsekas_prop31_check(fs: Sequence[PolyhedralFunction], x, eps) -> FormulaVerdict:
    """Is ``d_eps(f_1 + ... + f_m)(x)`` inside the closure of ``sum d_eps f_i(x)``?

    Precondition: ``x`` in every domain and ``f_i(x) = (cl f_i)(x)``.
    Both sides are computed exactly; on failure a point of the left side
    outside the right side is returned.
    """
    x = vec(x)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    fs = list(fs)
    cond = all(
        evaluate(f, x).is_finite and evaluate(f, x) == evaluate(lsc_hull(f), x) for f in fs
    )
    n = fs[0].dim
    if not cond:
        empty = HPolyhedron.empty(n)
        return FormulaVerdict(empty, empty, False, False, status="precondition-failed")
    total = fs[0]
    for f in fs[1:]:
        total = add(total, f)
    lhs = canonical(eps_subdifferential(total, x, eps).set)
    rhs = eps_subdifferential(fs[0], x, eps).set
    for f in fs[1:]:
        rhs = minkowski_sum(rhs, eps_subdifferential(f, x, eps).set)
    rhs = canonical(rhs)
    cex = inclusion_witness(lhs, rhs)
    included = cex is None
    equal = included and includes(rhs, lhs)
    if not equal and cex is None:
        cex = inclusion_witness(rhs, lhs)
    return FormulaVerdict(
        lhs=lhs,
        rhs=rhs,
        condition_holds=True,
        equal=equal,
        counterexample_point=cex,
        included=included,
        status="included" if included else "inclusion-fails",
    )


# -- grid oracles -----------------------------------------------------------------------


def grid_subdiff_oracle(f: PolyhedralFunction, x, eps, candidate, cfg: GridOracleConfig | None = None) -> bool:
    """Check ``f(y) - f(x) >= <c, y - x> - eps`` at every grid point ``y``.

    A necessary condition only: ``False`` refutes membership, ``True``
    certifies nothing.
    """
    x, c = vec(x), vec(candidate)
    eps = Fraction(eps)
    cfg = cfg or GridOracleConfig(dims=f.dim)
    fx = evaluate(f, x)
    if not fx.is_finite:
        raise ValueError("f(x) must be finite")
    base = fx.value - dot(c, x) - eps
    for y in cfg.points():
        if not f.domain.contains(y):
            continue
        if f.raw(y) - dot(c, y) < base:
            return False
    return True


def conjugate_value_oracle(f: PolyhedralFunction, y) -> ExtRational:
    """``f*(y)`` by one LP per domain cell, independent of vertex enumeration.

    Maximises ``<y, x> - t`` over ``t >= pieces`` on each relaxed cell; the
    sup over a partially-open cell equals the sup over its closure.
    """
    y = vec(y)
    n = f.dim
    best = MINUS_INF
    for cell in f.domain.cells:
        rows = []
        for c in cell.relaxed().constraints:
            rows.append((c.normal + (Fraction(0),), "=" if c.relation == EQ_ else "<=", c.bound))
        for p in f.pieces:
            rows.append((p.slope + (Fraction(-1),), "<=", -p.offset))
        if not nonempty_cells(ConvexRegion(n, (cell,))):
            continue
        res = solve_lp(LPProblem(y + (Fraction(-1),), "max", tuple(rows)))
        if res.status == "unbounded":
            return PLUS_INF
        if res.optimal and res.value > best:
            best = res.value
    return best


def subspace_grid(S: Subspace, cfg: GridOracleConfig) -> Iterator[Vector]:
    """Grid points of ``[-B, B]^n`` that lie in ``S``."""
    n = S.ambient_dim
    if S.dim == 0:
        yield (Fraction(0),) * n
        return
    rows, pivots = rref(list(S.basis), n)
    axis = cfg.axis()
    for coeffs in itertools.product(axis, repeat=len(rows)):
        x = [Fraction(0)] * n
        for c, r in zip(coeffs, rows):
            if c:
                for j in range(n):
                    x[j] += c * r[j]
        if cfg.on_grid(x):
            yield tuple(x)


def grid_primal_oracle(I: MonotropicInstance, cfg: GridOracleConfig):
    """Brute-force ``min g`` over grid points of ``S``; ``(value, point)``."""
    g = I.g()
    best, arg = PLUS_INF, None
    for x in subspace_grid(I.S, cfg):
        if g.domain.contains(x):
            val = ExtRational.of(g.raw(x))
            if val < best:
                best, arg = val, x
    return best, arg


# -- seeded random instances ---------------------------------------------------------------


def _rand_vec(rng: random.Random, n: int, lo: int, hi: int, nonzero=False) -> tuple:
    while True:
        v = tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))
        if not nonzero or any(v):
            return v


def _rand_pieces(rng: random.Random, n: int) -> tuple:
    k = rng.randint(1, 3)
    return tuple(AffinePiece(_rand_vec(rng, n, -2, 2), Fraction(rng.randint(-3, 3))) for _ in range(k))


def _rand_closed_constraints(rng: random.Random, n: int, p: Vector, bounded: bool) -> list:
    cons = []
    for _ in range(rng.randint(0, n + 1)):
        a = _rand_vec(rng, n, -2, 2, nonzero=True)
        cons.append(LinearConstraint(a, dot(a, p) + rng.randint(0, 3), LE_))
    if bounded:
        for i in range(n):
            e = tuple(Fraction(int(j == i)) for j in range(n))
            r = rng.randint(1, 4)
            cons.append(LinearConstraint(e, p[i] + r, LE_))
            cons.append(LinearConstraint(tuple(-v for v in e), -p[i] + rng.randint(1, 4), LE_))
    return cons


def random_function(rng: random.Random, n: int, profile: str, p: Vector) -> PolyhedralFunction:
    """A random polyhedral function whose domain contains ``p``."""
    pieces = _rand_pieces(rng, n)
    cons = _rand_closed_constraints(rng, n, p, bounded=rng.random() < 0.5)
    if profile == "closed-polyhedral":
        return PolyhedralFunction(n, pieces, ConvexRegion(n, (Cell(n, tuple(cons)),)))
    if profile != "partially-open":
        raise ValueError(f"unknown profile {profile!r}")
    slack = [i for i, c in enumerate(cons) if dot(c.normal, p) < c.bound]
    if not slack:
        a = _rand_vec(rng, n, -2, 2, nonzero=True)
        cons.append(LinearConstraint(a, dot(a, p) + rng.randint(1, 3), LE_))
        slack = [len(cons) - 1]
    k = rng.choice(slack)
    opened = [LinearConstraint(c.normal, c.bound, LT_) if i == k else c for i, c in enumerate(cons)]
    cells = [Cell(n, tuple(opened))]
    if rng.random() < 0.7:
        face = [LinearConstraint(c.normal, c.bound, EQ_) if i == k else c for i, c in enumerate(cons)]
        b = _rand_vec(rng, n, -2, 2, nonzero=True)
        face.append(LinearConstraint(b, dot(b, p) + rng.randint(-2, 2), LE_))
        cells.append(Cell(n, tuple(face)))
    return PolyhedralFunction(n, pieces, ConvexRegion(n, tuple(cells)))


def random_instance(seed: int, profile: str = "closed-polyhedral", dims: Sequence[int] = (1, 1)) -> MonotropicInstance:
    """Reproducible instance with a planted feasible point.

    The subspace always contains the planted point, so the primal is
    feasible by construction.
    """
    rng = random.Random(f"instance:{seed}:{profile}:{tuple(dims)}")
    dims = list(dims)
    points = [_rand_vec(rng, d, -2, 2) for d in dims]
    blocks = tuple(random_function(rng, d, profile, p) for d, p in zip(dims, points))
    planted = tuple(itertools.chain(*points))
    total = len(planted)
    extra = [_rand_vec(rng, total, -2, 2, nonzero=True) for _ in range(rng.randint(0, max(0, total - 2)))]
    gens = ([planted] if any(planted) else []) + extra
    return MonotropicInstance(blocks, Subspace.span(total, gens))


def planted_point(seed: int, profile: str = "closed-polyhedral", dims: Sequence[int] = (1, 1)) -> Vector:
    rng = random.Random(f"instance:{seed}:{profile}:{tuple(dims)}")
    return tuple(itertools.chain(*[_rand_vec(rng, d, -2, 2) for d in dims]))


def random_pair(seed: int, profile: str = "closed-polyhedral", dim: int = 2):
    """``(f, g, x)`` with ``x`` in both domains.

    The partially-open profile glues an open half-space piece and a
    half-face for ``f`` against the opposite closed half-space for ``g``,
    which typically breaks ``cl(f + g) = cl f + cl g`` when ``dim >= 2``.
    """
    rng = random.Random(f"pair:{seed}:{profile}:{dim}")
    x = _rand_vec(rng, dim, -2, 2)
    if profile == "closed-polyhedral":
        return random_function(rng, dim, profile, x), random_function(rng, dim, profile, x), x
    if profile != "partially-open":
        raise ValueError(f"unknown profile {profile!r}")
    a = _rand_vec(rng, dim, -2, 2, nonzero=True)
    while True:
        c = _rand_vec(rng, dim, -2, 2, nonzero=True)
        if dim == 1 or any(ci * a[j] != cj * a[i] for i, ci in enumerate(c) for j, cj in enumerate(c)):
            break
    base = _rand_closed_constraints(rng, dim, x, bounded=rng.random() < 0.5)
    ax = dot(a, x)
    open_cell = Cell(dim, tuple(base) + (LinearConstraint(a, ax, LT_),))
    face = Cell(dim, tuple(base) + (LinearConstraint(a, ax, EQ_), LinearConstraint(c, dot(c, x), LE_)))
    f = PolyhedralFunction(dim, _rand_pieces(rng, dim), ConvexRegion(dim, (open_cell, face)))
    gcons = _rand_closed_constraints(rng, dim, x, bounded=False)
    gcons.append(LinearConstraint(tuple(-v for v in a), -ax, LE_))
    g = PolyhedralFunction(dim, _rand_pieces(rng, dim), ConvexRegion(dim, (Cell(dim, tuple(gcons)),)))
    return f, g, x
