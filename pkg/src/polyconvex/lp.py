"""Exact two-phase simplex over the rationals (Bland's anti-cycling rule).

All variables are free. Constraints are ``a.x <= b``, ``a.x >= b`` or
``a.x = b``. Infeasible problems report ``+inf`` for minimisation and
``-inf`` for maximisation, so an infeasible primal reads as ``v(P) = +inf``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rational import MINUS_INF, PLUS_INF, ExtRational, Vector, vec

try:  # tableau arithmetic; results are always handed back as Fractions
    from gmpy2 import mpq as _num
except ImportError:  # pragma: no cover
    _num = Fraction

LE, GE, EQ = "<=", ">=", "="
_ZERO = _num(0)
_ONE = _num(1)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LPProblem:
    objective: Vector
    sense: str = "min"
    constraints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', not {self.sense!r}")
        n = len(self.objective)
        cons = []
        for a, rel, b in self.constraints:
            if rel not in (LE, GE, EQ):
                raise ValueError(f"unknown relation {rel!r}")
            a = vec(a)
            if len(a) != n:
                raise DimensionError(f"constraint of dim {len(a)} in an LP of dim {n}")
            cons.append((a, rel, Fraction(b)))
        object.__setattr__(self, "objective", vec(self.objective))
        object.__setattr__(self, "constraints", tuple(cons))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: ExtRational
    witness: Vector | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def solve_lp(p: LPProblem) -> LPResult:
    n = len(p.objective)
    sign = 1 if p.sense == "min" else -1
    cost = [_num(sign * c.numerator, c.denominator) for c in p.objective]

    rows: list[list] = []
    rhs: list = []
    kinds: list[str] = []
    for a, rel, b in p.constraints:
        if rel == GE:
            a, b, rel = tuple(-x for x in a), -b, LE
        if not any(a):
            if (rel == LE and b < 0) or (rel == EQ and b != 0):
                return _infeasible(p)
            continue
        rows.append([_num(x.numerator, x.denominator) for x in a])
        rhs.append(_num(b.numerator, b.denominator))
        kinds.append(rel)

    m = len(rows)
    nslack = sum(1 for k in kinds if k == LE)
    # columns: x+ (n), x- (n), slacks, artificials
    ncols = 2 * n + nslack
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art_rows = []
    s = 0
    for i in range(m):
        row = rows[i] + [-x for x in rows[i]] + [_ZERO] * nslack
        b = rhs[i]
        slack_col = None
        if kinds[i] == LE:
            slack_col = 2 * n + s
            row[slack_col] = _ONE
            s += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        if slack_col is not None and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            basis.append(-1)
            art_rows.append(i)
        tab.append(row + [b])

    nart = len(art_rows)
    total = ncols + nart
    for t in tab:
        b = t.pop()
        t.extend([_ZERO] * nart)
        t.append(b)
    for k, i in enumerate(art_rows):
        tab[i][ncols + k] = _ONE
        basis[i] = ncols + k

    if nart:
        # phase 1: minimise the sum of artificials
        obj = [_ZERO] * (total + 1)
        for k in range(nart):
            obj[ncols + k] = _ONE
        for i in art_rows:
            obj = [o - t for o, t in zip(obj, tab[i])]
        _simplex(tab, basis, obj, total)
        if -obj[total] != 0:
            return _infeasible(p)
        # drive artificials out of the basis
        for i in range(len(tab) - 1, -1, -1):
            if basis[i] >= ncols:
                j = next((j for j in range(ncols) if tab[i][j] != 0), None)
                if j is None:
                    del tab[i]
                    del basis[i]
                else:
                    _pivot(tab, basis, None, i, j)
        for t in tab:
            del t[ncols:total]
        total = ncols

    obj = [_ZERO] * (total + 1)
    for j in range(n):
        obj[j] = cost[j]
        obj[n + j] = -cost[j]
    for i, bcol in enumerate(basis):
        c = obj[bcol]
        if c:
            obj = [o - c * t for o, t in zip(obj, tab[i])]
    status = _simplex(tab, basis, obj, total)
    if status == "unbounded":
        return LPResult("unbounded", MINUS_INF if sign == 1 else PLUS_INF, None)
    x = [_ZERO] * total
    for i, bcol in enumerate(basis):
        x[bcol] = tab[i][total]
    w = tuple(Fraction(int(v.numerator), int(v.denominator)) for v in (x[j] - x[n + j] for j in range(n)))
    value = sum((c * wj for c, wj in zip(p.objective, w)), Fraction(0))
    return LPResult("optimal", ExtRational.of(value), w)


def _infeasible(p: LPProblem) -> LPResult:
    return LPResult("infeasible", PLUS_INF if p.sense == "min" else MINUS_INF, None)


def _simplex(tab, basis, obj, total) -> str:
    while True:
        j = next((j for j in range(total) if obj[j] < 0), None)
        if j is None:
            return "optimal"
        best = None
        for i, t in enumerate(tab):
            a = t[j]
            if a > 0:
                ratio = t[total] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(tab, basis, obj, best[1], j)


def _pivot(tab, basis, obj, r, c):
    prow = tab[r]
    piv = prow[c]
    if piv != 1:
        prow = [x / piv for x in prow]
        tab[r] = prow
    nz = [k for k, x in enumerate(prow) if x]
    for i, t in enumerate(tab):
        if i != r:
            f = t[c]
            if f:
                for k in nz:
                    t[k] -= f * prow[k]
    if obj is not None:
        f = obj[c]
        if f:
            for k in nz:
                obj[k] -= f * prow[k]
    basis[r] = c


def minimize(objective: Sequence, constraints) -> LPResult:
    return solve_lp(LPProblem(vec(objective), "min", tuple(constraints)))


def maximize(objective: Sequence, constraints) -> LPResult:
    return solve_lp(LPProblem(vec(objective), "max", tuple(constraints)))


def feasible_point(n: int, constraints) -> Vector | None:
    res = solve_lp(LPProblem((Fraction(0),) * n, "min", tuple(constraints)))
    return res.witness if res.optimal else None
