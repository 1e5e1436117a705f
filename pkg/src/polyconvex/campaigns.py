"""Seeded property campaigns for the two main theorems and the calculus.

Each campaign returns a :class:`CampaignResult` listing every violation it
found; an empty list with at least one trial is a pass.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .functions import PolyhedralFunction, conjugate, eps_subdifferential, evaluate, separable_sum
from .monotropic import MonotropicInstance, duality_report, solve_primal
from .rational import Vector, dot, fmt, vadd
from .sets import HPolyhedron, contains, generators, includes, product
from .verify import (
    DEFAULT_ETAS,
    GridOracleConfig,
    conjugate_value_oracle,
    grid_primal_oracle,
    grid_subdiff_oracle,
    hup_formula_check,
    planted_point,
    random_function,
    random_instance,
    random_pair,
    subspace_grid,
)

CLOSED, OPEN = "closed-polyhedral", "partially-open"
EPS_THM31 = (Fraction(0), Fraction(1, 2), Fraction(1))
EPS_CALCULUS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
EPS_CHAIN = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
SHRINK = tuple(Fraction(1, 2**k) for k in range(11))


@dataclass
class CampaignResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.trials > 0 and not self.failures

    def bump(self, key: str, k: int = 1):
        self.counts[key] = self.counts.get(key, 0) + k


def instance_dims(seed: int, max_blocks: int = 3, max_block_dim: int = 2) -> tuple:
    rng = random.Random(f"dims:{seed}")
    m = 1 + seed % max_blocks
    return tuple(rng.randint(1, max_block_dim) for _ in range(m))


# -- generalized Hiriart-Urruty--Phelps formula ----------------------------------------------


def thm31_campaign(
    seed: int = 0,
    trials: int = 100,
    open_target: int = 50,
    etas: Sequence = DEFAULT_ETAS,
    max_dim: int = 3,
) -> CampaignResult:
    """Closed pairs must satisfy the formula with equality; partially-open pairs the inclusion."""
    res = CampaignResult("thm31")
    for s in range(seed, seed + trials):
        d = 1 + s % max_dim
        f, g, x = random_pair(s, CLOSED, d)
        for e in EPS_THM31:
            v = hup_formula_check(f, g, x, e, etas)
            res.trials += 1
            if not (v.equal and v.condition_holds and v.nested_ok and v.sampled_agrees):
                res.failures.append(f"closed seed={s} dim={d} eps={fmt(e)}: {v.status}")
    res.counts["closed_checks"] = res.trials
    s = seed
    while res.counts.get("open_condition_fails", 0) < open_target and s < seed + 20 * max(open_target, 1):
        f, g, x = random_pair(s, OPEN, 2)
        e = EPS_THM31[s % len(EPS_THM31)]
        v = hup_formula_check(f, g, x, e, etas)
        res.trials += 1
        res.bump("open_checks")
        if not v.condition_holds:
            res.bump("open_condition_fails")
        if not (v.included and v.nested_ok and v.sampled_agrees):
            res.failures.append(f"open seed={s} eps={fmt(e)}: limit not inside the left side")
        if v.condition_holds and not v.equal:
            res.failures.append(f"open seed={s} eps={fmt(e)}: condition holds but sets differ")
        s += 1
    if res.counts.get("open_condition_fails", 0) < open_target:
        res.failures.append(f"only {res.counts.get('open_condition_fails', 0)} partially-open pairs break the condition")
    return res


# -- zero duality gap -------------------------------------------------------------------------


def thm34_campaign(seed: int = 0, trials: int = 100, profiles=(CLOSED, OPEN)) -> CampaignResult:
    """Zero gap on closed instances; weak duality on every instance."""
    res = CampaignResult("thm34")
    for profile in profiles:
        for s in range(seed, seed + trials):
            dims = instance_dims(s)
            I = random_instance(s, profile, dims)
            res.trials += 1
            res.bump(profile)
            try:
                rep = duality_report(I)
            except AssertionError as e:
                res.failures.append(f"{profile} seed={s} dims={dims}: {e}")
                continue
            if not rep.weak_duality_ok:
                res.failures.append(f"{profile} seed={s}: weak duality fails")
            if profile == CLOSED and rep.gap != 0:
                res.failures.append(f"{profile} seed={s} dims={dims}: gap {rep.gap}")
            if rep.gap != 0:
                res.bump("positive_gap")
    return res


# -- eps-subdifferential calculus --------------------------------------------------------------


def _slope_sample(f, n: int) -> list[Vector]:
    axis = [Fraction(k) for k in range(-3, 4)]
    ys = set(itertools.product(axis, repeat=n))
    ys.update(p.slope for p in f.pieces)
    return sorted(ys)


def _set_points(P, cap: int = 12) -> list[Vector]:
    """Vertices and vertex-plus-direction points of a closed polyhedron."""
    points, rays, lines = generators(P)
    out = list(points)
    dirs = list(rays) + list(lines) + [tuple(-a for a in l) for l in lines]
    for p in points:
        for r in dirs:
            out.append(vadd(p, r))
    if len(points) > 1:
        k = len(points)
        c = tuple(sum(col) / k for col in zip(*points))
        out.append(c)
    return out[:cap]


def calculus_campaign(seed: int = 0, trials: int = 40, cfg: GridOracleConfig | None = None) -> CampaignResult:
    """Monotonicity, the intersection property, Young-Fenchel, membership and the inclusion chain."""
    res = CampaignResult("calculus")
    box = cfg.box_bound if cfg else Fraction(10)
    pitch = cfg.spacing if cfg else Fraction(1, 4)
    for s in range(seed, seed + trials):
        n = 1 + s % 2
        profile = CLOSED if s % 3 else OPEN
        rng = random.Random(f"calculus:{s}")
        x = tuple(Fraction(rng.randint(-2, 2)) for _ in range(n))
        f = random_function(rng, n, profile, x)
        res.trials += 1
        _calculus_one(res, f, x, GridOracleConfig(box, pitch, n), f"seed={s} {profile}")
    for s in range(seed, seed + trials):
        dims = instance_dims(s, max_blocks=3, max_block_dim=1 if s % 3 == 2 else 2)
        I = random_instance(s, CLOSED, dims)
        res.trials += 1
        _chain_one(res, I, f"seed={s} dims={dims}")
    return res


def _calculus_one(res: CampaignResult, f, x: Vector, cfg: GridOracleConfig, tag: str):
    fx = evaluate(f, x).value
    sets = {e: eps_subdifferential(f, x, e).set for e in EPS_CALCULUS}
    for a, b in zip(EPS_CALCULUS, EPS_CALCULUS[1:]):
        res.bump("monotonicity")
        if not includes(sets[a], sets[b]):
            res.failures.append(f"{tag}: d_{fmt(a)} not inside d_{fmt(b)}")
    # the intersection over mu > eps, sampled: nested chain plus pointwise exclusion
    for e in EPS_CALCULUS[:-1]:
        shrink = [eps_subdifferential(f, x, e + d).set for d in SHRINK]
        res.bump("intersection")
        if not all(includes(b, a) for a, b in zip(shrink, shrink[1:])) or not includes(sets[e], shrink[-1]):
            res.failures.append(f"{tag}: shrinking chain at eps={fmt(e)} is not nested above d_eps")
        for p in _set_points(shrink[0]):
            if contains(sets[e], p):
                continue
            excess = conjugate_value_oracle(f, p).value + fx - dot(p, x) - e
            for d, P in zip(SHRINK, shrink):
                if contains(P, p) != (d >= excess):
                    res.failures.append(f"{tag}: point {p} vs d_(eps+{fmt(d)}) at eps={fmt(e)}")
    ys = _slope_sample(f, f.dim)
    fs = conjugate(f)
    star = {}
    for y in ys:
        exact, lp = evaluate(fs, y), conjugate_value_oracle(f, y)
        res.bump("conjugate_values")
        if exact != lp:
            res.failures.append(f"{tag}: f*({y}) = {exact} but the LP gives {lp}")
        star[y] = lp
    finite = [(y, v.value) for y, v in star.items() if v.is_finite]
    for z in cfg.points():
        fz = evaluate(f, z)
        if not fz.is_finite:
            continue
        for y, v in finite:
            res.bump("young_fenchel")
            if fz.value + v < dot(y, z):
                res.failures.append(f"{tag}: Young-Fenchel fails at x={z}, y={y}")
    for e in EPS_CALCULUS:
        for y in ys:
            v = star[y]
            by_value = v.is_finite and fx + v.value <= dot(y, x) + e
            res.bump("membership")
            if by_value != contains(sets[e], y):
                res.failures.append(f"{tag}: membership of {y} at eps={fmt(e)} disagrees")


def _chain_one(res: CampaignResult, I: MonotropicInstance, tag: str):
    g = separable_sum(I.blocks)
    m = len(I.blocks)
    cfg = GridOracleConfig(2, 1, I.total_dim)
    for x in subspace_grid(I.S, cfg):
        if not evaluate(g, x).is_finite:
            continue
        for e in EPS_CHAIN:
            res.bump("chain_points")
            lower = eps_subdifferential(g, x, e).set
            prod = product(*(eps_subdifferential(f, xi, e).set for f, xi in zip(I.blocks, I.split(x))))
            if not includes(lower, prod):
                res.failures.append(f"{tag}: d_eps g not inside the product at x={x}, eps={fmt(e)}")
            top = eps_subdifferential(g, x, m * e).set
            if not includes(prod, top):
                res.failures.append(f"{tag}: product not inside d_(m eps) g at x={x}, eps={fmt(e)}")
            if not includes(prod, eps_subdifferential(g, x, 2 * e).set):
                if m <= 2:
                    res.failures.append(f"{tag}: product not inside d_(2 eps) g at x={x}, eps={fmt(e)}")
                else:
                    # expected for m >= 3; recorded so the factor-2 claim can be audited
                    res.bump("chain_2eps_exceeded_m3")


def three_block_chain_counterexample(eps=Fraction(1)):
    """Three copies of ``|t|`` on ``[-1, 1]`` at the origin.

    ``(1 + eps, 1 + eps, 1 + eps)`` lies in the product of the blocks'
    eps-subdifferentials but only in the ``3 eps``-subdifferential of their
    separable sum, so the factor 2 in the chain needs ``m <= 2``.
    Returns ``(point, in_product, in_2eps, in_3eps)``.
    """
    eps = Fraction(eps)
    f = PolyhedralFunction.on(HPolyhedron.box([(-1, 1)]), [((1,), 0), ((-1,), 0)])
    g = separable_sum([f, f, f])
    x = (Fraction(0),) * 3
    p = (1 + eps,) * 3
    prod = product(*(eps_subdifferential(f, (0,), eps).set for _ in range(3)))
    return (
        p,
        contains(prod, p),
        contains(eps_subdifferential(g, x, 2 * eps).set, p),
        contains(eps_subdifferential(g, x, 3 * eps).set, p),
    )


# -- oracle consistency --------------------------------------------------------------------------


def oracle_campaign(
    seed: int = 0,
    trials: int = 50,
    cfg: GridOracleConfig | None = None,
    subdiff_cfg: GridOracleConfig | None = None,
) -> CampaignResult:
    """Grid oracles against the exact solvers on seeded instances of both profiles."""
    res = CampaignResult("oracle")
    box = cfg.box_bound if cfg else Fraction(3)
    pitch = cfg.spacing if cfg else Fraction(1, 2)
    sbox = subdiff_cfg.box_bound if subdiff_cfg else Fraction(4)
    spitch = subdiff_cfg.spacing if subdiff_cfg else Fraction(1, 2)
    for profile in (CLOSED, OPEN):
        for s in range(seed, seed + trials):
            dims = instance_dims(s, max_blocks=2 if s % 4 else 3)
            if sum(dims) > 4:
                dims = dims[:2]
            I = random_instance(s, profile, dims)
            res.trials += 1
            exact = solve_primal(I)
            ov, op = grid_primal_oracle(I, GridOracleConfig(box, pitch, I.total_dim))
            res.bump("primal")
            if ov < exact.value:
                res.failures.append(f"{profile} seed={s}: grid value {ov} below exact {exact.value}")
            w = exact.witness
            if exact.attained and w is not None and GridOracleConfig(box, pitch, I.total_dim).on_grid(w):
                res.bump("primal_on_lattice")
                if ov != exact.value:
                    res.failures.append(f"{profile} seed={s}: witness on the lattice but grid gives {ov}")
            for f, xi in zip(I.blocks, I.split(planted_point(s, profile, dims))):
                c = GridOracleConfig(sbox, spitch, f.dim)
                for e in (Fraction(0), Fraction(1, 2)):
                    P = eps_subdifferential(f, xi, e).set
                    for p in _set_points(P, cap=6):
                        res.bump("subdiff_members")
                        if not grid_subdiff_oracle(f, xi, e, p, c):
                            res.failures.append(f"{profile} seed={s}: oracle rejects exact member {p}")
    return res
