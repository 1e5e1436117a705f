"""Acceptance criteria 1-8, each at its stated tolerance and time budget.

Every test prints one ``criterion N: PASS|FAIL`` line to the terminal.
"""

import time
from fractions import Fraction

import pytest

from polyconvex import examples as ex
from polyconvex import repro
from polyconvex.campaigns import (
    calculus_campaign,
    oracle_campaign,
    thm31_campaign,
    thm34_campaign,
    three_block_chain_counterexample,
)
from polyconvex.functions import eps_directional_derivative, eps_subdifferential, support_function
from polyconvex.monotropic import TSetQuery, build_T, check_bertsekas_closedness, duality_report
from polyconvex.rational import PLUS_INF
from polyconvex.sets import HPolyhedron, region_is_closed, set_equal
from polyconvex.verify import bertsekas_prop31_check


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}{'  ' + detail if detail else ''}")
        return ok

    return emit


def test_criterion_1_first_example(report):
    t0 = time.perf_counter()
    I = ex.example_21()
    sample = [TSetQuery((0, a, 0), e) for a in (3, 4, 5) for e in (Fraction(1, 2), 1, 2)]
    rep = duality_report(I, sample)
    closed_ok, _ = check_bertsekas_closedness(I, sample)
    elapsed = time.perf_counter() - t0
    w = rep.regularity_witness
    ok = (
        rep.primal_value == 3
        and rep.dual_value == 0
        and rep.bertsekas_closedness_ok is True
        and closed_ok
        and rep.thm34_regularity_ok is False
        and w is not None
        and w[0] == 0 and w[2] == 0 and 0 <= w[1] < 3
        and elapsed < 1
    )
    assert report(1, ok, f"v(P)={rep.primal_value} v(D)={rep.dual_value} witness={repro.point_text(w) if w else None} {elapsed:.2f}s")


def test_criterion_2_eq1(report):
    f1, I = ex.example_21_f1(), ex.example_21()
    ok = True
    for a, e in ((3, Fraction(1)), (4, Fraction(2)), (5, Fraction(1, 2))):
        lo = 1 - e / a
        ok &= set_equal(eps_subdifferential(f1, (0, a), e).set, HPolyhedron.box([(None, 0), (lo, 1)]))
        T = build_T(I, TSetQuery((0, a, 0), e))
        ok &= set_equal(T, HPolyhedron.box([(None, None), (lo, 1), (None, None)]))
        ok &= region_is_closed(T)
    assert report(2, ok)


def test_criterion_3_open_cone(report):
    dK = ex.example_22_indicator()
    ok = True
    for e in (Fraction(1, 2), Fraction(1), Fraction(2)):
        ok &= support_function(eps_subdifferential(dK, (0, 0), e).set, (1, 0)) == 0
        ok &= eps_directional_derivative(dK, (0, 0), (1, 0), e) == PLUS_INF
    assert report(3, ok)


def test_criterion_4_sum_inclusion_fails(report):
    fs = ex.example_23_functions()
    ok = True
    for e in (Fraction(1, 4), Fraction(1), Fraction(100)):
        v = bertsekas_prop31_check(fs, (0, 0), e)
        ok &= set_equal(v.lhs, HPolyhedron.box([(None, None), (None, None)]))
        ok &= set_equal(v.rhs, HPolyhedron.box([(None, 0), (None, None)]))
        ok &= not v.included and v.counterexample_point == (1, 0)
    ok &= all(c.ok for c in repro.example_23())
    assert report(4, ok)


def test_criterion_5_hup_campaign(report):
    t0 = time.perf_counter()
    r = thm31_campaign(seed=0, trials=100, open_target=50)
    elapsed = time.perf_counter() - t0
    ok = (
        r.ok
        and r.counts["closed_checks"] >= 300
        and r.counts.get("open_condition_fails", 0) >= 50
        and elapsed < 60
    )
    assert report(5, ok, f"{r.counts} failures={len(r.failures)} {elapsed:.1f}s")


def test_criterion_6_zero_gap_campaign(report):
    t0 = time.perf_counter()
    r = thm34_campaign(seed=0, trials=100)
    elapsed = time.perf_counter() - t0
    ok = r.ok and r.counts["closed-polyhedral"] >= 100 and elapsed < 60
    assert report(6, ok, f"{r.counts} failures={len(r.failures)} {elapsed:.1f}s")


@pytest.fixture(scope="module")
def calculus():
    return calculus_campaign(seed=0, trials=40)


def test_calculus_suite_without_factor_two(calculus):
    # every clause of criterion 7 except the factor 2 for three or more blocks
    assert calculus.ok, calculus.failures[:5]
    for key in ("monotonicity", "intersection", "young_fenchel", "membership", "chain_points"):
        assert calculus.counts.get(key, 0) > 0


@pytest.mark.xfail(
    strict=True,
    reason="the 2-eps bound in the chain only holds for at most two blocks; "
    "three copies of |t| on [-1, 1] at 0 put (2, 2, 2) in the product but outside d_2 g",
)
def test_criterion_7_calculus_suite(report, calculus):
    point, in_product, in_double, _ = three_block_chain_counterexample()
    exceeded = calculus.counts.get("chain_2eps_exceeded_m3", 0)
    ok = calculus.ok and exceeded == 0 and not (in_product and not in_double)
    detail = f"{exceeded} chain points with three blocks leave d_(2 eps) g; counterexample {repro.point_text(point)}"
    assert report(7, ok, detail)


def test_criterion_8_oracle_consistency(report):
    r = oracle_campaign(seed=0, trials=50)
    ok = r.ok and r.counts.get("primal", 0) >= 50 and r.counts.get("subdiff_members", 0) > 0
    assert report(8, ok, f"{r.counts}")
