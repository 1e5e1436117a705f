from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyconvex import examples as ex
from polyconvex.linalg import Subspace
from polyconvex.monotropic import (
    MonotropicInstance,
    TSetQuery,
    build_T,
    check_thm34_regularity,
    duality_report,
    solve_dual,
    solve_primal,
)
from polyconvex.rational import ExtRational
from polyconvex.sets import HPolyhedron, region_is_closed, set_equal
from polyconvex.verify import planted_point, random_instance


def test_first_example_values_and_gap():
    rep = duality_report(ex.example_21())
    assert rep.primal_value == 3 and rep.dual_value == 0 and rep.gap == 3
    assert rep.weak_duality_ok
    assert rep.bertsekas_closedness_ok is True
    assert rep.thm34_regularity_ok is False
    w = rep.regularity_witness
    assert w[0] == 0 and w[2] == 0 and 0 <= w[1] < 3


def test_abs_instance_has_zero_gap():
    rep = duality_report(ex.abs_instance())
    assert rep.gap == 0 and rep.primal_value == rep.dual_value


@pytest.mark.parametrize("a,e", [(3, 1), (4, 2), (5, Fraction(1, 2))])
def test_t_set_is_closed_box(a, e):
    T = build_T(ex.example_21(), TSetQuery((0, a, 0), e))
    want = HPolyhedron.box([(None, None), (1 - Fraction(e) / a, 1), (None, None)])
    assert set_equal(T, want)
    assert region_is_closed(T)


def test_query_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        TSetQuery((0, 3, 0), 0)


def test_instance_validation():
    f = ex.abs_value()
    with pytest.raises(ValueError):
        MonotropicInstance((f,), Subspace.full(2))
    with pytest.raises(ValueError):
        MonotropicInstance((), Subspace.full(1))


def test_regularity_holds_for_abs():
    ok, _ = check_thm34_regularity(ex.abs_instance())
    assert ok


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["closed-polyhedral", "partially-open"]),
       st.sampled_from([(1,), (1, 1), (2, 1), (1, 1, 1)]))
def test_weak_duality_on_random_instances(seed, profile, dims):
    I = random_instance(seed, profile, dims)
    p, d = solve_primal(I), solve_dual(I)
    assert p.value >= d.value
    assert duality_report(I).weak_duality_ok
    # the planted point is feasible, so the primal is bounded above by its cost
    v = I.g().raw(planted_point(seed, profile, dims))
    assert p.value <= ExtRational.of(v)
