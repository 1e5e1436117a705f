from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import box_rows, brute_vertices, in_hull_1d_or_2d
from polyconvex import examples as ex
from polyconvex.rational import MINUS_INF, PLUS_INF
from polyconvex.sets import (
    Cell,
    ConvexRegion,
    DimensionCapError,
    HPolyhedron,
    LinearConstraint,
    _included_by_generators,
    _included_by_lp,
    canonical,
    cell_point,
    closure,
    contains,
    eq,
    equals_projection,
    ge,
    gt,
    inclusion_witness,
    includes,
    is_empty,
    le,
    lt,
    minkowski_sum,
    product,
    project,
    region_is_closed,
    set_equal,
    subtract,
    support_value,
    validate_convexity,
)

small = st.integers(-3, 3).map(Fraction)


def polytope(n, extra):
    A, b = box_rows(n, -3, 3)
    A += [a for a, _ in extra]
    b += [v for _, v in extra]
    return HPolyhedron(n, tuple(le(a, v) for a, v in zip(A, b))), A, b


def rows(n, k=3):
    row = st.tuples(st.lists(small, min_size=n, max_size=n).map(tuple), st.integers(-2, 5).map(Fraction))
    return st.lists(row, max_size=k)


def test_constraint_text_and_negation():
    c = le((1, -2), 1)
    assert str(c) == "x1 - 2*x2 <= 1"
    (n,) = c.negations()
    assert n.relation == "lt" and n.normal == (-1, 2) and n.bound == -1
    assert len(eq((1, 0), 0).negations()) == 2


def test_strict_cells():
    open_interval = Cell(1, (gt((1,), 0), lt((1,), 1)))
    p = cell_point(open_interval)
    assert 0 < p[0] < 1
    assert cell_point(Cell(1, (gt((1,), 0), lt((1,), 0)))) is None
    assert is_empty(Cell(1, (gt((1,), 0), le((1,), 0))))


def test_first_example_region():
    C = ex.region_C()
    assert contains(C, (0, 3)) and contains(C, (1, 1))
    assert not contains(C, (0, 2)) and not contains(C, (1, 0))
    assert canonical(closure(C)).describe() == "R_+ x R_+"
    assert not region_is_closed(C)


def test_convexity_probe_rejects_gap():
    R = ConvexRegion.from_cells(Cell(1, (ge((1,), 0), le((1,), 1))), Cell(1, (ge((1,), 2), le((1,), 3))))
    ok, witness = validate_convexity(R)
    assert not ok and witness == ((1,), (2,), (Fraction(3, 2),))
    with pytest.raises(ValueError):
        R.checked()


def test_cone_K_is_convex_but_not_closed():
    K = ex.cone_K()
    assert K.convexity_checked
    assert not region_is_closed(K)
    assert closure(K).describe() == "R_+ x R_+"


def test_box_describe():
    assert HPolyhedron.box([(None, 0), (Fraction(2, 3), 1)]).describe() == "R_- x [2/3, 1]"
    assert HPolyhedron.box([(0, 0)]).describe() == "{0}"
    assert HPolyhedron.empty(2).describe() == "empty"
    assert HPolyhedron.universe(2).describe() == "R x R"


def test_subtract_and_witness():
    square = Cell(2, (ge((1, 0), 0), le((1, 0), 1), ge((0, 1), 0), le((0, 1), 1)))
    left = Cell(2, (le((1, 0), Fraction(1, 2)),))
    rest = subtract(square, [left])
    assert rest and all(cell_point(c)[0] > Fraction(1, 2) for c in rest)
    w = inclusion_witness(square, left)
    assert w is not None and w[0] > Fraction(1, 2)
    assert includes(Cell(2, square.constraints + (le((1, 0), 0),)), left)


def test_support_value():
    P = HPolyhedron.box([(None, 0), (0, 1)])
    assert support_value(P, (0, 1)) == 1
    assert support_value(P, (1, 0)) == 0
    assert support_value(P, (-1, 0)) == PLUS_INF
    assert support_value(HPolyhedron.empty(2), (1, 0)) == MINUS_INF


def test_projection_dimension_cap():
    with pytest.raises(DimensionCapError):
        project(HPolyhedron.universe(10), range(9))


@settings(max_examples=50, deadline=None)
@given(rows(3))
def test_projection_matches_vertex_shadow(extra):
    P, A, b = polytope(3, extra)
    verts = brute_vertices(A, b)
    Q = project(P, [0, 1])
    if not verts:
        assert is_empty(Q)
        return
    shadow = {v[:2] for v in verts}
    # every shadow point lies in Q, and every vertex of Q is in the hull of the shadow
    assert all(contains(Q, s) for s in shadow)
    QA = [c.normal for c in Q.constraints] + [tuple(-a for a in c.normal) for c in Q.constraints if c.relation == "eq"]
    Qb = [c.bound for c in Q.constraints] + [-c.bound for c in Q.constraints if c.relation == "eq"]
    for v in brute_vertices(QA, Qb):
        assert in_hull_1d_or_2d(shadow, v)


@settings(max_examples=40, deadline=None)
@given(rows(2), rows(2))
def test_minkowski_sum_matches_vertex_sums(ea, eb):
    P, A, b = polytope(2, ea)
    Q, C, d = polytope(2, eb)
    vp, vq = brute_vertices(A, b), brute_vertices(C, d)
    R = minkowski_sum(P, Q)
    if not vp or not vq:
        assert is_empty(R)
        return
    sums = {(p[0] + q[0], p[1] + q[1]) for p in vp for q in vq}
    assert all(contains(R, s) for s in sums)
    RA = [c.normal for c in R.constraints]
    Rb = [c.bound for c in R.constraints]
    for v in brute_vertices(RA, Rb):
        assert in_hull_1d_or_2d(sums, v)


@settings(max_examples=40, deadline=None)
@given(rows(2), rows(2))
def test_inclusion_routes_agree(ea, eb):
    P, _, _ = polytope(2, ea)
    Q, _, _ = polytope(2, eb)
    assert _included_by_generators(P, Q) == _included_by_lp(P, Q) == (inclusion_witness(P, Q) is None)


@settings(max_examples=30, deadline=None)
@given(rows(3))
def test_equals_projection_recognises_fm_output(extra):
    P, _, _ = polytope(3, extra)
    Q = project(P, [0, 1])
    assert equals_projection(Q, P)
    if not is_empty(Q):
        top = support_value(Q, (1, 0)).value
        shrunk = Q.meet(HPolyhedron(2, (le((1, 0), top - Fraction(1, 2)),)))
        assert not equals_projection(shrunk, P)


def test_product_and_canonical():
    P = product(HPolyhedron.box([(0, 1)]), HPolyhedron.box([(None, 2)]))
    assert P.describe() == "[0, 1] x (-inf, 2]"
    C = canonical(HPolyhedron(1, (le((2,), 2), le((1,), 5), ge((1,), 1))))
    assert C.describe() == "{1}"
    assert set_equal(C, HPolyhedron.box([(1, 1)]))


def test_linear_constraint_validation():
    with pytest.raises(ValueError):
        LinearConstraint((1,), 0, "ge")
    with pytest.raises(ValueError):
        HPolyhedron(1, (lt((1,), 0),))
