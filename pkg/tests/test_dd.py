from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import box_rows, brute_vertices, dot
from polyconvex import dd

small = st.integers(-3, 3).map(Fraction)


def polytopes(n):
    row = st.tuples(st.lists(small, min_size=n, max_size=n).map(tuple), st.integers(-3, 6).map(Fraction))
    return st.lists(row, max_size=4)


def _h_rows(n, extra):
    A, b = box_rows(n, -4, 4)
    A += [a for a, _ in extra]
    b += [v for _, v in extra]
    return A, b


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(st.just(n), polytopes(n))))
def test_vertices_match_brute_force(case):
    n, extra = case
    A, b = _h_rows(n, extra)
    points, rays, lines = dd.h_to_v(n, list(zip(A, b)))
    assert rays == [] and lines == []
    assert set(points) == brute_vertices(A, b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(st.just(n), polytopes(n))))
def test_round_trip_through_v_representation(case):
    n, extra = case
    A, b = _h_rows(n, extra)
    verts = brute_vertices(A, b)
    if not verts:
        assert dd.h_to_v(n, list(zip(A, b)))[0] == []
        return
    ineqs, eqs = dd.v_to_h(n, sorted(verts))
    A2 = [a for a, _ in ineqs] + [e for e, _ in eqs] + [tuple(-x for x in e) for e, _ in eqs]
    b2 = [v for _, v in ineqs] + [c for _, c in eqs] + [-c for _, c in eqs]
    assert brute_vertices(A2, b2) == verts
    # irredundant: every facet is tight on at least one vertex
    for a, v in ineqs:
        assert any(dot(a, p) == v for p in verts)


def test_orthant_has_unit_rays():
    n = 3
    ineqs = [(tuple(-Fraction(int(i == j)) for j in range(n)), 0) for i in range(n)]
    points, rays, lines = dd.h_to_v(n, ineqs)
    assert points == [(0, 0, 0)]
    assert sorted(rays) == sorted(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    assert lines == []


def test_half_plane_has_a_line():
    points, rays, lines = dd.h_to_v(2, [((1, 0), 1)])
    assert len(points) == 1 and points[0][0] == 1
    assert rays == [(-1, 0)]
    assert len(lines) == 1 and lines[0][0] == 0


def test_equalities_cut_dimension():
    # the segment {x + y = 1, 0 <= x <= 1}
    points, rays, lines = dd.h_to_v(2, [((1, 0), 1), ((-1, 0), 0)], [((1, 1), 1)])
    assert sorted(points) == [(0, 1), (1, 0)]


def test_empty_polyhedron():
    assert dd.h_to_v(1, [((1,), 0), ((-1,), -1)]) == ([], [], [])
    assert dd.v_to_h(2, []) is None


def test_segment_in_higher_dimension():
    # regression: a segment inside a 3-D equality system keeps both ends
    ineqs = [((0, 0, 1), 2), ((0, 0, -1), 0)]
    eqs = [((1, 0, 0), 1), ((0, 1, 0), -1)]
    points, rays, lines = dd.h_to_v(3, ineqs, eqs)
    assert sorted(points) == [(1, -1, 0), (1, -1, 2)]
