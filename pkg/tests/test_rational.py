from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyconvex.rational import MINUS_INF, PLUS_INF, ExtRational, fmt, integer_scaled, q

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
ext = st.one_of(fractions.map(ExtRational.of), st.sampled_from([PLUS_INF, MINUS_INF]))


def test_coercion():
    assert q("3/4") == Fraction(3, 4)
    assert q(" -2 ") == -2
    with pytest.raises(TypeError):
        q(0.5)
    with pytest.raises(TypeError):
        q(True)


def test_fmt():
    assert fmt(Fraction(6, 2)) == "3"
    assert fmt(Fraction(-2, 3)) == "-2/3"
    assert fmt(PLUS_INF) == "+inf"


def test_infinities():
    assert MINUS_INF < ExtRational.of(-10**9) < PLUS_INF
    assert PLUS_INF + 5 == PLUS_INF
    assert -PLUS_INF == MINUS_INF
    with pytest.raises(ArithmeticError):
        PLUS_INF + MINUS_INF
    assert ExtRational.parse("-inf") == MINUS_INF
    assert ExtRational.parse("7/2") == Fraction(7, 2)


@given(ext, ext)
def test_total_order_is_antisymmetric(a, b):
    assert (a < b) + (a == b) + (a > b) == 1


@given(fractions, fractions)
def test_finite_arithmetic_matches_fraction(a, b):
    assert (ExtRational.of(a) + ExtRational.of(b)).value == a + b
    assert (ExtRational.of(a) - b).value == a - b


@given(st.lists(fractions, min_size=1, max_size=5))
def test_integer_scaling_is_positive_and_primitive(v):
    ints = integer_scaled(v)
    nz = [(a, b) for a, b in zip(v, ints) if a]
    if nz:
        a0, b0 = nz[0]
        ratio = Fraction(b0) / a0
        assert ratio > 0
        assert all(Fraction(b) == a * ratio for a, b in zip(v, ints))
