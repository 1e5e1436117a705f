"""Scripted reproduction of the three counterexamples.

Each script returns a list of :class:`Check` records. A script passes only
when every pinned identity matches exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import examples as ex
from .functions import eps_directional_derivative, eps_subdifferential, evaluate, support_function
from .monotropic import TSetQuery, build_T, duality_report
from .rational import fmt, fmt_vec
from .sets import HPolyhedron, canonical, region_is_closed, set_equal
from .verify import bertsekas_prop31_check

EQ1_CASES = ((3, Fraction(1)), (4, Fraction(2)), (5, Fraction(1, 2)))
EX22_EPS = (Fraction(1, 2), Fraction(1), Fraction(2))
EX23_EPS = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(100))


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    actual: str
    ok: bool


def _check(name, expected, actual, ok=None) -> Check:
    expected, actual = str(expected), str(actual)
    return Check(name, expected, actual, expected == actual if ok is None else bool(ok))


def point_text(v) -> str:
    return "(" + ", ".join(fmt_vec(v)) + ")"


def _eq1_box(a, eps) -> HPolyhedron:
    return HPolyhedron.box([(None, 0), (1 - Fraction(eps) / a, 1)])


def example_21() -> list[Check]:
    f1 = ex.example_21_f1()
    out = [
        _check("f1(0,3)", "3", evaluate(f1, (0, 3))),
        _check("f1(0,2)", "+inf", evaluate(f1, (0, 2))),
        _check("f1(1,1)", "1", evaluate(f1, (1, 1))),
    ]
    pairs = sorted(set(EQ1_CASES) | {(a, e) for a in ex.EX21_SAMPLE_A for e in ex.EX21_SAMPLE_EPS})
    I = ex.example_21()
    for a, e in pairs:
        want = _eq1_box(a, e)
        got = canonical(eps_subdifferential(f1, (0, a), e).set)
        out.append(_check(f"subdiff f1 at (0,{a}) eps={fmt(e)}", want.describe(), got.describe(), set_equal(got, want)))
    for a, e in EQ1_CASES:
        T = build_T(I, TSetQuery((0, a, 0), e))
        want = HPolyhedron.box([(None, None), (1 - e / a, 1), (None, None)])
        out.append(_check(f"T at (0,{a},0) eps={fmt(e)}", want.describe(), T.describe(), set_equal(T, want)))
        out.append(_check(f"T closed at (0,{a},0) eps={fmt(e)}", "True", region_is_closed(T)))
    rep = duality_report(I)
    out.append(_check("v(P)", "3", rep.primal_value))
    out.append(_check("v(D)", "0", rep.dual_value))
    out.append(_check("gap", "3", rep.gap))
    out.append(_check("bertsekas closedness", "True", rep.bertsekas_closedness_ok))
    out.append(_check("thm 3.4 regularity", "False", rep.thm34_regularity_ok))
    w = rep.regularity_witness
    in_segment = w is not None and w[0] == 0 and w[2] == 0 and 0 <= w[1] < 3
    out.append(_check("regularity witness", "in {0} x [0, 3) x {0}", point_text(w) if w else "none", in_segment))
    return out


def example_22() -> list[Check]:
    dK = ex.example_22_indicator()
    u = (1, 0)
    out = []
    for e in EX22_EPS:
        sigma = support_function(eps_subdifferential(dK, (0, 0), e).set, u)
        deriv = eps_directional_derivative(dK, (0, 0), u, e)
        out.append(_check(f"support of subdiff at u=(1,0) eps={fmt(e)}", "0", sigma))
        out.append(_check(f"eps-directional derivative at u=(1,0) eps={fmt(e)}", "+inf", deriv))
    return out


def example_23() -> list[Check]:
    fs = ex.example_23_functions()
    out = []
    for e in EX23_EPS:
        v = bertsekas_prop31_check(fs, (0, 0), e)
        out.append(_check(f"LHS eps={fmt(e)}", "R x R", v.lhs.describe()))
        out.append(_check(f"RHS eps={fmt(e)}", "R_- x R", v.rhs.describe()))
        out.append(_check(f"inclusion eps={fmt(e)}", "fails", "holds" if v.included else "fails"))
        cex = point_text(v.counterexample_point) if v.counterexample_point is not None else "none"
        out.append(_check(f"counterexample eps={fmt(e)}", "(1, 0)", cex))
    return out


SCRIPTS = {
    "example-2.1": example_21,
    "example-2.2": example_22,
    "example-2.3": example_23,
}
