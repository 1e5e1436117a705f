"""The three counterexamples as compiled-in data."""

from __future__ import annotations

from fractions import Fraction

from .functions import PolyhedralFunction
from .linalg import Subspace
from .monotropic import MonotropicInstance
from .sets import Cell, ConvexRegion, HPolyhedron, eq, ge, gt


def region_C() -> ConvexRegion:
    """``{0} x [3, inf)`` together with the open positive quadrant."""
    return ConvexRegion.from_cells(
        Cell(2, (eq((1, 0), 0), ge((0, 1), 3))),
        Cell(2, (gt((1, 0), 0), gt((0, 1), 0))),
    ).checked()


def cone_K() -> ConvexRegion:
    """The open positive quadrant plus the origin: a cone that is not closed."""
    return ConvexRegion.from_cells(
        Cell(2, (gt((1, 0), 0), gt((0, 1), 0))),
        Cell(2, (eq((1, 0), 0), eq((0, 1), 0))),
    ).checked()


def example_21_f1() -> PolyhedralFunction:
    """``(u, v) -> v`` on ``C``."""
    return PolyhedralFunction.on(region_C(), [((0, 1), 0)])


def example_21_f2() -> PolyhedralFunction:
    """Indicator of the nonpositive half-line."""
    return PolyhedralFunction.indicator(HPolyhedron.box([(None, 0)]))


def example_21_subspace() -> Subspace:
    """``{(u, v, w) : u = w}``."""
    return Subspace.span(3, [(1, 0, 1), (0, 1, 0)])


def example_21() -> MonotropicInstance:
    return MonotropicInstance((example_21_f1(), example_21_f2()), example_21_subspace())


def example_22_indicator() -> PolyhedralFunction:
    return PolyhedralFunction.indicator(cone_K())


def horizontal_axis() -> HPolyhedron:
    return HPolyhedron(2, (eq((0, 1), 0),))


def example_23_functions() -> list[PolyhedralFunction]:
    return [PolyhedralFunction.indicator(cone_K()), PolyhedralFunction.indicator(horizontal_axis())]


def example_23_instance() -> MonotropicInstance:
    """Indicator of K on R^2 coupled with ``S = R x {0}``."""
    return MonotropicInstance((example_22_indicator(),), Subspace.span(2, [(1, 0)]))


def example_22_instance() -> MonotropicInstance:
    """Indicator of K as a single block over the whole plane."""
    return MonotropicInstance((example_22_indicator(),), Subspace.full(2))


def abs_value() -> PolyhedralFunction:
    return PolyhedralFunction.on(HPolyhedron.universe(1), [((1,), 0), ((-1,), 0)])


def abs_instance() -> MonotropicInstance:
    return MonotropicInstance((abs_value(),), Subspace.full(1))


BUILTIN = {
    "example-2.1": example_21,
    "example-2.2": example_22_instance,
    "example-2.3": example_23_instance,
    "abs": abs_instance,
}

EX21_SAMPLE_A = (3, 4, 5)
EX21_SAMPLE_EPS = (Fraction(1, 2), Fraction(1), Fraction(2))
