"""Exact rational convex analysis for polyhedral functions on partially-open domains."""

from .functions import (
    AffinePiece,
    PolyhedralFunction,
    add,
    conjugate,
    eps_directional_derivative,
    eps_subdifferential,
    evaluate,
    functions_equal,
    inf_convolution_value,
    lsc_hull,
    separable_sum,
    support_function,
)
from .linalg import Subspace, orthogonal_complement
from .monotropic import (
    DualityReport,
    MonotropicInstance,
    TSetQuery,
    build_T,
    check_bertsekas_closedness,
    check_thm34_regularity,
    duality_report,
    solve_dual,
    solve_primal,
)
from .rational import MINUS_INF, PLUS_INF, ExtRational, q
from .sets import (
    Cell,
    ConvexRegion,
    HPolyhedron,
    LinearConstraint,
    closure,
    includes,
    is_empty,
    minkowski_sum,
    project,
    region_is_closed,
    set_equal,
)
from .verify import (
    FormulaVerdict,
    GridOracleConfig,
    bertsekas_prop31_check,
    check_cl_sum_condition,
    grid_subdiff_oracle,
    hup_formula_check,
    inf_conv_subdiff_check,
    random_instance,
)

__version__ = "0.1.0"

__all__ = [
    "AffinePiece",
    "PolyhedralFunction",
    "add",
    "conjugate",
    "eps_directional_derivative",
    "eps_subdifferential",
    "evaluate",
    "functions_equal",
    "inf_convolution_value",
    "lsc_hull",
    "separable_sum",
    "support_function",
    "Subspace",
    "orthogonal_complement",
    "DualityReport",
    "MonotropicInstance",
    "TSetQuery",
    "build_T",
    "check_bertsekas_closedness",
    "check_thm34_regularity",
    "duality_report",
    "solve_dual",
    "solve_primal",
    "MINUS_INF",
    "PLUS_INF",
    "ExtRational",
    "q",
    "Cell",
    "ConvexRegion",
    "HPolyhedron",
    "LinearConstraint",
    "closure",
    "includes",
    "is_empty",
    "minkowski_sum",
    "project",
    "region_is_closed",
    "set_equal",
    "FormulaVerdict",
    "GridOracleConfig",
    "bertsekas_prop31_check",
    "check_cl_sum_condition",
    "grid_subdiff_oracle",
    "hup_formula_check",
    "inf_conv_subdiff_check",
    "random_instance",
]
