"""Executable first-order differential subordination: expression trees,
disk-image geometry, hypothesis checks and falsification harnesses."""

from .analytic import (AnalyticMap, Compose, Const, Exp, Identity, Log, Pow, Z, compose,
                       differentiate, evaluate, pow_principal)
from .applications import (ApplicationExpr, corollary_expr, philike_expr, philike_identity_residual,
                           starlike_ratio, theorem31_expr)
from .families import JanowskiParams, SchwarzSpec, example21_membership, family, g_from_q, janowski
from .geometry import (ConditionReport, ImageCurve, Outcome, SampleGrid, SubordinationVerdict,
                       boundary_curve, test_subordination, winding_number)
from .params import ParamSet
from .serialize import from_prefix, parse_infix, to_prefix
from .theorem import (TheoremVerdict, build_auxiliaries, check_hypotheses, class_membership,
                      transform_flat, transform_P, verify_dominant, verify_sandwich,
                      verify_subordinant)

__version__ = "0.1.0"

__all__ = [
    "AnalyticMap", "Compose", "Const", "Exp", "Identity", "Log", "Pow", "Z", "compose",
    "differentiate", "evaluate", "pow_principal",
    "ApplicationExpr", "corollary_expr", "philike_expr", "philike_identity_residual",
    "starlike_ratio", "theorem31_expr",
    "JanowskiParams", "SchwarzSpec", "example21_membership", "family", "g_from_q", "janowski",
    "ConditionReport", "ImageCurve", "Outcome", "SampleGrid", "SubordinationVerdict",
    "boundary_curve", "test_subordination", "winding_number",
    "ParamSet", "from_prefix", "parse_infix", "to_prefix",
    "TheoremVerdict", "build_auxiliaries", "check_hypotheses", "class_membership",
    "transform_flat", "transform_P", "verify_dominant", "verify_sandwich", "verify_subordinant",
]
