"""Expressions built from normalized f: the starlike ratio z f'/f, the
alpha/lambda combination, the three corollary expressions, and the
Phi-like expression with its quadratic identity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticMap, Compose, Const, Pow, Z, differentiate, divide_by_z, evaluate
from .errors import BadParams, NotNormalized, PhiNotNormalized
from .geometry import ConditionReport, SampleGrid, min_real_part
from .params import ParamSet

KINDS = ("theorem31", "cor31", "cor32", "cor33", "philike")


@dataclass(frozen=True)
class ApplicationExpr:
    kind: str
    expr: AnalyticMap
    ratio: AnalyticMap


def _require_normalized(f: AnalyticMap, exc=NotNormalized, name: str = "f") -> None:
    v0 = evaluate(f, 0.0)
    d0 = evaluate(differentiate(f), 0.0)
    if abs(v0) > 1e-9 or abs(d0 - 1.0) > 1e-9:
        raise exc(f"{name}(0) = {v0!r}, {name}'(0) = {d0!r}; need 0 and 1")


def _over_z(m: AnalyticMap) -> AnalyticMap:
    """m / z, without a removable singularity at 0 when the tree allows."""
    u = divide_by_z(m)
    return u if u is not None else m / Z


def starlike_ratio(f: AnalyticMap) -> AnalyticMap:
    """z f'/f, written as f' / (f/z) so that it is regular at the origin."""
    _require_normalized(f)
    return differentiate(f) / _over_z(f)


def _convexity(f: AnalyticMap) -> AnalyticMap:
    """1 + z f''/f'."""
    df = differentiate(f)
    return 1 + Z * differentiate(df) / df


def theorem31_expr(f: AnalyticMap, ps: ParamSet) -> ApplicationExpr:
    """(z f'/f)^alpha ((1 - lambda) z f'/f + lambda (1 + z f''/f'))^mu."""
    if ps.lam is None:
        raise BadParams("lambda is required")
    p = starlike_ratio(f)
    inner = Const(1 - ps.lam) * p + Const(ps.lam) * _convexity(f)
    return ApplicationExpr("theorem31", Pow(p, ps.alpha) * Pow(inner, ps.mu), p)


def corollary_expr(f: AnalyticMap, selector: str, alpha: complex) -> ApplicationExpr:
    p = starlike_ratio(f)
    a = Const(alpha)
    if selector == "cor31":
        expr = Const(1 - complex(alpha)) * p + a * _convexity(f)
    elif selector == "cor32":
        expr = _convexity(f) / p
    elif selector == "cor33":
        df = differentiate(f)
        expr = p * (1 + a * Z * differentiate(df) / df)
    else:
        raise ValueError(f"unknown corollary {selector!r}")
    return ApplicationExpr(selector, expr, p)


def philike_expr(f: AnalyticMap, Phi: AnalyticMap, alpha: complex) -> ApplicationExpr:
    """z f'/Phi(f) * (1 + a z f''/f' + a z (f' - (Phi(f))')/Phi(f)), a = alpha."""
    _require_normalized(f)
    _require_normalized(Phi, PhiNotNormalized, "Phi")
    df = differentiate(f)
    phi_f = Compose(Phi, f)
    phi_f_over_z = _over_z(phi_f)
    p = df / phi_f_over_z
    a = Const(alpha)
    inner = (1 + a * Z * differentiate(df) / df
             + a * (df - differentiate(phi_f)) / phi_f_over_z)
    return ApplicationExpr("philike", p * inner, p)


def philike_quadratic(p: AnalyticMap, alpha: complex) -> AnalyticMap:
    """alpha p^2 + (1 - alpha) p + alpha z p'."""
    a = Const(alpha)
    return a * p * p + Const(1 - complex(alpha)) * p + a * Z * differentiate(p)


def philike_identity_residual(f: AnalyticMap, Phi: AnalyticMap, alpha: complex,
                              grid: SampleGrid | None = None) -> float:
    grid = grid or SampleGrid()
    app = philike_expr(f, Phi, alpha)
    z = grid.points()
    lhs = evaluate(app.expr, z)
    rhs = evaluate(philike_quadratic(app.ratio, alpha), z)
    return float(np.max(np.abs(lhs - rhs)))


def philike_hypothesis(q: AnalyticMap, alpha: complex, grid: SampleGrid | None = None) -> ConditionReport:
    """Re((1 - alpha)/alpha + 2 q) > 0."""
    alpha = complex(alpha)
    if alpha == 0:
        raise BadParams("alpha must be nonzero")
    return min_real_part(Const((1 - alpha) / alpha) + 2 * q, grid or SampleGrid(), "philike-hypothesis")
