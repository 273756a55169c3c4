"""Class membership, the transform P and its flat form, the auxiliary
functions R, Q, h, the hypothesis checks, and the dominant / subordinant /
sandwich harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .analytic import (
    AnalyticMap, Const, CUT_MARGIN, Pow, Z, branch_margin, differentiate, evaluate,
    integral_exponent,
)
from .errors import CenterMismatch, EvaluationError, RefinementLimit
from .geometry import (
    RHO_MAX, ConditionReport, Outcome, SampleGrid, SubordinationVerdict, boundary_curve,
    combine_verdicts, condition_report, min_real_part, test_subordination,
)
from .params import ParamSet

NONZERO_EPS = 1e-9
SOFT_MARGIN = 1e-3


def _check_center(p: AnalyticMap, name: str = "p") -> None:
    p0 = evaluate(p, 0.0)
    if abs(p0 - 1.0) > 1e-9:
        raise CenterMismatch(f"{name}(0) = {p0!r}, expected 1")


def class_membership(p: AnalyticMap, ps: ParamSet, grid: SampleGrid | None = None) -> ConditionReport:
    """Sampled check that P is well defined for p.

    min_value is the smallest slack among |p| - 1e-9, |beta p + gamma| - 1e-9
    and, for non-integral exponents, the branch margins of p and of the
    bracket minus the hard margin.
    """
    grid = grid or SampleGrid()
    _check_center(p)
    z = grid.points()
    pv = evaluate(p, z)
    dp = evaluate(differentiate(p), z)
    den = ps.beta * pv + ps.gamma
    den_slack = np.abs(den) - NONZERO_EPS
    slacks = [np.abs(pv) - NONZERO_EPS, den_slack]
    flags = []
    with np.errstate(all="ignore"):
        bracket = pv + ps.delta + z * dp / den
    for label, exponent, values in (("p", ps.alpha, pv), ("bracket", ps.mu, bracket)):
        if integral_exponent(exponent) is not None:
            continue
        margin = branch_margin(values)
        if label == "bracket":
            # where the bracket is undefined the denominator slack already fails
            margin = np.where(den_slack > 0, margin, den_slack + CUT_MARGIN)
        slacks.append(margin - CUT_MARGIN)
        low = float(np.min(margin))
        if low < SOFT_MARGIN:
            flags.append(f"branch margin of {label} is {low:.3g} (< {SOFT_MARGIN:g})")
    worst = np.minimum.reduce(slacks)
    report = condition_report("class-membership", worst, z)
    report.soft_flags = flags
    return report


def bracket(p: AnalyticMap, ps: ParamSet) -> AnalyticMap:
    """p + delta + z p' / (beta p + gamma)."""
    return p + Const(ps.delta) + Z * differentiate(p) / (Const(ps.beta) * p + Const(ps.gamma))


def transform_P(p: AnalyticMap, ps: ParamSet) -> AnalyticMap:
    """p^alpha (p + delta + z p'/(beta p + gamma))^mu with principal powers."""
    return Pow(p, ps.alpha) * Pow(bracket(p, ps), ps.mu)


def transform_flat(p: AnalyticMap, ps: ParamSet) -> AnalyticMap:
    """p^(r+1) + delta p^r + p^r z p'/(beta p + gamma), r = alpha/mu."""
    r = ps.ratio
    pr = Pow(p, r)
    return (Pow(p, r + 1) + Const(ps.delta) * pr
            + pr * (Z * differentiate(p) / (Const(ps.beta) * p + Const(ps.gamma))))


@dataclass(frozen=True)
class AuxiliaryTriple:
    R: AnalyticMap
    Q: AnalyticMap
    h: AnalyticMap
    theta_part: AnalyticMap


def build_auxiliaries(q: AnalyticMap, ps: ParamSet) -> AuxiliaryTriple:
    r = ps.ratio
    R = Z * differentiate(q) / (Const(ps.beta) * q + Const(ps.gamma))
    Q = Pow(q, r) * R
    theta = Pow(q, r + 1) + Const(ps.delta) * Pow(q, r)
    return AuxiliaryTriple(R, Q, theta + Q, theta)


def cond22_expr(q: AnalyticMap, ps: ParamSet) -> AnalyticMap:
    """(beta q + gamma)(1 + alpha/mu + alpha delta / (mu q))."""
    return ((Const(ps.beta) * q + Const(ps.gamma))
            * (Const(1 + ps.ratio) + Const(ps.alpha * ps.delta / ps.mu) / q))


def cond23_expr(q: AnalyticMap, ps: ParamSet) -> AnalyticMap:
    """(alpha/mu) z q'/q + z R'/R."""
    R = build_auxiliaries(q, ps).R
    return Const(ps.ratio) * Z * differentiate(q) / q + Z * differentiate(R) / R


def starlike_expr(Q: AnalyticMap) -> AnalyticMap:
    return Z * differentiate(Q) / Q


def check_hypotheses(q: AnalyticMap, ps: ParamSet, grid: SampleGrid | None = None) -> list[ConditionReport]:
    """cond-2.2, cond-2.3 and Q-starlike, each as a strict real-part check.

    z R'/R has a removable singularity at 0, so the last two are sampled on
    the grid plus circles at radii[0]/8, /4, /2 and never at the centre.
    """
    grid = grid or SampleGrid()
    _check_center(q, "q")
    ladder = grid.with_inner_ladder(3)
    return [
        min_real_part(cond22_expr(q, ps), grid, "cond-2.2"),
        min_real_part(cond23_expr(q, ps), ladder, "cond-2.3"),
        min_real_part(starlike_expr(build_auxiliaries(q, ps).Q), ladder, "Q-starlike"),
    ]


@dataclass
class TheoremVerdict:
    kind: str
    premise: SubordinationVerdict
    hypotheses: list[ConditionReport]
    conclusion: SubordinationVerdict
    consistent: bool = True
    assumptions: list[str] = field(default_factory=list)
    grid: SampleGrid | None = None
    params: ParamSet | None = None

    def __post_init__(self):
        self.consistent = not (
            self.premise.holds and self.hypotheses_pass and self.conclusion.fails)

    @property
    def hypotheses_pass(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    @property
    def inconclusive(self) -> bool:
        return Outcome.INCONCLUSIVE in (self.premise.outcome, self.conclusion.outcome)

    def to_dict(self) -> dict:
        def pair(v):
            return None if v is None else [v.real, v.imag]
        return {
            "kind": self.kind,
            "premise": self.premise.to_dict(),
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": self.conclusion.to_dict(),
            "consistent": self.consistent,
            "witnesses": {
                "premise": {"z": pair(self.premise.witness_z), "w": pair(self.premise.witness_w)},
                "conclusion": {"z": pair(self.conclusion.witness_z),
                               "w": pair(self.conclusion.witness_w)},
            },
            "assumptions": list(self.assumptions),
            "grid": self.grid.to_dict() if self.grid else None,
            "params": self.params.to_dict() if self.params else None,
        }


def _subordination(f: AnalyticMap, g: AnalyticMap, grid: SampleGrid) -> SubordinationVerdict:
    try:
        return test_subordination(f, g, grid)
    except EvaluationError as exc:
        return SubordinationVerdict(Outcome.INCONCLUSIVE, exc.point, None, f"evaluation failed: {exc}")


def _tagged(reports: list[ConditionReport], tag: str) -> list[ConditionReport]:
    for r in reports:
        r.name = f"{r.name} [{tag}]"
    return reports


def _flat_univalent(p: AnalyticMap, ps: ParamSet, grid: SampleGrid) -> bool:
    flat = transform_flat(p, ps)
    for rho in (grid.radii[-1], RHO_MAX):
        try:
            c = boundary_curve(flat, rho, grid.angular_count)
        except (RefinementLimit, EvaluationError):
            return False
        if c.orientation < 0 or not c.is_simple():
            return False
    return True


_Q_ASSUMED = "p in class Q (injective on the closed disk) is assumed, not checked"
_UNIVALENT_PROXY = "univalence of outer functions is proxied by boundary self-intersection scans"


def verify_dominant(p: AnalyticMap, q: AnalyticMap, ps: ParamSet,
                    grid: SampleGrid | None = None) -> TheoremVerdict:
    """Premise P(p) ≺ P(q); conclusion p ≺ q."""
    grid = grid or SampleGrid()
    hyps = (_tagged([class_membership(q, ps, grid)], "q") + _tagged([class_membership(p, ps, grid)], "p")
            + _tagged(check_hypotheses(q, ps, grid), "q"))
    premise = _subordination(transform_P(p, ps), transform_P(q, ps), grid)
    conclusion = _subordination(p, q, grid)
    return TheoremVerdict("dominant", premise, hyps, conclusion,
                          assumptions=[_UNIVALENT_PROXY], grid=grid, params=ps)


def verify_subordinant(p: AnalyticMap, q: AnalyticMap, ps: ParamSet,
                       grid: SampleGrid | None = None) -> TheoremVerdict:
    """Premise P(q) ≺ P(p); conclusion q ≺ p.  Here p is the outer function."""
    grid = grid or SampleGrid()
    hyps = (_tagged([class_membership(q, ps, grid)], "q") + _tagged([class_membership(p, ps, grid)], "p")
            + _tagged(check_hypotheses(q, ps, grid), "q"))
    premise = _subordination(transform_P(q, ps), transform_P(p, ps), grid)
    if not _flat_univalent(p, ps, grid):
        premise = SubordinationVerdict(
            Outcome.INCONCLUSIVE, detail="flat form of p fails the univalence proxy")
    conclusion = _subordination(q, p, grid)
    return TheoremVerdict("subordinant", premise, hyps, conclusion,
                          assumptions=[_UNIVALENT_PROXY, _Q_ASSUMED], grid=grid, params=ps)


def verify_sandwich(p: AnalyticMap, q1: AnalyticMap, q2: AnalyticMap, ps: ParamSet,
                    grid: SampleGrid | None = None) -> TheoremVerdict:
    """Premise P(q1) ≺ P(p) ≺ P(q2); conclusion q1 ≺ p ≺ q2."""
    grid = grid or SampleGrid()
    hyps = (_tagged([class_membership(q1, ps, grid)], "q1")
            + _tagged([class_membership(q2, ps, grid)], "q2")
            + _tagged([class_membership(p, ps, grid)], "p")
            + _tagged(check_hypotheses(q1, ps, grid), "q1")
            + _tagged(check_hypotheses(q2, ps, grid), "q2"))
    Pp = transform_P(p, ps)
    premise = combine_verdicts(
        [_subordination(transform_P(q1, ps), Pp, grid), _subordination(Pp, transform_P(q2, ps), grid)],
        ["h1 ≺ P(p)", "P(p) ≺ h2"])
    if not _flat_univalent(p, ps, grid):
        premise = SubordinationVerdict(
            Outcome.INCONCLUSIVE, detail="flat form of p fails the univalence proxy")
    conclusion = combine_verdicts(
        [_subordination(q1, p, grid), _subordination(p, q2, grid)], ["q1 ≺ p", "p ≺ q2"])
    return TheoremVerdict("sandwich", premise, hyps, conclusion,
                          assumptions=[_UNIVALENT_PROXY, _Q_ASSUMED], grid=grid, params=ps)
