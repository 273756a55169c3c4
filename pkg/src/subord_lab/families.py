"""Built-in function families and test-instance generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticMap, Const, Exp, Pow, Z, evaluate
from .errors import BadParams, DegenerateDenominator, UnsupportedQ
from .params import ParamSet


@dataclass(frozen=True)
class JanowskiParams:
    A: float
    B: float

    def __post_init__(self):
        # B = -1 (the half-plane map) is admitted as the closed endpoint
        if not -1.0 <= self.B < self.A <= 1.0:
            raise BadParams(f"need -1 <= B < A <= 1, got A={self.A}, B={self.B}")


def janowski(A: float, B: float) -> AnalyticMap:
    """(1 + A z) / (1 + B z)."""
    jp = JanowskiParams(float(A), float(B))
    return (1 + jp.A * Z) / (1 + jp.B * Z)


def koebe() -> AnalyticMap:
    return Z * Pow(1 - Z, -2)


def example21_membership(jp: JanowskiParams, ps: ParamSet) -> tuple[bool, bool]:
    """The two closed-form sufficient conditions for Janowski q.

    First:  delta + (1-A)/(1-B) > (A-B) / ((1-B) * | |beta+gamma| - |beta A + gamma B| |)
    Second: (1-2A)/(1-A) > |beta A + gamma B| / (|beta+gamma| - |beta A + gamma B|)

    delta enters through its real part.
    """
    A, B = jp.A, jp.B
    top = abs(ps.beta + ps.gamma)
    bottom = abs(ps.beta * A + ps.gamma * B)
    gap = top - bottom
    if abs(gap) <= 1e-12:
        raise DegenerateDenominator("|beta+gamma| equals |beta A + gamma B|")
    first = ps.delta.real + (1 - A) / (1 - B) > (A - B) / ((1 - B) * abs(gap))
    if A == 1.0:
        raise DegenerateDenominator("1 - A vanishes")
    second = (1 - 2 * A) / (1 - A) > bottom / gap
    return bool(first), bool(second)


def g_from_q(q: AnalyticMap, jp: JanowskiParams) -> AnalyticMap:
    """g with z g'/g = q for Janowski q: z (1+Bz)^((A-B)/B), or z e^(Az) when B = 0."""
    probe = np.array([0.0, 0.3, -0.45j, 0.2 + 0.5j, -0.7])
    expected = (1 + jp.A * probe) / (1 + jp.B * probe)
    try:
        got = evaluate(q, probe)
    except Exception as exc:
        raise UnsupportedQ(f"q cannot be evaluated: {exc}") from exc
    if np.max(np.abs(got - expected)) > 1e-12 * (1 + np.max(np.abs(expected))):
        raise UnsupportedQ("q is not the Janowski function for these parameters")
    if jp.B == 0.0:
        return Z * Exp(jp.A * Z)
    return Z * Pow(1 + jp.B * Z, (jp.A - jp.B) / jp.B)


@dataclass(frozen=True)
class SchwarzSpec:
    seed: int
    degree: int = 1
    contraction: float = 0.5

    def __post_init__(self):
        if self.degree < 1:
            raise BadParams("degree must be at least 1")
        if not 0.0 < self.contraction < 1.0:
            raise BadParams("contraction must lie in (0, 1)")


def schwarz_from_coefficients(coeffs, contraction: float) -> AnalyticMap:
    """contraction * z * P(z) / sup_{|z|=1} |P|, with P given by its
    coefficients in increasing degree."""
    coeffs = [complex(c) for c in coeffs]
    t = np.exp(2j * np.pi * np.arange(8192) / 8192)
    norm = float(np.max(np.abs(np.polyval(coeffs[::-1], t))))
    if norm == 0.0:
        raise BadParams("zero polynomial")
    poly: AnalyticMap = Const(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        poly = Const(c) + Z * poly
    if len(coeffs) == 1:
        return Const(contraction * coeffs[0] / norm) * Z
    return Const(contraction / norm) * (Z * poly)


def random_schwarz(spec: SchwarzSpec) -> AnalyticMap:
    rng = np.random.default_rng(spec.seed)
    coeffs = rng.normal(size=spec.degree) + 1j * rng.normal(size=spec.degree)
    return schwarz_from_coefficients(coeffs, spec.contraction)


def family(name: str, **params) -> AnalyticMap:
    """Look up a built-in family by CLI name."""
    name = name.lower()
    if name == "janowski":
        return janowski(float(params["A"]), float(params["B"]))
    if name in ("halfplane", "cayley"):
        return janowski(1.0, -1.0)
    if name == "koebe":
        return koebe()
    if name in ("identity", "z"):
        return Z
    if name in ("janowski-g", "g"):
        jp = JanowskiParams(float(params["A"]), float(params["B"]))
        return g_from_q(janowski(jp.A, jp.B), jp)
    raise KeyError(f"unknown family {name!r}")


FAMILIES = ("janowski", "halfplane", "koebe", "identity", "janowski-g")
