"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SubordLabError(Exception):
    """Base class for all errors raised by subord_lab."""


class EvaluationError(SubordLabError):
    """A tree could not be evaluated at some point.

    ``point`` is the disk point (the caller's input, not an intermediate
    value) at which evaluation broke down.
    """

    def __init__(self, message: str, point: complex | None = None):
        if point is not None:
            message = f"{message} at z={point!r}"
        super().__init__(message)
        self.point = point


class DivisionByZero(EvaluationError, ZeroDivisionError):
    pass


class BranchCutHit(EvaluationError):
    pass


class ZeroBase(EvaluationError):
    pass


class RefinementLimit(SubordLabError):
    pass


class TooCloseToCurve(SubordLabError):
    pass


class AmbiguousWinding(SubordLabError):
    pass


class CenterMismatch(SubordLabError):
    pass


class BadParams(SubordLabError, ValueError):
    pass


class DegenerateDenominator(SubordLabError, ZeroDivisionError):
    pass


class UnsupportedQ(SubordLabError):
    pass


class NotNormalized(SubordLabError):
    pass


class PhiNotNormalized(NotNormalized):
    pass


class ParseError(SubordLabError, ValueError):
    pass
