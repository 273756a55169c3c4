"""Immutable expression trees for holomorphic maps on the unit disk.

Trees are evaluated with numpy (scalar or array input) and differentiated
symbolically.  Powers and logarithms use the principal branch, with the cut
along the non-positive real axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import BranchCutHit, DivisionByZero, ZeroBase

CUT_MARGIN = 1e-12
DIV_EPS = 1e-300
INT_TOL = 1e-12

Number = Union[int, float, complex]


def branch_margin(w):
    """Euclidean distance from ``w`` to the ray (-inf, 0]."""
    w = np.asarray(w, dtype=complex)
    d = np.where(w.real >= 0.0, np.abs(w), np.abs(w.imag))
    return float(d) if d.ndim == 0 else d


def integral_exponent(c: Number) -> int | None:
    """Return ``round(c)`` when ``c`` is a real integer up to INT_TOL."""
    c = complex(c)
    if c.imag != 0.0:
        return None
    n = round(c.real)
    if abs(c.real - n) < INT_TOL:
        return int(n)
    return None


def principal_arg(w):
    # np.angle gives -pi for negative reals carrying a -0.0 imaginary part
    a = np.angle(w)
    return np.where(a == -np.pi, np.pi, a)


def principal_log(w):
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(np.abs(w)) + 1j * principal_arg(w)


def _int_power(w, n: int):
    if n < 0:
        w = 1.0 / w
        n = -n
    result = np.ones_like(w)
    base = w
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def pow_principal(w, c: Number, cut_margin: float | None = None):
    """Principal power ``exp(c * (ln|w| + i Arg w))`` with Arg in (-pi, pi].

    Integer exponents are computed by repeated multiplication and are
    defined on the cut.  For other exponents a zero base raises ZeroBase,
    and when ``cut_margin`` is given a base closer than that to the cut
    raises BranchCutHit.
    """
    arr = np.asarray(w, dtype=complex)
    n = integral_exponent(c)
    if n is not None:
        if n < 0 and np.any(np.abs(arr) < DIV_EPS):
            raise DivisionByZero("negative integer power of zero")
        out = _int_power(arr, n)
    else:
        if np.any(arr == 0):
            raise ZeroBase(f"non-integer power {complex(c)!r} of zero")
        if cut_margin is not None and np.any(branch_margin(arr) < cut_margin):
            raise BranchCutHit(f"power {complex(c)!r} of a base on the branch cut")
        out = np.exp(complex(c) * principal_log(arr))
    return complex(out) if out.ndim == 0 else out


def _fmt(c: complex) -> str:
    if c.imag == 0.0:
        return repr(c.real)
    if c.real == 0.0 and repr(c)[0] != "(":
        return repr(c)
    # complex() parses the parenthesised repr back exactly
    return repr(c).replace(" ", "")


class AnalyticMap:
    """Base class of all tree nodes.

    Nodes are frozen dataclasses, so trees can be shared freely.  Arithmetic
    operators build new trees; calling a tree evaluates it.
    """

    __slots__ = ()

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self) -> AnalyticMap:
        return differentiate(self)

    def _ev(self, z, memo, zsrc):
        raise NotImplementedError

    @staticmethod
    def _coerce(v) -> AnalyticMap:
        if isinstance(v, AnalyticMap):
            return v
        return Const(complex(v))

    def __add__(self, other):
        return Add(self, self._coerce(other))

    def __radd__(self, other):
        return Add(self._coerce(other), self)

    def __sub__(self, other):
        return Sub(self, self._coerce(other))

    def __rsub__(self, other):
        return Sub(self._coerce(other), self)

    def __mul__(self, other):
        return Mul(self, self._coerce(other))

    def __rmul__(self, other):
        return Mul(self._coerce(other), self)

    def __truediv__(self, other):
        return Div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return Div(self._coerce(other), self)

    def __neg__(self):
        return Mul(Const(-1.0 + 0j), self)

    def __pow__(self, exponent):
        if isinstance(exponent, AnalyticMap):
            if not isinstance(exponent, Const):
                raise TypeError("exponent must be a constant")
            exponent = exponent.value
        return Pow(self, complex(exponent))


@dataclass(frozen=True)
class Const(AnalyticMap):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))

    def _ev(self, z, memo, zsrc):
        return np.full(z.shape, self.value, dtype=complex)

    def __str__(self):
        return _fmt(self.value)


@dataclass(frozen=True)
class Identity(AnalyticMap):
    def _ev(self, z, memo, zsrc):
        return z

    def __str__(self):
        return "z"


Z = Identity()


def _first_bad(mask, zsrc):
    idx = int(np.flatnonzero(np.asarray(mask).ravel())[0])
    return complex(zsrc.ravel()[idx])


@dataclass(frozen=True)
class Add(AnalyticMap):
    left: AnalyticMap
    right: AnalyticMap

    def _ev(self, z, memo, zsrc):
        return _eval(self.left, z, memo, zsrc) + _eval(self.right, z, memo, zsrc)

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Sub(AnalyticMap):
    left: AnalyticMap
    right: AnalyticMap

    def _ev(self, z, memo, zsrc):
        return _eval(self.left, z, memo, zsrc) - _eval(self.right, z, memo, zsrc)

    def __str__(self):
        return f"({self.left} - {self.right})"


@dataclass(frozen=True)
class Mul(AnalyticMap):
    left: AnalyticMap
    right: AnalyticMap

    def _ev(self, z, memo, zsrc):
        return _eval(self.left, z, memo, zsrc) * _eval(self.right, z, memo, zsrc)

    def __str__(self):
        return f"{self.left}*{self.right}"


@dataclass(frozen=True)
class Div(AnalyticMap):
    left: AnalyticMap
    right: AnalyticMap

    def _ev(self, z, memo, zsrc):
        num = _eval(self.left, z, memo, zsrc)
        den = _eval(self.right, z, memo, zsrc)
        bad = np.abs(den) < DIV_EPS
        if np.any(bad):
            raise DivisionByZero("quotient denominator vanishes", _first_bad(bad, zsrc))
        return num / den

    def __str__(self):
        return f"{self.left}/({self.right})"


@dataclass(frozen=True)
class Pow(AnalyticMap):
    base: AnalyticMap
    exponent: complex

    def __post_init__(self):
        object.__setattr__(self, "exponent", complex(self.exponent))

    def _ev(self, z, memo, zsrc):
        b = _eval(self.base, z, memo, zsrc)
        n = integral_exponent(self.exponent)
        if n is None:
            zero = b == 0
            if np.any(zero):
                raise ZeroBase("non-integer power of zero", _first_bad(zero, zsrc))
            cut = branch_margin(b) < CUT_MARGIN
            if np.any(cut):
                raise BranchCutHit("principal power base on the cut", _first_bad(cut, zsrc))
        elif n < 0:
            bad = np.abs(b) < DIV_EPS
            if np.any(bad):
                raise DivisionByZero("negative power of zero", _first_bad(bad, zsrc))
        return np.asarray(pow_principal(b, self.exponent), dtype=complex)

    def __str__(self):
        return f"({self.base})^{_fmt(self.exponent)}"


@dataclass(frozen=True)
class Log(AnalyticMap):
    arg: AnalyticMap

    def _ev(self, z, memo, zsrc):
        b = _eval(self.arg, z, memo, zsrc)
        cut = branch_margin(b) < CUT_MARGIN
        if np.any(cut):
            raise BranchCutHit("principal log argument on the cut", _first_bad(cut, zsrc))
        return principal_log(b)

    def __str__(self):
        return f"log({self.arg})"


@dataclass(frozen=True)
class Exp(AnalyticMap):
    arg: AnalyticMap

    def _ev(self, z, memo, zsrc):
        return np.exp(_eval(self.arg, z, memo, zsrc))

    def __str__(self):
        return f"exp({self.arg})"


@dataclass(frozen=True)
class Compose(AnalyticMap):
    """``outer(inner(z))``; the outer tree's variable ranges over image space."""

    outer: AnalyticMap
    inner: AnalyticMap

    def _ev(self, z, memo, zsrc):
        w = _eval(self.inner, z, memo, zsrc)
        return _eval(self.outer, w, {}, zsrc)

    def __str__(self):
        return f"[{self.outer}]∘[{self.inner}]"


def _eval(node: AnalyticMap, z, memo, zsrc):
    key = id(node)
    hit = memo.get(key)
    if hit is not None:
        return hit
    val = node._ev(z, memo, zsrc)
    memo[key] = val
    return val


def evaluate(m: AnalyticMap, z):
    """Evaluate ``m`` at a scalar or an array of points.

    Scalars come back as Python complex, arrays as complex ndarrays of the
    same shape.
    """
    arr = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        out = _eval(m, arr, {}, arr)
    if arr.ndim == 0:
        return complex(out)
    return out


def compose(outer: AnalyticMap, inner: AnalyticMap) -> AnalyticMap:
    return Compose(outer, inner)


def differentiate(m: AnalyticMap) -> AnalyticMap:
    """Exact derivative tree of ``m`` (no simplification)."""
    return _diff(m, {})


def _diff(m: AnalyticMap, memo: dict) -> AnalyticMap:
    key = id(m)
    if key in memo:
        return memo[key][1]
    d = _diff_node(m, memo)
    # keep m alive so its id is not recycled during this pass
    memo[key] = (m, d)
    return d


def _diff_node(m: AnalyticMap, memo: dict) -> AnalyticMap:
    if isinstance(m, Const):
        return Const(0)
    if isinstance(m, Identity):
        return Const(1)
    if isinstance(m, Add):
        return Add(_diff(m.left, memo), _diff(m.right, memo))
    if isinstance(m, Sub):
        return Sub(_diff(m.left, memo), _diff(m.right, memo))
    if isinstance(m, Mul):
        return Add(Mul(_diff(m.left, memo), m.right), Mul(m.left, _diff(m.right, memo)))
    if isinstance(m, Div):
        num = Sub(Mul(_diff(m.left, memo), m.right), Mul(m.left, _diff(m.right, memo)))
        return Div(num, Mul(m.right, m.right))
    if isinstance(m, Pow):
        if m.exponent == 0:
            return Const(0)
        return Mul(Mul(Const(m.exponent), Pow(m.base, m.exponent - 1)), _diff(m.base, memo))
    if isinstance(m, Log):
        return Div(_diff(m.arg, memo), m.arg)
    if isinstance(m, Exp):
        return Mul(m, _diff(m.arg, memo))
    if isinstance(m, Compose):
        # the outer derivative lives in image space: differentiate it separately
        outer_d = differentiate(m.outer)
        return Mul(Compose(outer_d, m.inner), _diff(m.inner, memo))
    raise TypeError(f"unknown node {type(m).__name__}")


def divide_by_z(m: AnalyticMap) -> AnalyticMap | None:
    """Return ``u`` with ``m == z * u`` identically, or None if the tree
    does not expose the factor structurally."""
    if isinstance(m, Identity):
        return Const(1)
    if isinstance(m, Const):
        return Const(0) if m.value == 0 else None
    if isinstance(m, (Add, Sub)):
        a, b = divide_by_z(m.left), divide_by_z(m.right)
        if a is None or b is None:
            return None
        return type(m)(a, b)
    if isinstance(m, Mul):
        a = divide_by_z(m.left)
        if a is not None:
            return Mul(a, m.right)
        b = divide_by_z(m.right)
        return None if b is None else Mul(m.left, b)
    if isinstance(m, Div):
        a = divide_by_z(m.left)
        return None if a is None else Div(a, m.right)
    if isinstance(m, Pow):
        n = integral_exponent(m.exponent)
        if n is None or n < 1:
            return None
        u = divide_by_z(m.base)
        if u is None:
            return None
        return u if n == 1 else Mul(Pow(m.base, n - 1), u)
    if isinstance(m, Compose):
        uo, ui = divide_by_z(m.outer), divide_by_z(m.inner)
        if uo is None or ui is None:
            return None
        return Mul(Compose(uo, m.inner), ui)
    return None


def tree_size(m: AnalyticMap) -> int:
    seen: set[int] = set()
    stack = [m]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        for child in _children(node):
            stack.append(child)
    return len(seen)


def _children(m: AnalyticMap):
    if isinstance(m, (Add, Sub, Mul, Div)):
        return (m.left, m.right)
    if isinstance(m, Pow):
        return (m.base,)
    if isinstance(m, (Log, Exp)):
        return (m.arg,)
    if isinstance(m, Compose):
        return (m.outer, m.inner)
    return ()
