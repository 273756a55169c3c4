"""Text forms of expression trees.

Prefix form (lossless, one node per whitespace-separated token)::

    tree    := "z" | NUMBER
             | "+" tree tree | "-" tree tree | "*" tree tree | "/" tree tree
             | "^" tree NUMBER          principal power, constant exponent
             | "log" tree | "exp" tree
             | "@" tree tree            composition: outer then inner
    NUMBER  := anything Python's complex() accepts without spaces,
               e.g. 2, -0.5, 1e-3, 0.5+2j, (1-1j)

The lone token "-" is always the subtraction operator.  Numbers are written
with repr() so floats round-trip exactly.

Infix form is for humans and the CLI: ``(1+z)/(1-z)``, ``1+1.9z``,
``z*exp(0.5z)``, ``(1+z)^0.5``.  It is parsed with the ast module and
accepts z, numeric literals (j for the imaginary unit), + - * / and
``^``/``**`` with a constant exponent, exp() and log().
"""

from __future__ import annotations

import ast
import re

from .analytic import (
    Add, AnalyticMap, Compose, Const, Div, Exp, Identity, Log, Mul, Pow, Sub, Z,
    _fmt,
)
from .errors import ParseError

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div, "@": Compose}
_SYMBOL = {Add: "+", Sub: "-", Mul: "*", Div: "/", Compose: "@"}


def to_prefix(m: AnalyticMap) -> str:
    out: list[str] = []
    stack: list[object] = [m]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            out.append(node)
        elif isinstance(node, Identity):
            out.append("z")
        elif isinstance(node, Const):
            out.append(_fmt(node.value).replace(" ", ""))
        elif isinstance(node, Pow):
            out.append("^")
            stack.append(_fmt(node.exponent))
            stack.append(node.base)
        elif isinstance(node, Log):
            out.append("log")
            stack.append(node.arg)
        elif isinstance(node, Exp):
            out.append("exp")
            stack.append(node.arg)
        elif isinstance(node, Compose):
            out.append("@")
            stack.append(node.inner)
            stack.append(node.outer)
        else:
            out.append(_SYMBOL[type(node)])
            stack.append(node.right)
            stack.append(node.left)
    return " ".join(out)


def _number(tok: str) -> complex:
    try:
        return complex(tok)
    except ValueError:
        raise ParseError(f"bad token {tok!r}") from None


def from_prefix(text: str) -> AnalyticMap:
    tokens = text.split()
    pos = 0

    def parse() -> AnalyticMap:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of prefix expression")
        tok = tokens[pos]
        pos += 1
        if tok == "z":
            return Z
        if tok in _BINARY:
            left = parse()
            right = parse()
            return _BINARY[tok](left, right)
        if tok == "^":
            base = parse()
            if pos >= len(tokens):
                raise ParseError("power without exponent")
            exponent = _number(tokens[pos])
            pos += 1
            return Pow(base, exponent)
        if tok == "log":
            return Log(parse())
        if tok == "exp":
            return Exp(parse())
        return Const(_number(tok))

    tree = parse()
    if pos != len(tokens):
        raise ParseError(f"trailing tokens: {' '.join(tokens[pos:])}")
    return tree


_IMPLICIT = re.compile(r"(?<=[0-9.jz)])\s*(?=[z(])|(?<=[0-9.)])\s*(?=exp|log)")


def parse_infix(text: str) -> AnalyticMap:
    src = text.replace("−", "-").replace("^", "**").replace("·", "*")
    # 1.9z -> 1.9*z ; 2(1+z) -> 2*(1+z) ; but leave 1e-3 and 2j alone
    src = _IMPLICIT.sub("*", src)
    try:
        node = ast.parse(src.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _from_ast(node, text)


def _from_ast(node, text: str) -> AnalyticMap:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return Const(node.value)
    if isinstance(node, ast.Name) and node.id == "z":
        return Z
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _from_ast(node.operand, text)
        if isinstance(node.op, ast.UAdd):
            return inner
        if isinstance(inner, Const):
            return Const(-inner.value)
        return Mul(Const(-1), inner)
    if isinstance(node, ast.BinOp):
        left = _from_ast(node.left, text)
        right = _from_ast(node.right, text)
        if isinstance(node.op, ast.Pow):
            if not isinstance(right, Const):
                raise ParseError(f"non-constant exponent in {text!r}")
            return Pow(left, right.value)
        ops = {ast.Add: Add, ast.Sub: Sub, ast.Mult: Mul, ast.Div: Div}
        cls = ops.get(type(node.op))
        if cls is None:
            raise ParseError(f"unsupported operator in {text!r}")
        if isinstance(left, Const) and isinstance(right, Const) and cls in (Add, Sub):
            # keep literals like 1+2j as one constant
            return Const(left.value + right.value if cls is Add else left.value - right.value)
        return cls(left, right)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1:
        fn = {"exp": Exp, "log": Log}.get(node.func.id)
        if fn is not None:
            return fn(_from_ast(node.args[0], text))
    raise ParseError(f"unsupported construct in {text!r}")
