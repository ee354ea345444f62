"""Scalar expressions in ``x1 ... xd``: parsing, printing, evaluation, derivatives.

Grammar (lowest to highest precedence)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' power)?          # exponent must be an integer literal
    atom   := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'

``-x1^2`` therefore reads as ``-(x1^2)``. A minus directly in front of a
number literal is folded into the literal, so ``-2`` parses to ``Const(-2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DimensionExceeded, DomainError, ExprSyntaxError, UnknownIdentifier

__all__ = [
    "Const",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "Expr",
    "FUNCTIONS",
    "parse",
    "to_string",
    "evaluate",
    "differentiate",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "tanh", "abs", "sqrt", "sign")


@dataclass(frozen=True)
class Const:
    value: float
    pos: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    index: int  # 1-based, x1 is Var(1)
    pos: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"
    pos: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: int = field(default=-1, compare=False, repr=False)


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"
    pos: int = field(default=-1, compare=False, repr=False)


Expr = Union[Const, Var, Neg, BinOp, Pow, Call]


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ExprSyntaxError(f"unexpected character {src[i]!r}", i, {"number", "name", "operator"})
        kind = m.lastgroup
        text = m.group(kind)
        tokens.append((kind, text, m.start(kind)))
        i = m.end()
    tokens.append(("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, dim: int):
        self.tokens = _tokenize(src)
        self.i = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text, expected):
        kind, got, pos = self.peek()
        if got != text or kind != "op":
            what = "end of input" if kind == "eof" else repr(got)
            raise ExprSyntaxError(f"expected {text!r}, found {what}", pos, expected)
        return self.take()

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self.take()
            arg = self.unary()
            if isinstance(arg, Const):
                return Const(-arg.value, pos)
            return Neg(arg, pos)
        return self.power()

    def power(self):
        base = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.take()
            exp_pos = self.peek()[2]
            exponent = self.power()
            if not (isinstance(exponent, Const) and exponent.value >= 0 and float(exponent.value).is_integer()):
                raise ExprSyntaxError("exponent must be a nonnegative integer literal", exp_pos, {"integer"})
            return Pow(base, int(exponent.value), pos)
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Const(float(text), pos)
        if kind == "name":
            if text in FUNCTIONS:
                self.expect("(", {"("})
                arg = self.expr()
                self.expect(")", {")", "+", "-", "*", "/", "^"})
                return Call(text, arg, pos)
            m = re.fullmatch(r"x(\d+)", text)
            if not m:
                raise UnknownIdentifier(f"unknown identifier {text!r}", pos, set(FUNCTIONS) | {"x1..xd"})
            index = int(m.group(1))
            if not 1 <= index <= self.dim:
                raise DimensionExceeded(f"variable {text} outside x1..x{self.dim}", pos, {f"x1..x{self.dim}"})
            return Var(index, pos)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")", {")", "+", "-", "*", "/", "^"})
            return node
        what = "end of input" if kind == "eof" else repr(text)
        raise ExprSyntaxError(f"unexpected {what}", pos, {"number", "variable", "function", "(", "-"})


def parse(src: str, dim: int) -> Expr:
    """Parse ``src`` into an expression over ``x1 .. x{dim}``.

    >>> parse("x1*x2", 2)
    BinOp(op='*', left=Var(index=1), right=Var(index=2))
    """
    p = _Parser(src, dim)
    node = p.expr()
    kind, text, pos = p.peek()
    if kind != "eof":
        raise ExprSyntaxError(f"unexpected {text!r}", pos, {"+", "-", "*", "/", "^", "end of input"})
    return node


# -- printer -----------------------------------------------------------------

def to_string(e: Expr) -> str:
    """Fully parenthesized canonical form; ``parse(to_string(e))`` gives back ``e``."""
    if isinstance(e, Const):
        text = repr(float(e.value))
        return f"({text})" if text.startswith("-") else text
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Neg):
        return f"(-{to_string(e.arg)})"
    if isinstance(e, BinOp):
        return f"({to_string(e.left)} {e.op} {to_string(e.right)})"
    if isinstance(e, Pow):
        return f"({to_string(e.base)}^{e.exponent})"
    if isinstance(e, Call):
        return f"{e.fn}({to_string(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# -- evaluation --------------------------------------------------------------

def _fail(msg, node, x, bad):
    where = f" at offset {node.pos}" if node.pos >= 0 else ""
    idx = np.argwhere(np.atleast_1d(bad))
    point = None
    if x.ndim > 1 and idx.size:
        point = x[tuple(idx[0])].tolist()
    elif x.ndim == 1:
        point = x.tolist()
    raise DomainError(f"{msg}{where} (node {to_string(node)}, point {point})", node, point)


def _eval(e, x):
    if isinstance(e, Const):
        return np.full(x.shape[:-1], e.value)
    if isinstance(e, Var):
        if e.index > x.shape[-1]:
            raise IndexError(f"x{e.index} needs a point of dimension >= {e.index}")
        return x[..., e.index - 1]
    if isinstance(e, Neg):
        return -_eval(e.arg, x)
    if isinstance(e, BinOp):
        left, right = _eval(e.left, x), _eval(e.right, x)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if np.any(right == 0):
            _fail("division by zero", e, x, right == 0)
        return left / right
    if isinstance(e, Pow):
        return _eval(e.base, x) ** e.exponent
    if isinstance(e, Call):
        u = _eval(e.arg, x)
        if e.fn == "log":
            if np.any(u <= 0):
                _fail("log of a nonpositive number", e, x, u <= 0)
            return np.log(u)
        if e.fn == "sqrt":
            if np.any(u < 0):
                _fail("sqrt of a negative number", e, x, u < 0)
            return np.sqrt(u)
        if e.fn == "exp":
            out = np.exp(u)
            if not np.all(np.isfinite(out)):
                _fail("exp overflow", e, x, ~np.isfinite(out))
            return out
        return _UNARY[e.fn](u)
    raise TypeError(f"not an expression node: {e!r}")


_UNARY = {"sin": np.sin, "cos": np.cos, "tanh": np.tanh, "abs": np.abs, "sign": np.sign}


def evaluate(e: Expr, point):
    """Evaluate at one point (returns a float) or at an ``(..., d)`` array of points."""
    x = np.asarray(point, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(e, x)
    if x.ndim <= 1:
        return float(out)
    return np.asarray(out, dtype=float)


# -- differentiation ---------------------------------------------------------

def _is(e, value):
    return isinstance(e, Const) and e.value == value


def _neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return BinOp("+", a, b)


def _sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return _neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    return BinOp("-", a, b)


def _mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return Const(0.0)
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return BinOp("*", a, b)


def _div(a, b):
    if _is(a, 0):
        return Const(0.0)
    if _is(b, 1):
        return a
    return BinOp("/", a, b)


def _pow(a, n):
    if n == 0:
        return Const(1.0)
    if n == 1:
        return a
    return Pow(a, n)


def differentiate(e: Expr, var: int) -> Expr:
    """Exact partial derivative with respect to ``x{var}``.

    ``abs`` differentiates to ``sign`` with the convention ``sign(0) = 0``.
    """
    d = lambda node: differentiate(node, var)  # noqa: E731
    if isinstance(e, Const):
        return Const(0.0)
    if isinstance(e, Var):
        return Const(1.0 if e.index == var else 0.0)
    if isinstance(e, Neg):
        return _neg(d(e.arg))
    if isinstance(e, BinOp):
        a, b = e.left, e.right
        if e.op == "+":
            return _add(d(a), d(b))
        if e.op == "-":
            return _sub(d(a), d(b))
        if e.op == "*":
            return _add(_mul(d(a), b), _mul(a, d(b)))
        return _div(_sub(_mul(d(a), b), _mul(a, d(b))), _pow(b, 2))
    if isinstance(e, Pow):
        n = e.exponent
        if n == 0:
            return Const(0.0)
        return _mul(_mul(Const(float(n)), _pow(e.base, n - 1)), d(e.base))
    if isinstance(e, Call):
        u = e.arg
        du = d(u)
        if _is(du, 0):
            return Const(0.0)
        outer = {
            "sin": lambda: Call("cos", u),
            "cos": lambda: _neg(Call("sin", u)),
            "exp": lambda: Call("exp", u),
            "log": lambda: _div(Const(1.0), u),
            "tanh": lambda: _sub(Const(1.0), _pow(Call("tanh", u), 2)),
            "abs": lambda: Call("sign", u),
            "sqrt": lambda: _div(Const(1.0), _mul(Const(2.0), Call("sqrt", u))),
            "sign": lambda: Const(0.0),
        }[e.fn]()
        if e.fn == "log":
            return _div(du, u)
        return _mul(outer, du)
    raise TypeError(f"not an expression node: {e!r}")


def math_eval(e: Expr, point) -> float:
    """Scalar reference evaluator on Python floats, used to cross-check :func:`evaluate`."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return float(point[e.index - 1])
    if isinstance(e, Neg):
        return -math_eval(e.arg, point)
    if isinstance(e, BinOp):
        a, b = math_eval(e.left, point), math_eval(e.right, point)
        return {"+": a + b, "-": a - b, "*": a * b}[e.op] if e.op != "/" else a / b
    if isinstance(e, Pow):
        return math_eval(e.base, point) ** e.exponent
    u = math_eval(e.arg, point)
    if e.fn == "sign":
        return float((u > 0) - (u < 0))
    fn = {"abs": abs, "tanh": math.tanh}.get(e.fn) or getattr(math, e.fn)
    return fn(u)
