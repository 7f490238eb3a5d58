"""Scalar functions of one variable ``s``: parsing, evaluation, differentiation.

Grammar (standard infix, whitespace insensitive):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?            # right-associative, ^ binds tightest
    atom   := NUMBER | 'pi' | 'e' | 's' | FUNC '(' expr ')' | '(' expr ')'

Functions: sin cos tan sinh cosh tanh asinh acosh atanh exp log sqrt abs.
Exponents must be constant (no ``s``); non-integer exponents require a
positive base.  Evaluation is numpy-aware: scalars in, floats out; arrays
in, arrays out.  Domain violations raise EvalDomainError instead of
producing NaN or infinities.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import EvalDomainError, ParseError

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "VAR",
    "const",
    "add",
    "sub",
    "mul",
    "div",
    "powc",
    "neg",
    "call",
    "parse",
    "evaluate",
    "differentiate",
    "to_string",
    "substitute",
    "contains_var",
    "FUNCTIONS",
]


@dataclass(frozen=True)
class Expr:
    def __call__(self, s):
        return evaluate(self, s)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


VAR = Var()

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
    "asinh": np.arcsinh,
    "acosh": np.arccosh,
    "atanh": np.arctanh,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "abs": np.abs,
}

_CONSTANTS = {"pi": math.pi, "e": math.e}


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return contains_var(e.arg)
    if isinstance(e, BinOp):
        return contains_var(e.left) or contains_var(e.right)
    if isinstance(e, Call):
        return contains_var(e.arg)
    return False


# ---------------------------------------------------------------------------
# smart constructors with light constant folding
# ---------------------------------------------------------------------------


def const(x) -> Num:
    return Num(float(x))


def _num(e):
    return e.value if isinstance(e, Num) else None


def neg(e: Expr) -> Expr:
    v = _num(e)
    if v is not None:
        return Num(-v)
    if isinstance(e, Neg):
        return e.arg
    return Neg(e)


def add(l: Expr, r: Expr) -> Expr:
    lv, rv = _num(l), _num(r)
    if lv is not None and rv is not None:
        return Num(lv + rv)
    if lv == 0.0:
        return r
    if rv == 0.0:
        return l
    return BinOp("+", l, r)


def sub(l: Expr, r: Expr) -> Expr:
    lv, rv = _num(l), _num(r)
    if lv is not None and rv is not None:
        return Num(lv - rv)
    if rv == 0.0:
        return l
    if lv == 0.0:
        return neg(r)
    return BinOp("-", l, r)


def mul(l: Expr, r: Expr) -> Expr:
    lv, rv = _num(l), _num(r)
    if lv is not None and rv is not None:
        return Num(lv * rv)
    if lv == 0.0 or rv == 0.0:
        return Num(0.0)
    if lv == 1.0:
        return r
    if rv == 1.0:
        return l
    return BinOp("*", l, r)


def div(l: Expr, r: Expr) -> Expr:
    lv, rv = _num(l), _num(r)
    if rv == 1.0:
        return l
    if lv == 0.0 and rv != 0.0 and rv is not None:
        return Num(0.0)
    if lv is not None and rv is not None and rv != 0.0:
        return Num(lv / rv)
    return BinOp("/", l, r)


def powc(base: Expr, exponent: Expr) -> Expr:
    if contains_var(exponent):
        raise ValueError("exponent must be constant")
    ev = evaluate(exponent, 0.0)
    if ev == 0.0:
        return Num(1.0)
    if ev == 1.0:
        return base
    bv = _num(base)
    if bv is not None and (bv > 0.0 or float(ev).is_integer()):
        return Num(float(np.power(bv, ev)))
    return BinOp("^", base, Num(float(ev)))


def call(func: str, arg: Expr) -> Expr:
    if func not in FUNCTIONS:
        raise ValueError(f"unknown function {func!r}")
    return Call(func, arg)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[at]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {value!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                e = BinOp(value, e, rhs)
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                rhs = self.unary()
                e = BinOp(value, e, rhs)
            else:
                return e

    def unary(self) -> Expr:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            _, _, expo_pos = self.peek()
            expo = self.unary()
            if contains_var(expo):
                raise ParseError("exponent must be constant", expo_pos)
            return BinOp("^", base, expo)
        return base

    def atom(self) -> Expr:
        kind, value, pos = self.advance()
        if kind == "num":
            return Num(float(value))
        if kind == "ident":
            if value == "s":
                return VAR
            if value in _CONSTANTS:
                nk, nv, _ = self.peek()
                if nk == "op" and nv == "(":
                    raise ParseError(f"unknown function {value!r}", pos)
                return Num(_CONSTANTS[value])
            if value in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(value, arg)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "(":
                raise ParseError(f"unknown function {value!r}", pos)
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError("expected expression", pos)


def parse(text: str) -> Expr:
    """Parse expression text; raises ParseError with a character offset."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _require(ok: bool, message: str):
    if not ok:
        raise EvalDomainError(message)


def _eval(e: Expr, s):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return s
    if isinstance(e, Neg):
        return -_eval(e.arg, s)
    if isinstance(e, BinOp):
        if e.op == "+":
            return _eval(e.left, s) + _eval(e.right, s)
        if e.op == "-":
            return _eval(e.left, s) - _eval(e.right, s)
        if e.op == "*":
            return _eval(e.left, s) * _eval(e.right, s)
        if e.op == "/":
            den = _eval(e.right, s)
            _require(bool(np.all(den != 0.0)), "division by zero")
            return _eval(e.left, s) / den
        if e.op == "^":
            base = _eval(e.left, s)
            c = float(_eval(e.right, 0.0))
            if c.is_integer():
                if c < 0.0:
                    _require(bool(np.all(base != 0.0)), "zero base with negative exponent")
            else:
                _require(bool(np.all(base > 0.0)), "negative base with non-integer exponent")
            return np.power(base, c)
        raise ValueError(f"unknown operator {e.op!r}")
    if isinstance(e, Call):
        x = _eval(e.arg, s)
        if e.func == "log":
            _require(bool(np.all(x > 0.0)), "log of a non-positive value")
        elif e.func == "sqrt":
            _require(bool(np.all(x >= 0.0)), "sqrt of a negative value")
        elif e.func == "atanh":
            _require(bool(np.all(np.abs(x) < 1.0)), "atanh outside (-1, 1)")
        elif e.func == "acosh":
            _require(bool(np.all(x >= 1.0)), "acosh below 1")
        return FUNCTIONS[e.func](x)
    raise TypeError(f"not an expression: {e!r}")


def evaluate(e: Expr, s):
    """Evaluate at a scalar or array argument; never returns NaN/inf."""
    arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise EvalDomainError("evaluation point must be finite")
    with np.errstate(all="ignore"):
        out = _eval(e, arr)
    out = np.asarray(out, dtype=float)
    if not np.all(np.isfinite(out)):
        raise EvalDomainError("expression evaluated to a non-finite value")
    if arr.ndim == 0:
        return float(out)
    if out.shape != arr.shape:
        out = np.broadcast_to(out, arr.shape).copy()
    return out


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------

_DERIVATIVES = {
    "sin": lambda u: call("cos", u),
    "cos": lambda u: neg(call("sin", u)),
    "tan": lambda u: div(const(1.0), powc(call("cos", u), const(2.0))),
    "sinh": lambda u: call("cosh", u),
    "cosh": lambda u: call("sinh", u),
    "tanh": lambda u: div(const(1.0), powc(call("cosh", u), const(2.0))),
    "asinh": lambda u: div(const(1.0), call("sqrt", add(const(1.0), powc(u, const(2.0))))),
    "acosh": lambda u: div(const(1.0), call("sqrt", sub(powc(u, const(2.0)), const(1.0)))),
    "atanh": lambda u: div(const(1.0), sub(const(1.0), powc(u, const(2.0)))),
    "exp": lambda u: call("exp", u),
    "log": lambda u: div(const(1.0), u),
    "sqrt": lambda u: div(const(1.0), mul(const(2.0), call("sqrt", u))),
    "abs": lambda u: div(u, call("abs", u)),
}


def differentiate(e: Expr) -> Expr:
    """Exact symbolic derivative with light constant folding."""
    if isinstance(e, Num):
        return Num(0.0)
    if isinstance(e, Var):
        return Num(1.0)
    if isinstance(e, Neg):
        return neg(differentiate(e.arg))
    if isinstance(e, BinOp):
        if e.op == "+":
            return add(differentiate(e.left), differentiate(e.right))
        if e.op == "-":
            return sub(differentiate(e.left), differentiate(e.right))
        if e.op == "*":
            return add(
                mul(differentiate(e.left), e.right),
                mul(e.left, differentiate(e.right)),
            )
        if e.op == "/":
            return div(
                sub(
                    mul(differentiate(e.left), e.right),
                    mul(e.left, differentiate(e.right)),
                ),
                powc(e.right, const(2.0)),
            )
        if e.op == "^":
            c = evaluate(e.right, 0.0)
            return mul(
                mul(const(c), powc(e.left, const(c - 1.0))),
                differentiate(e.left),
            )
        raise ValueError(f"unknown operator {e.op!r}")
    if isinstance(e, Call):
        return mul(_DERIVATIVES[e.func](e.arg), differentiate(e.arg))
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# printing and substitution
# ---------------------------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _fmt(e: Expr, parent_prec: int) -> str:
    if isinstance(e, Num):
        if e.value < 0.0:
            inner = repr(e.value)
            return f"({inner})" if parent_prec > 1 else inner
        return repr(e.value)
    if isinstance(e, Var):
        return "s"
    if isinstance(e, Neg):
        inner = f"-{_fmt(e.arg, _PRECEDENCE['neg'])}"
        return f"({inner})" if parent_prec > _PRECEDENCE["neg"] else inner
    if isinstance(e, Call):
        return f"{e.func}({_fmt(e.arg, 0)})"
    prec = _PRECEDENCE[e.op]
    if e.op == "^":
        # right-associative; exponent is constant by construction
        text = f"{_fmt(e.left, prec + 1)}^{_fmt(e.right, prec)}"
    elif e.op in "-/":
        text = f"{_fmt(e.left, prec)} {e.op} {_fmt(e.right, prec + 1)}"
    else:
        text = f"{_fmt(e.left, prec)} {e.op} {_fmt(e.right, prec)}"
    return f"({text})" if parent_prec > prec else text


def to_string(e: Expr) -> str:
    """Render to text that reparses to an equivalent expression."""
    return _fmt(e, 0)


def substitute(e: Expr, replacement: Expr) -> Expr:
    """Replace every occurrence of the variable with another expression."""
    if isinstance(e, Num):
        return e
    if isinstance(e, Var):
        return replacement
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, replacement))
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.left, replacement), substitute(e.right, replacement))
    if isinstance(e, Call):
        return Call(e.func, substitute(e.arg, replacement))
    raise TypeError(f"not an expression: {e!r}")
