"""A small expression language for integrands of t on (0,1).

Grammar (standard precedence, right-associative '^'):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := unary ('^' factor)?
    unary  := '-'? atom
    atom   := number | 't' | 'pi' | ident '(' expr ')' | '(' expr ')'

with ident drawn from {sqrt, log, exp, sin, cos, abs}.  Parse errors carry
the byte offset of the failure.  ``to_string`` prints with the minimal
parentheses that make ``parse(to_string(ast))`` reproduce the tree.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import EvalError, ExprSyntaxError, UnknownFunction

__all__ = [
    "Const",
    "VarT",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Call",
    "parse_expr",
    "to_string",
    "evaluate",
    "differentiate",
    "FUNCTIONS",
]

FUNCTIONS = ("sqrt", "log", "exp", "sin", "cos", "abs")


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class VarT:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"


Expr = Union[Const, VarT, Neg, Add, Sub, Mul, Div, Pow, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(src):
            m = _TOKEN.match(src, pos)
            if m is None or m.end() == pos:
                at = pos + len(src[pos:]) - len(src[pos:].lstrip())
                raise ExprSyntaxError(f"unexpected character {src[at]!r}", at)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(src)))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", off)
        self.next()

    def parse(self) -> Expr:
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing {val!r}", off)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                node = Add(node, rhs) if val == "+" else Sub(node, rhs)
            else:
                return node

    def term(self) -> Expr:
        node = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                node = Mul(node, rhs) if val == "*" else Div(node, rhs)
            else:
                return node

    def factor(self) -> Expr:
        node = self.unary()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            return Pow(node, self.factor())  # right-associative
        return node

    def unary(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Neg(self.atom())
        return self.atom()

    def atom(self) -> Expr:
        kind, val, off = self.next()
        if kind == "num":
            return Const(float(val))
        if kind == "ident":
            if val == "t":
                return VarT()
            if val == "pi":
                return Const(math.pi)
            if val in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, arg)
            raise UnknownFunction(f"unknown function or name {val!r}", off)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(
            f"expected a number, 't', 'pi', function call or '(' "
            f"(got {val!r})" if val else "unexpected end of input",
            off,
        )


def parse_expr(src: str) -> Expr:
    """Parse expression text into its tree; errors carry byte offsets."""
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(src).parse()


_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4, Const: 5, VarT: 5, Call: 5}


def to_string(node: Expr) -> str:
    """Render with the minimal parentheses that reproduce the tree."""

    def render(n: Expr, ctx: int, right_side: bool = False) -> str:
        p = _PREC[type(n)]
        if isinstance(n, Const):
            s = format(n.value, ".17g")
            return f"({s})" if n.value < 0 else s
        if isinstance(n, VarT):
            return "t"
        if isinstance(n, Call):
            return f"{n.name}({render(n.arg, 0)})"
        if isinstance(n, Neg):
            # grammar allows '-' only before an atom
            inner = render(n.arg, 99)
            s = f"-{inner}"
        elif isinstance(n, Pow):
            # right-associative: parenthesize a Pow/Neg on the left
            s = f"{render(n.left, p + 1)}^{render(n.right, p)}"
        else:
            op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(n)]
            s = f"{render(n.left, p)}{op}{render(n.right, p, right_side=True)}"
        need = p < ctx or (right_side and p == ctx)
        return f"({s})" if need else s

    return render(node, 0)


def evaluate(node: Expr, t: np.ndarray) -> np.ndarray:
    """Evaluate at points of (0,1); raises EvalError on non-finite values."""
    t = np.asarray(t, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(node, t)
    out = np.broadcast_to(np.asarray(out, dtype=float), t.shape)
    if not np.all(np.isfinite(out)):
        bad = t[~np.isfinite(out)]
        raise EvalError(f"expression is not finite at t={bad[:3]!r}")
    return np.array(out)


def _eval(node: Expr, t: np.ndarray):
    if isinstance(node, Const):
        return np.full_like(t, node.value)
    if isinstance(node, VarT):
        return t
    if isinstance(node, Neg):
        return -_eval(node.arg, t)
    if isinstance(node, Add):
        return _eval(node.left, t) + _eval(node.right, t)
    if isinstance(node, Sub):
        return _eval(node.left, t) - _eval(node.right, t)
    if isinstance(node, Mul):
        return _eval(node.left, t) * _eval(node.right, t)
    if isinstance(node, Div):
        return _eval(node.left, t) / _eval(node.right, t)
    if isinstance(node, Pow):
        return _eval(node.left, t) ** _eval(node.right, t)
    fn = {
        "sqrt": np.sqrt,
        "log": np.log,
        "exp": np.exp,
        "sin": np.sin,
        "cos": np.cos,
        "abs": np.abs,
    }[node.name]
    return fn(_eval(node.arg, t))


def differentiate(node: Expr) -> Expr:
    """Symbolic d/dt (for the identity suite's C^1 hypothesis).

    |u| differentiates to u'/sign-free form u*u'/abs(u), valid away from
    zeros of u.
    """
    if isinstance(node, (Const,)):
        return Const(0.0)
    if isinstance(node, VarT):
        return Const(1.0)
    if isinstance(node, Neg):
        return Neg(differentiate(node.arg))
    if isinstance(node, Add):
        return Add(differentiate(node.left), differentiate(node.right))
    if isinstance(node, Sub):
        return Sub(differentiate(node.left), differentiate(node.right))
    if isinstance(node, Mul):
        return Add(
            Mul(differentiate(node.left), node.right),
            Mul(node.left, differentiate(node.right)),
        )
    if isinstance(node, Div):
        return Div(
            Sub(
                Mul(differentiate(node.left), node.right),
                Mul(node.left, differentiate(node.right)),
            ),
            Pow(node.right, Const(2.0)),
        )
    if isinstance(node, Pow):
        base, expo = node.left, node.right
        if isinstance(expo, Const):
            return Mul(
                Mul(expo, Pow(base, Const(expo.value - 1.0))), differentiate(base)
            )
        # general power: (u^v)' = u^v (v' log u + v u'/u)
        return Mul(
            node,
            Add(
                Mul(differentiate(expo), Call("log", base)),
                Div(Mul(expo, differentiate(base)), base),
            ),
        )
    du = differentiate(node.arg)
    u = node.arg
    rules = {
        "sqrt": lambda: Div(du, Mul(Const(2.0), Call("sqrt", u))),
        "log": lambda: Div(du, u),
        "exp": lambda: Mul(Call("exp", u), du),
        "sin": lambda: Mul(Call("cos", u), du),
        "cos": lambda: Neg(Mul(Call("sin", u), du)),
        "abs": lambda: Div(Mul(u, du), Call("abs", u)),
    }
    return rules[node.name]()
