import math

import numpy as np
import pytest

from mstieltjes.errors import EvalError, ExprSyntaxError, UnknownFunction
from mstieltjes.expressions import (
    Add,
    Call,
    Const,
    Div,
    Mul,
    Neg,
    Pow,
    Sub,
    VarT,
    differentiate,
    evaluate,
    parse_expr,
    to_string,
)


def test_parse_singular_weight():
    got = parse_expr("(t*(1-t))^(-0.5)")
    want = Pow(Mul(VarT(), Sub(Const(1.0), VarT())), Neg(Const(0.5)))
    assert got == want


def test_parse_call_with_pi():
    got = parse_expr("sin(pi*t)")
    assert got == Call("sin", Mul(Const(math.pi), VarT()))


def test_parse_dangling_operator_offset():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("t +")
    assert err.value.offset == 3


def test_parse_unknown_function():
    with pytest.raises(UnknownFunction):
        parse_expr("sinh(t)")


def test_parse_empty_and_garbage():
    with pytest.raises(ExprSyntaxError):
        parse_expr("   ")
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("t @ 2")
    assert err.value.offset == 2


def test_precedence_and_associativity():
    assert parse_expr("1+2*3") == Add(Const(1.0), Mul(Const(2.0), Const(3.0)))
    assert parse_expr("1-2-3") == Sub(Sub(Const(1.0), Const(2.0)), Const(3.0))
    assert parse_expr("2^t^2") == Pow(Const(2.0), Pow(VarT(), Const(2.0)))
    assert parse_expr("-t^2") == Pow(Neg(VarT()), Const(2.0))  # unary binds the atom
    assert parse_expr("1/2/t") == Div(Div(Const(1.0), Const(2.0)), VarT())


CORPUS = [
    "t",
    "pi",
    "1",
    "0.5",
    "1e-3",
    "2.5e2",
    "-t",
    "-(t)",
    "--t" if False else "-(-t)",
    "t+1",
    "1-t",
    "t*t",
    "t/2",
    "t^2",
    "t^0.5",
    "t^(-0.5)",
    "(t*(1-t))^(-0.5)",
    "sin(pi*t)",
    "cos(pi*t)",
    "sqrt(t)",
    "log(t)",
    "exp(t)",
    "abs(t-0.5)",
    "sin(t)^2+cos(t)^2",
    "t+t+t",
    "t-(t-t)",
    "(t+1)*(t-1)",
    "t*(1-t)",
    "1/(1+t)",
    "2^t^t",
    "(2^t)^t",
    "-t^2",
    "-(t^2)",
    "t^2^3",
    "1+2*3-4/5",
    "(1+2)*(3-4)/5",
    "sqrt(t*(1-t))",
    "exp(-t)",
    "log(1-t)/t",
    "sin(2*pi*t)",
    "t*t*t*t",
    "((t))",
    "0.1+0.2",
    "1e0",
    "3.",
    ".5",
    "t/(1-t)",
    "(t/(1-t))^0.25",
    "abs(sin(pi*t))",
    "cos(t-0.5)*exp(t/2)",
    "1-2-3-4",
    "t^(1/3)",
]


@pytest.mark.parametrize("src", CORPUS)
def test_round_trip_corpus(src):
    tree = parse_expr(src)
    printed = to_string(tree)
    assert parse_expr(printed) == tree


def test_evaluate_values():
    t = np.array([0.5])
    assert evaluate(parse_expr("(t*(1-t))^(-0.5)"), t)[0] == pytest.approx(2.0)
    assert evaluate(parse_expr("sin(pi*t)"), t)[0] == pytest.approx(1.0)
    assert evaluate(parse_expr("pi"), t)[0] == math.pi


def test_evaluate_nonfinite_raises():
    with pytest.raises(EvalError):
        evaluate(parse_expr("1/(t-t)"), np.array([0.3]))
    with pytest.raises(EvalError):
        evaluate(parse_expr("log(t-1)"), np.array([0.3]))
    with pytest.raises(EvalError):
        evaluate(parse_expr("(t-0.5)^0.5"), np.array([0.25]))


@pytest.mark.parametrize(
    "src",
    ["t^3", "sin(pi*t)", "t*(1-t)", "exp(-t)*cos(t)", "sqrt(t)", "1/(1+t)", "t^t"],
)
def test_differentiate_against_central_differences(src):
    tree = parse_expr(src)
    d = differentiate(tree)
    ts = np.array([0.2, 0.4, 0.6, 0.8])
    h = 1e-6
    numeric = (evaluate(tree, ts + h) - evaluate(tree, ts - h)) / (2.0 * h)
    symbolic = evaluate(d, ts)
    assert symbolic == pytest.approx(numeric, rel=1e-6, abs=1e-8)


def test_differentiate_abs():
    d = differentiate(parse_expr("abs(t-0.5)"))
    assert evaluate(d, np.array([0.75]))[0] == pytest.approx(1.0)
    assert evaluate(d, np.array([0.25]))[0] == pytest.approx(-1.0)
