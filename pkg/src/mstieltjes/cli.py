"""Command-line surface.

Every subcommand maps onto one library capability, takes its function
arguments as expression text in the variable t, and emits one JSON report
(schema_version "1") on standard output, or CSV for grid-valued results
with --csv.  Floats serialize with 17 significant digits so reports are
byte-identical across runs.  Exit codes: 0 success, 2 input error,
3 quadrature/extrapolation non-convergence.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from typing import Sequence

import numpy as np

from . import algebra, expressions, hilbert_operator, inversion, transform
from .errors import EvalError, ExprSyntaxError, NonConvergenceWarning
from .quadrature import FuncSpec, QuadConfig

__all__ = ["main", "run", "build_parser"]

SCHEMA_VERSION = "1"


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, complex):
        return f'"{format(x.real, ".17g")}{x.imag:+.17g}j"'
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(x, dict):
        items = ", ".join(f'{_fmt(str(k))}: {_fmt(v)}' for k, v in x.items())
        return "{" + items + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if x is None:
        return "null"
    raise TypeError(f"cannot serialize {type(x)}")


def report_json(report: dict) -> str:
    return _fmt(report)


def report_csv(report: dict) -> str:
    """CSV for grid-valued results: header index,t_or_lambda,value,err."""
    lines = ["index,t_or_lambda,value,err"]
    idx = 0
    for res in report["results"]:
        if "grid" not in res:
            continue
        for key, value, err in res["grid"]:
            lines.append(
                f"{idx},{format(key, '.17g')},{format(value, '.17g')},"
                f"{format(err, '.17g')}"
            )
            idx += 1
    return "\n".join(lines) + "\n"


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected RE or RE,IM, got {text!r}")


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected a,b, got {text!r}")
    return float(parts[0]), float(parts[1])


def _funcspec(expr_text: str, sing: "tuple[float, float] | None", label=None) -> FuncSpec:
    ast = expressions.parse_expr(expr_text)
    a, b = sing if sing is not None else (0.0, 0.0)
    return FuncSpec(
        lambda t, _ast=ast: expressions.evaluate(_ast, t),
        sing_left=a,
        sing_right=b,
        label=label or expr_text,
    )


def _add_common(p: argparse.ArgumentParser, suppress: bool):
    # shared options, accepted both before and after the subcommand; the
    # post-subcommand copies use SUPPRESS so they never clobber earlier values
    d = (lambda v: argparse.SUPPRESS if suppress else v)
    p.add_argument("--tol", type=float, default=d(1e-10),
                   help="quadrature tolerance, absolute and relative (default 1e-10)")
    p.add_argument("--max-level", type=int, default=d(14),
                   help="max tanh-sinh refinement level (default 14)")
    p.add_argument("--csv", action="store_true",
                   default=d(False),
                   help="emit grid-valued results as CSV instead of JSON")
    p.add_argument("--out", metavar="FILE", default=d(None),
                   help="write the report to FILE")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mstieltjes",
        description="Markov-Stieltjes transform toolbox: forward/PV evaluation, "
        "inversion, moments, Hilbert-matrix experiments, operational "
        "identities, convolution checks, and the dominant singular equation.",
    )
    _add_common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp, suppress=True)
        return sp

    sp = add("eval", "forward transform of -f at -z (PV branch with --pv)")
    sp.add_argument("-f", required=True, metavar="EXPR")
    sp.add_argument("-z", required=True, metavar="RE[,IM]")
    sp.add_argument("--pv", action="store_true", help="principal-value branch (z real >= 1)")
    sp.add_argument("--sing", metavar="a,b", help="endpoint exponents of f")

    sp = add("invert", "round-trip: forward transform of -f, then invert at -t")
    sp.add_argument("mode", choices=("complex", "real"))
    sp.add_argument("-f", required=True, metavar="EXPR")
    sp.add_argument("-t", required=True, metavar="T[,T...]")
    sp.add_argument("--sing", metavar="a,b")
    sp.add_argument("--eta-schedule", metavar="E1,E2,...",
                    help="decreasing eta values (complex mode; default 0.1,0.05,0.025,0.0125)")
    sp.add_argument("--radius", type=float, default=200.0,
                    help="truncation radius R (real mode; default 200)")

    sp = add("moments", "first N moments of -f")
    sp.add_argument("-f", required=True, metavar="EXPR")
    sp.add_argument("-N", required=True, type=int)
    sp.add_argument("--sing", metavar="a,b")

    sp = add("hilbert-norm", "spectral norm of the N x N Hilbert matrix truncation")
    sp.add_argument("-N", required=True, type=int)

    sp = add("spectrum", "all eigenvalues of the N x N truncation")
    sp.add_argument("-N", required=True, type=int)

    sp = add("identities", "residuals of the six operational identities for -f")
    sp.add_argument("-f", required=True, metavar="EXPR")
    sp.add_argument("--sing", metavar="a,b")
    sp.add_argument("--dilate-a", type=float, default=2.0)
    sp.add_argument("--shift-a", type=float, default=1.0)

    sp = add("convolve-check", "convolution-theorem residual for -f and -g")
    sp.add_argument("-f", required=True, metavar="EXPR")
    sp.add_argument("-g", required=True, metavar="EXPR")
    sp.add_argument("--form", choices=("symmetric", "printed"), default="symmetric")

    sp = add("solve", "solve x + lambda PV int x(u)/(t-u) du = g on a grid")
    sp.add_argument("--lambda", dest="lam", required=True, type=float)
    sp.add_argument("-g", required=True, metavar="EXPR")
    sp.add_argument("--sing", metavar="a,b")
    sp.add_argument("--grid", type=int, default=33, help="grid size (default 33)")
    sp.add_argument("--radius", type=float, default=200.0)

    sp = add("witness", "noncompactness witness mass and its lower bound")
    sp.add_argument("-a", required=True, type=float)
    sp.add_argument("-p", required=True, type=float)

    sp = add("bergman", "Bergman-basis row partial sum for row -j up to -K terms")
    sp.add_argument("-j", required=True, type=int)
    sp.add_argument("-K", required=True, type=int)
    return p


def _result(label: str, value: float, err: "float | None" = None) -> dict:
    out = {"label": label, "value": float(value)}
    out["err"] = float(err) if err is not None else "exact"
    return out


def _dispatch(args, cfg: QuadConfig) -> tuple[dict, list]:
    """Returns (inputs-echo, results)."""
    cmd = args.command
    sing = _parse_pair(args.sing) if getattr(args, "sing", None) else None
    if cmd == "eval":
        z = _parse_complex(args.z)
        f = _funcspec(args.f, sing)
        branch = transform.Branch.PRINCIPAL_VALUE if args.pv else transform.Branch.ANALYTIC
        point = transform.EvalPoint(z, branch)
        tv = transform.forward(f, point, cfg)
        inputs = {"f": args.f, "z": [z.real, z.imag], "pv": args.pv,
                  "sing": list(sing) if sing else [0.0, 0.0]}
        if z.imag == 0.0:
            return inputs, [_result("Sf(z)", tv.value.real, tv.err_estimate)]
        return inputs, [
            _result("Re Sf(z)", tv.value.real, tv.err_estimate),
            _result("Im Sf(z)", tv.value.imag, tv.err_estimate),
        ]
    if cmd == "invert":
        f = _funcspec(args.f, sing)
        ts = [float(s) for s in args.t.split(",")]
        oracle = inversion.TransformOracle.from_funcspec(f, cfg)
        rows = []
        if args.mode == "complex":
            etas = (
                tuple(float(s) for s in args.eta_schedule.split(","))
                if args.eta_schedule
                else (0.1, 0.05, 0.025, 0.0125)
            )
            sched = inversion.EtaSchedule(etas)
            for t in ts:
                rows.append((t, inversion.complex_invert(oracle, t, sched), 0.0))
        else:
            for t in ts:
                rows.append((t, inversion.real_invert(oracle, t, R=args.radius, cfg=cfg), 0.0))
        inputs = {"f": args.f, "mode": args.mode, "t": ts}
        return inputs, [{"label": f"{args.mode}-inversion", "grid": rows}]
    if cmd == "moments":
        f = _funcspec(args.f, sing)
        c = transform.moments(f, args.N, cfg)
        rows = [(float(n), float(cn), 0.0) for n, cn in enumerate(c)]
        return {"f": args.f, "N": args.N}, [{"label": "moments", "grid": rows}]
    if cmd == "hilbert-norm":
        val = hilbert_operator.norm_p2(args.N)
        return {"N": args.N}, [_result(f"norm_p2({args.N})", val)]
    if cmd == "spectrum":
        lam = hilbert_operator.truncated_spectrum(args.N)
        rows = [(float(i), float(v), 0.0) for i, v in enumerate(lam)]
        return {"N": args.N}, [{"label": "spectrum", "grid": rows}]
    if cmd == "identities":
        f = _funcspec(args.f, sing)
        ast = expressions.parse_expr(args.f)
        d_ast = expressions.differentiate(ast)
        deriv = FuncSpec(
            lambda t: expressions.evaluate(d_ast, t), label=f"d/dt {args.f}"
        )
        f0 = float(expressions.evaluate(ast, np.array([0.0]))[0])
        f1 = float(expressions.evaluate(ast, np.array([1.0]))[0])
        K = algebra.IdentityKind
        cases = [
            ("reflect", algebra.IdentityCase(K.REFLECT)),
            ("dilate", algebra.IdentityCase(K.DILATE, a=args.dilate_a)),
            ("mult_t", algebra.IdentityCase(K.MULT_T)),
            ("div_shift", algebra.IdentityCase(K.DIV_SHIFT, a=args.shift_a)),
            ("derivative", algebra.IdentityCase(
                K.DERIVATIVE, derivative=deriv, f_at_0=f0, f_at_1=f1)),
            ("antiderivative", algebra.IdentityCase(K.ANTIDERIVATIVE)),
        ]
        results = [
            _result(f"residual[{name}]", algebra.identity_residual(f, case, cfg))
            for name, case in cases
        ]
        return {"f": args.f, "dilate_a": args.dilate_a, "shift_a": args.shift_a}, results
    if cmd == "convolve-check":
        f = _funcspec(args.f, None)
        g = _funcspec(args.g, None)
        zpts = (0.3 + 0.0j, -0.5 + 0.0j, 0.2 + 0.1j)
        res = algebra.convolution_theorem_residual(f, g, zpts, cfg, form=args.form)
        return (
            {"f": args.f, "g": args.g, "form": args.form},
            [_result(f"max |S(f conv g) - Sf Sg| [{args.form}]", res)],
        )
    if cmd == "solve":
        g = _funcspec(args.g, sing, label="g")
        prob = algebra.EquationProblem(
            args.lam, g, grid=algebra.chebyshev_grid(args.grid)
        )
        sol = algebra.solve_singular_equation(prob, cfg, R=args.radius)
        residual = algebra.equation_residual(prob, sol, cfg)
        rows = [(t, x, 0.0) for t, x in sol]
        return (
            {"lambda": args.lam, "g": args.g, "grid": args.grid},
            [
                _result("alpha", prob.alpha),
                _result("equation-residual", residual),
                {"label": "solution", "grid": rows},
            ],
        )
    if cmd == "witness":
        computed, bound = hilbert_operator.noncompactness_witness(args.a, args.p, cfg)
        return {"a": args.a, "p": args.p}, [
            _result("computed", computed),
            _result("bound", bound),
        ]
    if cmd == "bergman":
        val = hilbert_operator.bergman_row_divergence(args.j, args.K)
        return {"j": args.j, "K": args.K}, [_result(f"row_sum({args.j},{args.K})", val)]
    raise ValueError(f"unknown command {cmd}")  # unreachable: argparse guards


def run(argv: Sequence[str]) -> tuple[dict, int]:
    """Execute one CLI invocation; returns (report, exit_code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return {"schema_version": SCHEMA_VERSION, "error": "argument error"}, (
            0 if exc.code == 0 else 2
        )
    cfg = QuadConfig(abs_tol=args.tol, rel_tol=args.tol, max_refinement_level=args.max_level)
    captured: list = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            inputs, results = _dispatch(args, cfg)
            captured = caught
    except (ExprSyntaxError, EvalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return {"schema_version": SCHEMA_VERSION, "error": str(exc)}, 2
    warn_msgs = [str(w.message) for w in captured]
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "warnings": warn_msgs,
    }
    code = 0
    if any(isinstance(w.message, NonConvergenceWarning) for w in captured):
        code = 3
    return report, code


def main(argv: "Sequence[str] | None" = None) -> int:
    argv_list = sys.argv[1:] if argv is None else list(argv)
    report, code = run(argv_list)
    if "error" in report:
        return code
    try:
        args = build_parser().parse_args(argv_list)
        want_csv, out_file = args.csv, args.out
    except SystemExit:
        want_csv, out_file = False, None
    text = report_csv(report) if want_csv else report_json(report) + "\n"
    if out_file:
        with open(out_file, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for msg in report.get("warnings", []):
        print(f"warning: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
