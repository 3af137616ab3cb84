"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
are produced.  Criterion 2 is split: its attainable clauses pass, while the
clause `norm_p2(4096) > 3.0` fails honestly (the truncated Hilbert matrix
norm at N = 4096 is 2.5543; see the criterion-2b test body for the
measured convergence law and what N would be required).
"""

import math
import time

import numpy as np

from mstieltjes.algebra import (
    EquationProblem,
    IdentityCase,
    IdentityKind,
    convolution_theorem_residual,
    equation_residual,
    identity_residual,
    solve_alpha,
    solve_singular_equation,
)
from mstieltjes.cli import run
from mstieltjes.hilbert_operator import (
    HilbertOpTrunc,
    bergman_row_divergence,
    lp_lower_bound_ratio,
    noncompactness_witness,
    norm_p2,
    truncated_spectrum,
)
from mstieltjes.inversion import TransformOracle, complex_invert, real_invert
from mstieltjes.quadrature import FuncSpec, QuadConfig
from mstieltjes.transform import const_spec, moments

CFG = QuadConfig()


def _line(criterion: str, ok: bool, detail: str):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {criterion}: {status} - {detail}")
    return ok


def test_criterion_1_square_root_family_eval():
    t0 = time.perf_counter()
    worst_rel = 0.0
    for z_text, z in (("0.5", 0.5), ("-1", -1.0), ("0.3,0.4", 0.3 + 0.4j)):
        report, code = run(
            ["eval", "-f", "(t*(1-t))^(-0.5)", "-z", z_text, "--sing", "0.5,0.5"]
        )
        assert code == 0
        want = math.pi * (1.0 - z) ** -0.5
        res = report["results"]
        got = complex(res[0]["value"], res[1]["value"] if len(res) > 1 else 0.0)
        worst_rel = max(worst_rel, abs(got - want) / abs(want))
    worst_abs = 0.0
    for z_text in ("1.5", "2", "4"):
        report, code = run(
            ["eval", "-f", "(t*(1-t))^(-0.5)", "-z", z_text, "--pv",
             "--sing", "0.5,0.5"]
        )
        assert code == 0
        worst_abs = max(worst_abs, abs(report["results"][0]["value"]))
    elapsed = time.perf_counter() - t0
    ok = worst_rel < 1e-7 and worst_abs < 1e-6 and elapsed < 1.0
    assert _line(
        "1",
        ok,
        f"off-ray rel err {worst_rel:.2e} (<1e-7), ray abs {worst_abs:.2e} "
        f"(<1e-6), runtime {elapsed:.2f}s (<1s)",
    )


def test_criterion_2_monotone_ceiling_and_spectrum():
    t0 = time.perf_counter()
    sizes = [1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096]
    norms = [norm_p2(n) for n in sizes]
    monotone = all(b >= a - 1e-12 for a, b in zip(norms, norms[1:]))
    below_pi = all(v < math.pi for v in norms)
    lam = truncated_spectrum(256)
    confined = bool(np.all(lam > 0.0) and np.all(lam < math.pi))
    tiny_min = lam[0] < 1e-6
    elapsed = time.perf_counter() - t0
    ok = monotone and below_pi and confined and tiny_min and elapsed < 30.0
    assert _line(
        "2 (attainable clauses)",
        ok,
        f"norms nondecreasing={monotone}, all<pi={below_pi} "
        f"(norm(4096)={norms[-1]:.4f}), spectrum(256) in (0,pi)={confined}, "
        f"min={lam[0]:.1e} (<1e-6), runtime {elapsed:.1f}s (<30s)",
    )


def test_criterion_2b_norm_exceeds_three_at_4096():
    """States the criterion verbatim; fails, and that failure is correct.

    Measured truncation norms (power iteration, cross-checked against dense
    eigensolves at N <= 1024): 2.30381 (256), 2.44527 (1024), 2.55433 (4096).
    The approach to pi follows pi - norm(N) ~ 4.9/ln N, so norm(N) > 3.0
    first happens around N ~ exp(4.9/(pi-3)) ~ 1e15, far beyond any dense
    truncation.  The operator-level facts behind this clause are covered by
    the attainable clauses of criterion 2 and by criterion 11.
    """
    value = norm_p2(4096)
    assert _line(
        "2b (spec defect: unattainable)",
        value > 3.0,
        f"norm_p2(4096) = {value:.6f}, criterion demands > 3.0; "
        f"pi - norm ~ 4.9/ln N makes that N ~ 1e15",
    )


def test_criterion_3_moment_columns_match_hilbert_matrix():
    worst = 0.0
    G = HilbertOpTrunc(8).matrix()
    for k in range(6):
        spec = FuncSpec(lambda t, k=k: t**k, label=f"t^{k}")
        c = moments(spec, 8, CFG)
        worst = max(worst, float(np.max(np.abs(c - G[:, k]))))
    ok = worst < 1e-10
    assert _line("3", ok, f"max |moment - matrix column| = {worst:.2e} (<1e-10)")


def test_criterion_4_lebesgue_ratio_windows():
    t0 = time.perf_counter()
    r2 = lp_lower_bound_ratio(2.0, 0.45, CFG)
    ok2 = 0.85 * math.pi < r2 < math.pi
    bound3 = math.pi / math.sin(math.pi / 3.0)
    r3 = lp_lower_bound_ratio(3.0, 0.3, CFG)
    ok3 = 0.8 * bound3 < r3 < 1.0 * bound3
    elapsed = time.perf_counter() - t0
    ok = ok2 and ok3 and elapsed < 5.0
    assert _line(
        "4",
        ok,
        f"ratio(2,0.45)={r2:.4f} in (0.85pi,pi)={ok2}; "
        f"ratio(3,0.3)={r3:.4f} in (0.8,1.0)x{bound3:.4f}={ok3}; "
        f"runtime {elapsed:.1f}s (<5s)",
    )


def test_criterion_5_noncompactness_witness():
    ok = True
    details = []
    for a in (0.5, 0.9, 0.99):
        for p in (2.0, 3.0):
            computed, bound = noncompactness_witness(a, p, CFG)
            ok = ok and computed >= bound - 1e-6
            details.append(f"(a={a},p={p}): {computed:.4f}>={bound:.4f}")
    bound_half = noncompactness_witness(0.5, 2.0, CFG)[1]
    ok = ok and abs(bound_half - 2.0 / 3.0) < 1e-12
    assert _line("5", ok, "; ".join(details))


def test_criterion_6_inversion_round_trips():
    t0 = time.perf_counter()
    suite = [
        (lambda t: np.ones_like(t), lambda t: 1.0),
        (lambda t: t * np.ones_like(t), lambda t: t),
        (lambda t: t**2, lambda t: t**2),
        (lambda t: np.sin(np.pi * t), lambda t: math.sin(math.pi * t)),
    ]
    icfg = QuadConfig(abs_tol=1e-9, rel_tol=1e-9)
    worst_r = worst_c = 0.0
    for fe, truth in suite:
        oracle = TransformOracle.from_funcspec(FuncSpec(fe, label="f"), icfg)
        for t in (0.2, 0.3, 0.5, 0.7):
            worst_r = max(worst_r, abs(real_invert(oracle, t) - truth(t)))
            worst_c = max(worst_c, abs(complex_invert(oracle, t) - truth(t)))
    step = TransformOracle.from_closed_form(lambda z: -np.log(1.0 - z / 2.0) / z)
    mid_err = abs(complex_invert(step, 0.5) - 0.5)
    elapsed = time.perf_counter() - t0
    ok = worst_r < 1e-3 and worst_c < 1e-3 and mid_err < 1e-2 and elapsed < 60.0
    assert _line(
        "6",
        ok,
        f"real max err {worst_r:.1e}, complex max err {worst_c:.1e} (<1e-3), "
        f"step midpoint err {mid_err:.1e} (<1e-2), runtime {elapsed:.1f}s (<60s)",
    )


def test_criterion_7_identity_suite():
    one = const_spec(1.0)
    t_id = FuncSpec(lambda t: t * np.ones_like(t), label="t")
    t1mt = FuncSpec(lambda t: t * (1.0 - t), label="t(1-t)")
    sinp = FuncSpec(lambda t: np.sin(np.pi * t), label="sin(pi t)")
    suite = (one, t_id, t1mt, sinp)
    worst_16 = 0.0
    for kind, a in (
        (IdentityKind.REFLECT, None),
        (IdentityKind.DILATE, 2.0),
        (IdentityKind.MULT_T, None),
        (IdentityKind.DIV_SHIFT, 1.0),
        (IdentityKind.ANTIDERIVATIVE, None),
    ):
        case = IdentityCase(kind, a=a)
        worst_16 = max(worst_16, max(identity_residual(f, case, CFG) for f in suite))
    worst_5 = 0.0
    for f, df in (
        (t1mt, FuncSpec(lambda t: 1.0 - 2.0 * t, label="d")),
        (sinp, FuncSpec(lambda t: np.pi * np.cos(np.pi * t), label="d")),
    ):
        case = IdentityCase(
            IdentityKind.DERIVATIVE, derivative=df, f_at_0=0.0, f_at_1=0.0
        )
        worst_5 = max(worst_5, identity_residual(f, case, CFG))
    ok = worst_16 < 1e-6 and worst_5 < 1e-4
    assert _line(
        "7",
        ok,
        f"items 1-4,6 worst residual {worst_16:.2e} (<1e-6); "
        f"item 5 worst residual {worst_5:.2e} (<1e-4)",
    )


def test_criterion_8_convolution_adjudication():
    one = const_spec(1.0)
    t_id = FuncSpec(lambda t: t * np.ones_like(t), label="t")
    t2 = FuncSpec(lambda t: t**2, label="t^2")
    zpts = (0.3 + 0.0j, -0.5 + 0.0j, 0.2 + 0.1j)
    r1 = convolution_theorem_residual(one, t_id, zpts, CFG, form="symmetric")
    r2 = convolution_theorem_residual(t_id, t2, zpts, CFG, form="symmetric")
    printed_fail = convolution_theorem_residual(
        one, const_spec(0.0), (0.3 + 0.0j,), CFG, form="printed"
    )
    ok = r1 < 1e-5 and r2 < 1e-5 and printed_fail > 0.1
    assert _line(
        "8",
        ok,
        f"symmetric form residuals: (1,t) {r1:.1e}, (t,t^2) {r2:.1e} (<1e-5); "
        f"printed form residual at g=0: {printed_fail:.3f} (bounded away from 0)",
    )


def _manufactured_g(lam):
    def ev(t):
        return t * (1.0 - t) + lam * (
            t * (1.0 - t) * np.log(t / (1.0 - t)) + t - 0.5
        )

    return FuncSpec(ev, label="manufactured")


def test_criterion_9_singular_equation_solver():
    worst = 0.0
    details = []
    for lam in (0.01, 0.1, 0.5, -0.1):
        prob = EquationProblem(lam, _manufactured_g(lam))
        sol = solve_singular_equation(prob, CFG)
        res = equation_residual(prob, sol, CFG)
        worst = max(worst, res)
        details.append(f"lam={lam}: {res:.1e}")
    alpha_ok = abs(solve_alpha(1.0 / math.pi) - 0.25) < 1e-12
    for lam in (0.01, 0.1, 0.5, -0.1):
        want = (
            math.atan(lam * math.pi) / math.pi
            if lam > 0
            else 1.0 + math.atan(lam * math.pi) / math.pi
        )
        alpha_ok = alpha_ok and abs(solve_alpha(lam) - want) < 1e-12
    ok = worst < 1e-3 and alpha_ok
    assert _line(
        "9",
        ok,
        f"residuals {', '.join(details)} (<1e-3); alpha oracle match "
        f"to 1e-12 incl. alpha(1/pi)=1/4: {alpha_ok}",
    )


def test_criterion_10_bergman_divergence():
    h10 = bergman_row_divergence(0, 10)
    ok = abs(h10 - 2.92896825) <= 1e-8 + 4e-9  # exact H_10 = 2.9289682539...
    ok = abs(h10 - sum(1.0 / (k + 1) for k in range(10))) < 1e-12 and ok
    details = [f"H10={h10:.8f}"]
    for K in (512, 1024, 2048):
        diff = bergman_row_divergence(0, 2 * K) - bergman_row_divergence(0, K)
        ok = ok and abs(diff - math.log(2.0)) < 0.05
        details.append(f"K={K}: diff={diff:.5f}")
    assert _line("10", ok, "; ".join(details) + " (ln 2 +- 0.05)")


def test_criterion_11_desk_scale_caveat_substitutes():
    # the exact norm pi and spectrum [0,pi] are infinite-dimensional facts;
    # what is checkable at desk scale: truncations stay strictly inside,
    # grow monotonically, and the Lebesgue-space ratio respects its window
    norms = [norm_p2(n) for n in (64, 256, 1024)]
    inside = all(v < math.pi for v in norms)
    growing = norms[0] < norms[1] < norms[2]
    lam = truncated_spectrum(128)
    confined = bool(np.all(lam > 0.0) and np.all(lam < math.pi))
    ratio = lp_lower_bound_ratio(2.0, 0.45, CFG)
    window = 0.85 * math.pi < ratio < math.pi
    ok = inside and growing and confined and window
    assert _line(
        "11",
        ok,
        "property-based substitutes hold: truncation norms grow toward pi "
        f"from below ({norms[0]:.3f} < {norms[1]:.3f} < {norms[2]:.3f} < pi), "
        "spectrum confined to (0, pi), Lebesgue ratio inside its window",
    )
