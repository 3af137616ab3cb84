"""Solving the dominant singular integral equation in closed form.

    x(t) + lambda PV int_0^1 x(u)/(t-u) du = g(t)

The solution rides entirely on the transform: weight the right-hand side
by t^a (1-t)^-a with tan(a pi) = lambda pi, transform it, attach (1-s)^a,
invert along the real axis, scale by cos(a pi).  Validation is by a
manufactured solution: pick x0, synthesize g from it, and ask the solver
for x0 back.
"""

import math

import numpy as np

from mstieltjes import (
    EquationProblem,
    FuncSpec,
    QuadConfig,
    chebyshev_grid,
    equation_residual,
    solve_alpha,
    solve_singular_equation,
)

cfg = QuadConfig()

print("== the exponent alpha ==")
for lam in (1.0 / math.pi, -1.0 / math.pi, 0.1, 0.5, -0.1):
    a = solve_alpha(lam)
    print(f"  lambda={lam:+.6f}: alpha={a:.12f}   tan(a pi)/pi = {math.tan(a*math.pi)/math.pi:+.6f}")

print("\n== manufactured solution x0 = t(1-t) ==")
# g = x0 + lambda * PV int x0(u)/(t-u) du, where the PV part has the closed
# form t(1-t) ln(t/(1-t)) + t - 1/2


def make_g(lam):
    def ev(t):
        return t * (1.0 - t) + lam * (
            t * (1.0 - t) * np.log(t / (1.0 - t)) + t - 0.5
        )

    return FuncSpec(ev, label="g")


grid = chebyshev_grid(9)
for lam in (0.01, 0.1, 0.5, -0.1):
    prob = EquationProblem(lam, make_g(lam), grid=grid)
    sol = solve_singular_equation(prob, cfg)
    worst = max(abs(x - t * (1.0 - t)) for t, x in sol)
    res = equation_residual(prob, sol, cfg)
    print(f"  lambda={lam:+.2f} (alpha={prob.alpha:.4f}): "
          f"max |x - x0| = {worst:.1e}, equation residual = {res:.1e}")

print("\n== one solution in detail (lambda = 0.1) ==")
prob = EquationProblem(0.1, make_g(0.1), grid=chebyshev_grid(7))
print("       t        solved x(t)      t(1-t)")
for t, x in solve_singular_equation(prob, cfg):
    print(f"  {t:.6f}   {x:+.10f}   {t*(1-t):+.10f}")

print("\n== small coupling agrees with the two-term Neumann series ==")
lam = 0.01
prob = EquationProblem(lam, make_g(lam), grid=(0.3, 0.5, 0.7))
sol = solve_singular_equation(prob, cfg)
from mstieltjes import pv_pole_integral  # PV int g(u)/(u-t) du

g = make_g(lam)
for t, x in sol:
    g_t = float(g.eval(np.array([t]))[0])
    kg = -pv_pole_integral(g, t, cfg).value
    print(f"  t={t}: solver {x:+.8f}   g - lambda K g = {g_t - lam * kg:+.8f}")
