"""The forward transform on both branches of its domain.

Sf(z) = int_0^1 f(t)/(1-tz) dt is analytic for z off the ray [1, oo); on
the ray the kernel pole at t = 1/z turns the integral into a principal
value.  The family f(t) = (t(1-t))^(-1/2) is the classic worked example:
its transform is pi (1-z)^(-1/2) off the ray and identically zero on it,
so the ray really is a natural boundary of nothing-continues-past-here.
"""

import math

import numpy as np

from mstieltjes import (
    EvalPoint,
    FuncSpec,
    QuadConfig,
    f_gamma,
    forward,
    forward_via_hilbert,
    moments,
    sf_gamma_closed_form,
)

cfg = QuadConfig()
sqrt_family = FuncSpec(lambda t: (t * (1.0 - t)) ** -0.5, 0.5, 0.5, "(t(1-t))^-1/2")

print("== the square-root family ==")
for z in (0.5, -1.0, 0.3 + 0.4j):
    got = forward(sqrt_family, z, cfg).value
    want = math.pi * (1.0 - z) ** -0.5
    print(f"  Sf({z})  = {got:.9f}   closed form {want:.9f}")
for z in (1.5, 2.0, 4.0):
    got = forward(sqrt_family, EvalPoint.at(z), cfg).value
    print(f"  Sf({z}) [PV] = {got:.2e}   (zero on the whole ray)")

print("\n== a constant: Sf(z) = -ln(1-z)/z ==")
one = FuncSpec(lambda t: np.ones_like(t), label="1")
print(f"  S1(0.5) = {forward(one, 0.5, cfg).value.real:.12f}"
      f"   2 ln 2 = {2 * math.log(2):.12f}")

print("\n== the ray through the Hilbert transform ==")
# On the ray, Sf(z) = (pi/z) (H f1)(1/z) with f1 the zero extension of f.
# forward_via_hilbert computes the PV by symmetric excision + Richardson,
# an entirely different route than the subtraction used by forward.
spec_t = FuncSpec(lambda t: t, label="t")
for z in (1.25, 1.5, 2.0, 4.0):
    a = forward(spec_t, EvalPoint.at(z), cfg).value.real
    b = forward_via_hilbert(spec_t, z, cfg).value.real
    print(f"  z={z}:  subtraction {a:+.10f}   excision {b:+.10f}   "
          f"diff {abs(a - b):.1e}")

print("\n== moments are the Taylor coefficients at the origin ==")
c = moments(one, 6, cfg)
print(f"  c_n for f=1: {np.array2string(c, precision=6)}  (1/(n+1))")
z = 0.4
partial = sum(cn * z**n for n, cn in enumerate(moments(one, 30, cfg)))
print(f"  sum c_n z^n at z={z}: {partial:.10f}   "
      f"Sf(z) = {forward(one, z, cfg).value.real:.10f}")

print("\n== the extremal family f_gamma = (t/(1-t))^gamma ==")
for gamma in (0.25, -0.25, 0.45):
    got = forward(f_gamma(gamma), 0.5, cfg).value
    want = sf_gamma_closed_form(gamma, 0.5)
    print(f"  gamma={gamma:+.2f}: quadrature {got.real:.9f}   "
          f"closed form {want.real:.9f}")
