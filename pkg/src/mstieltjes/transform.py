"""Forward Markov-Stieltjes transform on both branches of its domain.

The transform of an integrable function f on (0,1) is

    Sf(z) = int_0^1 f(t) / (1 - t z) dt,

analytic for z off the ray [1, oo).  On the ray the integral is a Cauchy
principal value: the kernel has a simple pole at t = 1/z, and

    Sf(z) = -(1/z) PV int_0^1 f(t) / (t - 1/z) dt.

Also here: the transform evaluated through the finite Hilbert transform
relation (an independent route onto the ray), the moment sequence
c_n = int f(t) t^n dt, the closed forms for the extremal family
f_gamma(t) = (t/(1-t))^gamma, and its exact Lebesgue p-norm.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import BranchMismatch, DomainError, PoleAtEndpoint
from .quadrature import FuncSpec, PVResult, QuadConfig, integrate_interval, pv_pole_integral

__all__ = [
    "Branch",
    "EvalPoint",
    "TransformValue",
    "forward",
    "forward_batch",
    "forward_via_hilbert",
    "moments",
    "f_gamma",
    "sf_gamma_closed_form",
    "f_gamma_lp_norm",
    "const_spec",
    "poly_spec",
]


class Branch(Enum):
    ANALYTIC = "analytic"
    PRINCIPAL_VALUE = "principal_value"


def _on_cut(z: complex) -> bool:
    return z.imag == 0.0 and z.real >= 1.0


@dataclass(frozen=True)
class EvalPoint:
    """An evaluation point z paired with the branch it belongs to."""

    z: complex
    branch: Branch

    def __post_init__(self):
        z = complex(self.z)
        if self.branch is Branch.ANALYTIC and _on_cut(z):
            raise BranchMismatch(f"z={z} lies on [1,oo); use the PV branch")
        if self.branch is Branch.PRINCIPAL_VALUE and not _on_cut(z):
            raise BranchMismatch(f"z={z} is off [1,oo); use the analytic branch")

    @staticmethod
    def at(z: complex) -> "EvalPoint":
        """Classify z onto its natural branch."""
        z = complex(z)
        branch = Branch.PRINCIPAL_VALUE if _on_cut(z) else Branch.ANALYTIC
        return EvalPoint(z, branch)


@dataclass(frozen=True)
class TransformValue:
    value: complex
    err_estimate: float


def const_spec(value: float = 1.0, label: str | None = None) -> FuncSpec:
    """FuncSpec for a constant function."""
    return FuncSpec(
        lambda t, v=float(value): np.full_like(t, v),
        label=label if label is not None else f"const({value})",
    )


def poly_spec(coeffs: Sequence[float], label: str | None = None) -> FuncSpec:
    """FuncSpec for a polynomial with ascending coefficients."""
    c = np.asarray(coeffs, dtype=float)
    return FuncSpec(
        lambda t: np.polynomial.polynomial.polyval(t, c),
        label=label if label is not None else "poly",
    )


def f_gamma(gamma: float) -> FuncSpec:
    """The extremal family f_gamma(t) = (t/(1-t))**gamma, |gamma| < 1."""
    if not abs(gamma) < 1.0:
        raise DomainError(f"f_gamma requires |gamma| < 1, got {gamma}")
    return FuncSpec(
        lambda t: (t / (1.0 - t)) ** gamma,
        sing_left=max(0.0, -gamma),
        sing_right=max(0.0, gamma),
        label=f"f_gamma({gamma})",
    )


def forward(
    f: FuncSpec, p: "EvalPoint | complex", cfg: QuadConfig = QuadConfig()
) -> TransformValue:
    """Evaluate Sf at a point on either branch.

    Off the ray [1,oo) the kernel is split into real and imaginary parts and
    each is integrated as a real integral.  On the ray the pole at t = 1/z
    is handled by principal-value subtraction; f must be smooth near the
    pole (caller contract).  z = 1 puts the pole at the endpoint t = 1 and
    is rejected.
    """
    if not isinstance(p, EvalPoint):
        p = EvalPoint.at(p)
    z = complex(p.z)
    if p.branch is Branch.PRINCIPAL_VALUE:
        x = z.real
        if x == 1.0:
            raise PoleAtEndpoint("z=1 places the PV pole at the endpoint t=1")
        c = 1.0 / x
        res = pv_pole_integral(f, c, cfg)
        return TransformValue(-res.value / x, res.err_estimate / x)
    a, b = z.real, z.imag
    if b == 0.0:
        res = integrate_interval(
            lambda t: f.eval(t) / (1.0 - t * a), 0.0, 1.0, cfg, what=f.label or "Sf"
        )
        return TransformValue(complex(res.value, 0.0), res.err_estimate)
    re = integrate_interval(
        lambda t: f.eval(t) * (1.0 - t * a) / ((1.0 - t * a) ** 2 + (t * b) ** 2),
        0.0,
        1.0,
        cfg,
        what=f.label or "Sf.re",
    )
    im = integrate_interval(
        lambda t: f.eval(t) * (t * b) / ((1.0 - t * a) ** 2 + (t * b) ** 2),
        0.0,
        1.0,
        cfg,
        what=f.label or "Sf.im",
    )
    return TransformValue(
        complex(re.value, im.value), math.hypot(re.err_estimate, im.err_estimate)
    )


def forward_via_hilbert(
    f: FuncSpec,
    y: float,
    cfg: QuadConfig = QuadConfig(),
    eps_values: Sequence[float] = (0.04, 0.02, 0.01, 0.005),
) -> TransformValue:
    """Sf on the ray via the Hilbert-transform relation.

    Writes Sf(y) = (pi/y) (H f1)(1/y) where f1 extends f by zero off (0,1)
    and H is the Hilbert transform.  The PV here is computed by symmetric
    excision around the pole with Richardson extrapolation in the excision
    half-width (error expands in odd powers), which keeps this route
    independent of the subtraction method used by `forward`.
    """
    if not y > 1.0:
        raise DomainError(f"the Hilbert-relation route needs y > 1, got {y}")
    x = 1.0 / y
    pv = _pv_excision(f, x, cfg, eps_values)
    hilbert = -pv.value / math.pi  # (1/pi) PV int f(t)/(x - t) dt
    return TransformValue(
        complex(math.pi / y * hilbert, 0.0), pv.err_estimate / y
    )


def _pv_excision(
    h: FuncSpec, c: float, cfg: QuadConfig, eps_values: Sequence[float]
) -> PVResult:
    """PV int h(t)/(t-c) dt by symmetric excision + odd-power Richardson."""
    eps_values = sorted(eps_values, reverse=True)
    if eps_values[0] >= min(c, 1.0 - c):
        raise PoleAtEndpoint(
            f"excision width {eps_values[0]} does not fit around c={c}"
        )

    def kernel(t: np.ndarray) -> np.ndarray:
        return h.eval(t) / (t - c)

    vals = []
    err_q = 0.0
    for eps in eps_values:
        left = integrate_interval(kernel, 0.0, c - eps, cfg, what="pv-excision")
        right = integrate_interval(kernel, c + eps, 1.0, cfg, what="pv-excision")
        vals.append(left.value + right.value)
        err_q = max(err_q, left.err_estimate + right.err_estimate)
    # excised(eps) = PV - 2 h'(c) eps - (h'''(c)/9) eps^3 - ...: odd powers
    tableau = list(vals)
    n = len(tableau)
    powers = (1, 3, 5, 7)
    for stage in range(min(n - 1, len(powers))):
        ratio = 2.0 ** powers[stage]
        tableau = [
            (ratio * tableau[i + 1] - tableau[i]) / (ratio - 1.0)
            for i in range(len(tableau) - 1)
        ]
    err = abs(tableau[-1] - vals[-1]) * 0.01 + err_q
    return PVResult(tableau[-1], err, True)


def forward_batch(
    f: FuncSpec, zs: np.ndarray, cfg: QuadConfig = QuadConfig()
) -> np.ndarray:
    """Sf at many points off the ray at once, sharing one adaptive
    refinement across the batch (kernel matrix per level).

    Accepts a real or complex array; every point must lie off [1, oo).
    Convergence is judged per point against max(abs_tol, rel_tol |value|,
    50 eps / |1 - z|): the last term is the rounding floor of the kernel
    denominator 1 - t z for points hugging z = 1, where no refinement can
    improve the value further (such points arise as outer quadrature nodes
    whose weights scale like |1 - z|, so the floor does not affect results
    built on top of this batch).
    """
    import warnings

    from .errors import NonConvergenceWarning
    from .quadrature import _canonical_nodes

    zs = np.asarray(zs)
    flat = zs.ravel()
    if np.any((flat.imag == 0.0) & (flat.real >= 1.0)):
        raise BranchMismatch("forward_batch requires all points off [1,oo)")
    out = np.empty(flat.shape, dtype=complex)
    chunk = 512
    eps = np.finfo(float).eps
    for lo in range(0, len(flat), chunk):
        z = flat[lo : lo + chunk]
        noise_floor = 50.0 * eps / np.maximum(np.abs(1.0 - z), eps)
        vals = np.zeros(len(z), dtype=complex)
        prev = None
        ok = False
        worst = math.inf
        for level in range(cfg.max_refinement_level + 1):
            dist01, right, dxdw = _canonical_nodes(level)
            t = np.where(right, 1.0 - dist01, dist01)
            keep = (t > 0.0) & (t < 1.0)
            t = t[keep]
            ft_w = np.asarray(f.eval(t), dtype=float) * dxdw[keep]
            kern = 1.0 / (1.0 - t[None, :] * z[:, None])
            h = 2.0 ** (-level)
            vals = (0.5 * vals if level > 0 else 0.0) + h * (kern @ ft_w)
            if level >= 2 and prev is not None:
                err = np.abs(vals - prev)
                tol = np.maximum(
                    np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(vals)), noise_floor
                )
                worst = float(np.max(err / tol))
                if worst <= 1.0:
                    ok = True
                    break
            prev = vals.copy()
        if not ok:
            warnings.warn(
                f"batched transform evaluation hit the refinement cap "
                f"(worst error {worst:.1f}x its tolerance)",
                NonConvergenceWarning,
                stacklevel=2,
            )
        out[lo : lo + chunk] = vals
    return out.reshape(zs.shape)


def moments(f: FuncSpec, n_terms: int, cfg: QuadConfig = QuadConfig()) -> np.ndarray:
    """First n_terms moments c_n = int_0^1 f(t) t^n dt, n = 0..n_terms-1.

    These are the Taylor coefficients of Sf at the origin:
    Sf(z) = sum c_n z^n for |z| < 1.
    """
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    out = np.empty(n_terms)
    for n in range(n_terms):
        res = integrate_interval(
            lambda t, n=n: f.eval(t) * t**n, 0.0, 1.0, cfg, what=f"moment[{n}]"
        )
        out[n] = res.value
    return out


def sf_gamma_closed_form(gamma: float, z: complex) -> complex:
    """Closed form of S f_gamma off the ray:

        S f_gamma(z) = -(pi / sin(pi gamma)) (1/z) (1 - (1-z)**(-gamma)),

    with the principal branch of (1-z)**(-gamma) (cut along z in [1,oo)).
    """
    if gamma == 0.0 or not abs(gamma) < 1.0:
        raise DomainError(f"gamma must satisfy 0 < |gamma| < 1, got {gamma}")
    z = complex(z)
    if z == 0.0:
        raise DomainError("z=0: take the z->0 limit in the caller")
    if _on_cut(z):
        raise DomainError(f"z={z} lies on the cut [1,oo)")
    w = cmath.exp(-gamma * cmath.log(1.0 - z))  # (1-z)**(-gamma), principal
    return -(math.pi / math.sin(math.pi * gamma)) / z * (1.0 - w)


def f_gamma_lp_norm(gamma: float, p: float) -> float:
    """Exact Lebesgue p-norm of f_gamma:

        ||f_gamma||_p = (pi p gamma / sin(pi p gamma)) ** (1/p),

    valid for |p gamma| < 1 (Beta-integral evaluation of the p-th power).
    The gamma -> 0 limit is 1 and is returned exactly at gamma = 0.
    """
    if not p > 1.0:
        raise DomainError(f"p must exceed 1, got {p}")
    if gamma == 0.0:
        return 1.0
    x = p * gamma
    if not abs(x) < 1.0:
        raise DomainError(f"|p*gamma| must be < 1, got {x}")
    return (math.pi * x / math.sin(math.pi * x)) ** (1.0 / p)
