"""Numerical toolbox for the Markov-Stieltjes transform of functions on (0,1):

    Sf(z) = int_0^1 f(t) / (1 - t z) dt,

analytic off the ray [1, oo) and principal-value defined on it.  The
package makes the transform executable end to end: adaptive quadrature
tolerant of endpoint singularities, both inversion formulas, the Hilbert
matrix as the transform's coefficient-space representation, the
operational identity suite, the convolution with its product theorem, and
the closed-form solver for the dominant singular integral equation
x + lambda PV int x(u)/(t-u) du = g.
"""

from .errors import (
    BranchMismatch,
    DomainError,
    EvalError,
    ExprSyntaxError,
    HypothesisViolation,
    IntegrabilityViolation,
    InvalidSpec,
    NonConvergenceWarning,
    OracleFailure,
    PoleAtEndpoint,
    PoleNearCutEdgeWarning,
    SizeLimit,
    SizeMismatch,
    UnknownFunction,
    ZeroLambda,
)
from .quadrature import (
    FuncSpec,
    PVResult,
    QuadConfig,
    integrate,
    integrate_interval,
    integrate_piecewise,
    pv_pole_integral,
    reflected,
)
from .transform import (
    Branch,
    EvalPoint,
    TransformValue,
    const_spec,
    f_gamma,
    f_gamma_lp_norm,
    forward,
    forward_batch,
    forward_via_hilbert,
    moments,
    poly_spec,
    sf_gamma_closed_form,
)
from .inversion import (
    EtaSchedule,
    TransformOracle,
    boundary_mean_values,
    complex_invert,
    real_invert,
)
from .hilbert_operator import (
    CoeffSeq,
    HilbertOpTrunc,
    apply,
    bergman_row_divergence,
    lp_lower_bound_ratio,
    lp_probe_ratio,
    lp_sequence_norm_bound,
    noncompactness_witness,
    norm_p2,
    truncated_spectrum,
)
from .algebra import (
    EquationProblem,
    IdentityCase,
    IdentityKind,
    chebyshev_grid,
    convolution_theorem_residual,
    convolve,
    equation_residual,
    identity_residual,
    solve_alpha,
    solve_singular_equation,
)

__version__ = "0.1.0"
