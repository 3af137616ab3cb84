"""Exception and warning types shared across the library."""

from __future__ import annotations


class InvalidSpec(ValueError):
    """A function specification violates its invariants (e.g. non-integrable
    endpoint exponent)."""


class PoleAtEndpoint(ValueError):
    """A principal-value pole was placed at or outside the interval ends."""


class BranchMismatch(ValueError):
    """An evaluation point disagrees with its declared branch."""


class DomainError(ValueError):
    """A closed-form formula was called outside its domain of validity."""


class SizeMismatch(ValueError):
    """Operator/vector dimensions are incompatible."""


class SizeLimit(ValueError):
    """A dense computation was requested above the supported size."""


class ZeroLambda(ValueError):
    """The singular equation requires a nonzero coupling constant."""


class IntegrabilityViolation(ValueError):
    """The right-hand side of the singular equation fails the weighted
    integrability requirement."""


class HypothesisViolation(ValueError):
    """An identity was requested for a function outside its hypotheses."""


class OracleFailure(RuntimeError):
    """A transform oracle could not be evaluated where it was needed."""


class ExprSyntaxError(ValueError):
    """Expression text failed to parse.

    Attributes
    ----------
    offset : int
        Byte offset into the source at which parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownFunction(ExprSyntaxError):
    """Expression used a function name outside the supported set."""


class EvalError(ValueError):
    """Expression evaluated to a non-finite value inside (0,1)."""


class NonConvergenceWarning(RuntimeWarning):
    """A quadrature or extrapolation hit its refinement cap before meeting
    tolerance; the returned value carries ``converged=False``."""


class PoleNearCutEdgeWarning(RuntimeWarning):
    """The inversion pole 1/t sits close to the branch-cut edge, where PV
    interactions compound."""
