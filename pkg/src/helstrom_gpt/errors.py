"""Exception types and the shared numerical tolerances."""

#: algebraic / LP comparisons
TAU_NUM = 1e-9
#: geometric residuals (points, segments, boundaries)
TAU_GEOM = 1e-7


class HelstromError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(HelstromError, ValueError):
    """Malformed input: dimensions, priors, states outside a space, ..."""


class NumericalError(HelstromError, ArithmeticError):
    """A numerical routine failed (iteration cap, residual check, non-convergence)."""
