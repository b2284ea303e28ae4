"""Exception hierarchy shared across the package."""


class FWLabError(Exception):
    """Base class for all package-specific failures."""


class DomainError(FWLabError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ZeroGradientError(FWLabError):
    """The LMO was queried with a zero gradient; the iterate is optimal."""


class DegenerateDirectionError(FWLabError):
    """Line search over a zero-length segment (v == x)."""


class InfeasibleStartError(FWLabError):
    """Initial point lies outside the feasible ball."""


class UnsupportedObjectiveError(FWLabError):
    """Step rule and objective are incompatible (short steps need the quadratic)."""


class UnsupportedExponentError(FWLabError, ValueError):
    """Ball exponent outside the supported range for slow-curve constants."""


class BracketFailureError(FWLabError):
    """Fixed-point bisection bracket does not enclose a sign change."""


class InsufficientDataError(FWLabError):
    """Not enough usable points for a statistical fit."""


class NumericError(FWLabError):
    """A numeric invariant failed at runtime (non-monotone descent, no convergence)."""
