"""Exception hierarchy shared by all evaluators."""


class EpsteinError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EpsteinError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class BranchCutError(DomainError):
    """An elliptic parameter sits on the cut [1, +inf)."""


class RegionError(DomainError):
    """A point lies outside the open region an identity is stated on."""


class PathError(DomainError):
    """An integration segment crosses the branch cut of the integrand."""


class PrecisionError(EpsteinError, ArithmeticError):
    """A requested accuracy could not be reached within the work budget."""


class ConvergenceError(PrecisionError):
    """An iteration did not converge within its cap."""


class TruncationBudgetError(PrecisionError):
    """A series would need more terms than the policy allows."""


class AccuracyError(PrecisionError):
    """A quadrature error estimate stayed above tolerance at max depth."""
