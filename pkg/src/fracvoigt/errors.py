"""Exception types shared across the package."""


class FracvoigtError(Exception):
    """Base class for all library errors."""


class DomainError(FracvoigtError, ValueError):
    """An argument violates a documented invariant or precondition."""


class AccuracyError(FracvoigtError, ArithmeticError):
    """A value was requested outside the numerically supported domain,
    or no evaluation branch converged to the target tolerance."""


class EvaluationError(FracvoigtError, ValueError):
    """Evaluating a user-supplied function produced an undefined or
    non-finite result (division by zero, log of a nonpositive value, ...)."""
