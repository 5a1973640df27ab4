"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Raised for malformed sign-pattern text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class CapExceededError(ValueError):
    """Raised when a request exceeds a size cap that exists on purpose."""


class ConvergenceError(RuntimeError):
    """Root iteration failed to reach the residual target."""

    def __init__(self, message: str, worst_residual: float):
        super().__init__(message)
        self.worst_residual = worst_residual


class NumericalConsistencyError(RuntimeError):
    """A quantity that must be exact (integer or identity) failed to snap."""


class WitnessDegenerateError(RuntimeError):
    """Eigenvector witness construction collapsed; names the failing target."""

    def __init__(self, message: str, target_index: int):
        super().__init__(message)
        self.target_index = target_index
