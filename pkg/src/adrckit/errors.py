"""Exception types shared across the package."""


class AdrcKitError(Exception):
    """Base class for every error raised by adrckit."""


class DimensionError(AdrcKitError, ValueError):
    """Input shapes violate an operation's contract."""


class SingularMatrixError(AdrcKitError):
    """A linear solve hit a pivot that is zero to working precision."""

    def __init__(self, message: str, pivot: float = 0.0):
        super().__init__(message)
        self.pivot = pivot


class RootFindingError(AdrcKitError, ValueError):
    """Roots were requested for a polynomial that has none (zero or constant)."""


class NumericsError(AdrcKitError):
    """A computed result failed its own accuracy contract."""


class ConvergenceError(AdrcKitError):
    """An iterative solver ran out of iterations."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class DefinitenessError(AdrcKitError):
    """A matrix required to be positive definite is not."""


class ModeError(AdrcKitError, ValueError):
    """Tuning mode is invalid for the requested plant order."""


class InterconnectionError(AdrcKitError):
    """Loop interconnection would create an algebraic loop."""


class DivergenceError(AdrcKitError):
    """A simulated loop signal blew up."""

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class NormalizationError(AdrcKitError, ValueError):
    """A metric cannot be normalized (zero reference value)."""
