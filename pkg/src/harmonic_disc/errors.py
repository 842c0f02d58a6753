"""Exception types shared across the solvers."""


class HarmonicError(Exception):
    """Base class for all errors raised by this package."""


class BoundarySpecError(HarmonicError, ValueError):
    """Malformed boundary expression, sample file or truncation request."""


class DomainError(HarmonicError, ValueError):
    """Evaluation point outside the closed disc (or on a kernel singularity)."""


class SolvabilityError(HarmonicError, ValueError):
    """An unknown region of a raster has no known pixel to anchor it."""

    def __init__(self, message, pixel=None):
        super().__init__(message)
        self.pixel = pixel


class ConvergenceError(HarmonicError, RuntimeError):
    """An iterative or Monte Carlo procedure failed to produce a result."""

    def __init__(self, message, abandoned=0):
        super().__init__(message)
        self.abandoned = abandoned
