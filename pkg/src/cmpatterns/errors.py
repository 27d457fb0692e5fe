"""Exception types shared across the package."""


class CmpatternsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(CmpatternsError, ValueError):
    """A quantity was requested outside its mathematical domain."""


class NoPositivePredator(CmpatternsError, ValueError):
    """The predator component at the candidate prey level is not positive."""


class InsufficientModes(CmpatternsError, ValueError):
    """The sampled wavenumber range stops before the dispersion parabola vertex."""


class EigenvalueOnBandBoundary(CmpatternsError, ValueError):
    """A Neumann eigenvalue sits on an instability band endpoint; the mode
    count (and hence the fixed point index) is ill defined there."""


class NonpositiveInitialData(CmpatternsError, ValueError):
    """Initial data must be strictly positive in both components."""


class NonpositiveField(CmpatternsError, ValueError):
    """The Lyapunov functional needs a strictly positive field."""


class StepRejected(CmpatternsError, RuntimeError):
    """A time step produced a negative or non-finite value."""


class NoConvergence(CmpatternsError, RuntimeError):
    """Newton iteration failed to reach the residual tolerance."""


class SingularJacobian(CmpatternsError, RuntimeError):
    """The Newton linear system is singular to working precision."""


class ConfigError(CmpatternsError, ValueError):
    """A run configuration file could not be parsed or validated."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
