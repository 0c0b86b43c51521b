"""Exception types shared across the package."""


class WaveError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WaveError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class RegimeMismatchError(DomainError):
    """A resolver was called with constants of the wrong rotation regime."""


class NoSolutionError(DomainError):
    """No parameter set exists for the requested inputs (current too strong)."""


class OutOfDomainError(DomainError):
    """An Eulerian point lies on or above the free surface."""


class SingularityError(DomainError):
    """A formula genuinely diverges at the requested input."""


class ConvergenceError(WaveError, RuntimeError):
    """An iterative solver failed to converge; carries the best iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
