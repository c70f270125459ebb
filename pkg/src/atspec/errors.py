"""Exception types shared across the package."""


class AtspecError(Exception):
    """Base class for all package-specific errors."""


class InputError(AtspecError, ValueError):
    """Malformed input: bad quantum numbers, invalid config values, parse failures."""


class DomainError(AtspecError, ValueError):
    """Argument outside the physically supported domain of an operation."""


class NumericalError(AtspecError, RuntimeError):
    """A numerical procedure failed (singular solve, non-convergent fit)."""


class FitConvergenceError(NumericalError):
    """Least-squares fit exhausted its iteration budget.

    Carries the best parameters seen so far and the residual at that point.
    """

    def __init__(self, message, best_params=None, residual=None):
        super().__init__(message)
        self.best_params = best_params
        self.residual = residual
