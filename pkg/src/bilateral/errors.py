"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of the function (integer alpha, k < 2, ...)."""


class ExactModeUnavailable(ValueError):
    """No exact closed form for this input; callers fall back to numerics."""


class InsufficientPrecision(ArithmeticError):
    """A ball could not be separated from zero at the precision cap."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
