"""Exception hierarchy shared by the numerical modules."""


class DiskSharpError(Exception):
    pass


class DomainError(DiskSharpError, ValueError):
    """Argument outside the domain of the function (poles, r >= 1, p <= 1, ...)."""


class NumericalError(DiskSharpError, ArithmeticError):
    """A numerical procedure failed to produce a trustworthy value."""


class ConvergenceError(NumericalError):
    pass


class ConsistencyError(NumericalError):
    """Two independent evaluation routes disagree beyond their error estimates."""
