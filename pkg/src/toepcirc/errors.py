"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class PreconditionError(ValueError):
    """A structural precondition on an input (e.g. symmetry) does not hold."""


class ConvergenceError(RuntimeError):
    """An iterative routine did not converge within its sweep budget."""
