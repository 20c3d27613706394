class DomainError(ValueError):
    """Input outside the domain of an operation (zero polynomial, degree too small, ...)."""


class PreconditionError(ValueError):
    """A documented precondition of an operation does not hold."""


class NumericFailure(ArithmeticError):
    """A floating-point routine did not reach its tolerance within budget."""
