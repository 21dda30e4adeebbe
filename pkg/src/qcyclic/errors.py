"""Exception types raised across the package."""


class CodingError(Exception):
    """Base class for all errors raised by qcyclic."""


class InvariantViolation(CodingError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class NonPrimitiveModulus(CodingError, ValueError):
    pass


class UnsupportedSize(CodingError, ValueError):
    pass


class DivisionByZero(CodingError, ZeroDivisionError):
    pass


class FieldMismatch(CodingError, ValueError):
    pass


class NonCoprime(CodingError, ValueError):
    pass


class HypothesisViolated(CodingError, ValueError):
    pass


class InapplicableM(CodingError, ValueError):
    """The requested m is outside the residue class or floor a result covers."""


class NotClosed(CodingError, ValueError):
    pass


class AlreadyEven(CodingError, ValueError):
    pass


class BudgetExceeded(CodingError):
    pass


class NonIntegralResult(InvariantViolation):
    pass
