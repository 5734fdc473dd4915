"""Exception hierarchy shared by every module."""


class SqtriError(Exception):
    """Base class for all package errors."""


class DomainError(SqtriError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ArityError(SqtriError, ValueError):
    """Too few terms supplied to a sequence operation."""


class PrecisionError(SqtriError, ArithmeticError):
    """Working precision cannot support the requested result."""


class IntegrityError(SqtriError, ValueError):
    """A value violates a structural invariant (e.g. not a Pell solution)."""


class DivergentTailError(SqtriError, ArithmeticError):
    """Geometric tail ratio does not exceed one."""


class DegenerateSequenceError(SqtriError, ZeroDivisionError):
    """A sequence contains a zero where a ratio is required."""


class VerificationError(SqtriError):
    """A predicted value failed its exact verification."""
