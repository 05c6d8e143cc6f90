"""Exception types raised across zaklab.

``ValidationError`` subclasses signal bad input (CLI exit code 2);
``NumericalError`` subclasses signal a numerically unusable problem
(CLI exit code 3).
"""


class ZaklabError(Exception):
    """Base class for all zaklab errors."""


class ValidationError(ZaklabError, ValueError):
    pass


class NumericalError(ZaklabError, ArithmeticError):
    pass


class SingularMatrix(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class UnsupportedDimension(ValidationError):
    pass


class InvalidDomain(ValidationError):
    pass


class DegenerateDomain(ValidationError):
    pass


class TruncationTooSmall(ValidationError):
    pass


class IncompatiblePair(ValidationError):
    pass


class TooManyFrequencies(ValidationError):
    pass


class SupportNotCovered(ValidationError):
    pass


class ConditionEGammaLambda(ValidationError):
    pass


class NotATiling(ValidationError):
    pass


class ZeroFunction(NumericalError):
    pass


class IllConditioned(NumericalError):
    pass
