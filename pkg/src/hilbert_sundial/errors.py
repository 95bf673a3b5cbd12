"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class HilbertSundialError(ValueError):
    """Base class for every error raised by this package."""


class ZeroInverse(HilbertSundialError, ZeroDivisionError):
    pass


class NotPrime(HilbertSundialError):
    pass


class PrimeTooSmall(HilbertSundialError):
    pass


class PrimeTooLarge(HilbertSundialError):
    pass


class InvalidDimension(HilbertSundialError):
    pass


class DimensionMismatch(HilbertSundialError):
    pass


class DimensionTooSmall(HilbertSundialError):
    pass


class EmptyInput(HilbertSundialError):
    pass


class DegenerateInput(HilbertSundialError):
    """Coordinates do not define the requested object (coincident points, ...)."""


class NotSkew(HilbertSundialError):
    pass


class UnrecognizedPosition(HilbertSundialError):
    """A component sits in a position the residual/trace rule table does not cover."""


class OutOfStatedRange(HilbertSundialError):
    pass
