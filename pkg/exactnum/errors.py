class FrickeError(Exception):
    """Base class for every error raised by this project."""


class UsageError(FrickeError, ValueError):
    """A precondition on the arguments was violated."""


class CycloZeroDivisionError(FrickeError, ZeroDivisionError):
    pass


class PrecisionError(FrickeError):
    """The requested result is not determined at the available truncation."""


class NotAJPolynomialError(PrecisionError):
    """j-reduction left a nonzero residual."""


class ConsistencyError(FrickeError):
    """An exact identity that must hold did not."""


class ZeroValueError(FrickeError):
    """A value at a CM point is numerically zero."""
