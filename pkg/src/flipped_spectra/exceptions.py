"""Exception and warning classes raised across the package."""


class FlippedSpectraError(Exception):
    """Base class for all errors raised by this package."""


class NonRealCoefficient(FlippedSpectraError):
    pass


class QuadratureFailure(FlippedSpectraError):
    pass


class UnsupportedKind(FlippedSpectraError, TypeError):
    pass


class ComplexValued(FlippedSpectraError, ValueError):
    pass


class SymbolParseError(FlippedSpectraError, ValueError):
    pass


class NotSymmetric(FlippedSpectraError, ValueError):
    pass


class NoConvergence(FlippedSpectraError):
    pass


class SizeLimitExceeded(FlippedSpectraError, ValueError):
    pass


class ClassificationFailure(FlippedSpectraError):
    pass


class OutOfRange(FlippedSpectraError):
    """An eigenvalue lies outside the symbol range; ``index`` is 0-based."""

    def __init__(self, index, value, lo, hi):
        self.index = index
        self.value = value
        super().__init__(
            f"value {value!r} at index {index} outside symbol range [{lo!r}, {hi!r}]"
        )


class NoRoot(FlippedSpectraError):
    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"no preimage found for value {value!r} at index {index}")


class MultisetMismatch(FlippedSpectraError, ValueError):
    pass


class AssignmentConflict(FlippedSpectraError):
    pass


class IllConditioned(FlippedSpectraError):
    pass


class OrderingAmbiguous(FlippedSpectraError):
    pass


class DegenerateWarning(UserWarning):
    """A homotopy step crossed a (numerically) degenerate eigenvalue cluster."""
