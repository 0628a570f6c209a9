"""Exceptions raised by the FLAGREG analyses."""
from typing import Optional


class FlagregError(ValueError):
    """Root of all input and precondition errors."""


class VertexRangeError(FlagregError):
    pass


class InvalidFacetsError(FlagregError):
    """Facets that are unsorted, out of canonical order or not an antichain."""


class VoidComplexError(FlagregError):
    pass


class NotAFaceError(FlagregError):
    pass


class DegreeRangeError(FlagregError):
    pass


class NotFlagError(FlagregError):
    pass


class NotPureError(FlagregError):
    pass


class NotPseudomanifoldError(FlagregError):
    pass


class NoOrientationError(FlagregError):
    pass


class PreconditionError(FlagregError):
    pass


class LimitExceededError(FlagregError):
    """The requested enumeration is larger than the configured limit."""


class ParseError(FlagregError):

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TheoremViolation(AssertionError):
    """An asserted bound failed on a complex satisfying its hypotheses."""
