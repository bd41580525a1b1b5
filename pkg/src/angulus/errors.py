"""Exception hierarchy shared by every module.

``DomainError`` covers bad input (the CLI maps it to exit code 2);
``DegeneracyError`` covers numeric breakdown past a tolerance (exit code 3).
"""


class AngulusError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AngulusError, ValueError):
    """Input violates a named invariant or precondition."""

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class FieldMismatchError(DomainError):
    """Two surds from different quadratic fields were combined."""

    def __init__(self, d1, d2):
        super().__init__(
            f"incomparable fields: sqrt({d1}) and sqrt({d2})", invariant="same radicand"
        )


class HypothesisViolation(DomainError):
    """A conditional predicate was called with inputs failing its hypotheses."""


class MagnitudeSyntaxError(DomainError):
    def __init__(self, message, text, column):
        super().__init__(f"{message} at column {column}: {text!r}", invariant="magnitude grammar")
        self.text = text
        self.column = column


class DegeneracyError(AngulusError, ArithmeticError):
    """Numeric degeneracy beyond the allowed tolerance budget."""
