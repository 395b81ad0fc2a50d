"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BiframeError(Exception):
    """Base class for all package errors."""


class ContextRequiredError(BiframeError):
    """An operation on scalars with mismatched D-powers needs |A| to proceed."""


class PresentationError(BiframeError):
    """Invalid presentation data (asymmetric matrix, bad owner index, ...)."""


class InvalidMoveError(BiframeError):
    """A Kirby move was requested on circles that do not admit it."""


class TheoryError(BiframeError):
    """Theory data violates the quadratic form law or nondegeneracy."""


class NondegeneracyError(BiframeError):
    """A pairing matrix that must be invertible is singular."""


class ParseError(BiframeError):
    """Malformed input file; carries a 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
