"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DownUpError(Exception):
    """Base class for all errors raised by :mod:`downup`."""


class FieldError(DownUpError, ArithmeticError):
    """Raised for incompatible quadratic fields or non-representable values."""


class PreconditionError(DownUpError, ValueError):
    """An operation was called outside its domain.

    ``condition`` names the violated condition, e.g. ``"beta != 0"``.
    """

    def __init__(self, condition: str, message: str | None = None) -> None:
        self.condition = condition
        super().__init__(message or f"precondition violated: {condition}")


class ParseError(DownUpError, ValueError):
    """Malformed textual input. ``pos`` is the offending character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0) -> None:
        self.text = text
        self.pos = pos
        if text:
            message = f"{message} at position {pos}: {text!r}"
        super().__init__(message)


class ReductionLimitError(DownUpError, RuntimeError):
    """A free word exceeded the configured length cap during rewriting."""
