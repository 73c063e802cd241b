"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class EulerSumsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EulerSumsError, ValueError):
    """A mathematical precondition does not hold (bad index, x <= 0, ...)."""


class PrecisionError(EulerSumsError):
    """A precision request cannot be honoured."""


class DivergentSeriesError(DomainError):
    """The requested series or multiple zeta value does not converge."""


class UnsupportedError(EulerSumsError):
    """The requested strategy does not apply to the given input."""


class ParseError(EulerSumsError):
    """Malformed textual input. ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
