"""Exception hierarchy shared by every hlpa module."""

from __future__ import annotations


class HlpaError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class HypergraphError(HlpaError, ValueError):
    pass


class ParseError(HlpaError, ValueError):
    """Syntax error in a text document, with 1-based position."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class AlgebraError(HlpaError, ValueError):
    pass


class BudgetExhausted(HlpaError):
    """Raised when a rewrite or search exceeds its step budget."""

    def __init__(self, limit: int) -> None:
        self.limit = limit
        super().__init__(f"budget exhausted after {limit} steps")


class InconsistencyError(HlpaError):
    pass
