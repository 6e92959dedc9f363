"""Shared exception types."""

from __future__ import annotations


class ParseError(ValueError):
    """Raised when a circuit, graph, or plan file is malformed.

    ``line`` is the 1-based line number the problem was found on, or None
    when the error is not tied to a single line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """Raised when a search exceeds its configured state budget.

    This is a resource report, never a wrong answer: callers may retry
    with a larger cap.
    """
