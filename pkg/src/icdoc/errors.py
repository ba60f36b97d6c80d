"""Exception types shared across the document and register-map parsers."""

from __future__ import annotations


class ParseError(Exception):
    """A syntax error, pinned to a 1-based source line."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
