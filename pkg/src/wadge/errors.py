"""Shared exception types."""


class WadgeError(Exception):
    """Base class for all library errors."""


class DomainError(WadgeError):
    """An operation was applied outside its domain (empty space, bad rank, ...)."""


class ParseError(WadgeError):
    """Malformed input text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
