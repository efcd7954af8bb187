"""Exception types shared across the package."""


class LpaError(Exception):
    """Base class for all library errors."""


class GraphError(LpaError):
    """Malformed graph data: duplicate names, unknown identifiers, bad format."""


class ParseError(LpaError):
    """Unreadable element expression or ideal description."""


class DomainError(LpaError):
    """Operation applied outside its mathematical domain."""
