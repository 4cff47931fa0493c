"""Exception types shared across the package."""


class HexNavError(Exception):
    """Base class for every error raised by hexnav."""


class ParseError(HexNavError):
    """Input text (map file, transcript) is not well-formed."""


class ValidationError(HexNavError):
    """A map violates one or more structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid map")


class UnknownTag(HexNavError):
    """A tag id does not exist in the map."""


class NotAdjacent(HexNavError):
    """Two tags are not joined by an edge."""


class Unreachable(HexNavError):
    """No path exists between two tags (connectivity invariant bypassed)."""


class DomainError(HexNavError):
    """A numeric argument is outside its valid domain."""


class NoNeighbors(HexNavError):
    """A tag has no neighbors to move to (degenerate map)."""


class BadSymbol(HexNavError):
    """A key event carries a symbol outside the keypad alphabet."""


class UnknownMap(HexNavError):
    """No map registered under the requested id."""


class UnknownWalk(HexNavError):
    """No live walk registered under the requested id."""
