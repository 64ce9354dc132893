"""Exception types shared across the package."""

from __future__ import annotations


class DraftGameError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstanceError(DraftGameError):
    """An instance violates a structural invariant (dimensions, ids, signs)."""


class InvalidPositionError(DraftGameError):
    """A position violates a structural invariant (overlaps, turn order)."""


class InstanceParseError(DraftGameError):
    """Malformed instance/position data.  Carries a location when known."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)


class PreconditionError(DraftGameError):
    """An operation was called on input outside its contract."""


class GuardExceededError(DraftGameError):
    """Input is larger than a safety guard allows."""


class NodeBudgetExceededError(DraftGameError):
    """A bounded search ran out of nodes.

    Carries the best sound bounds established before the interruption:
    ``lower <= true score <= upper``.
    """

    def __init__(self, lower: int, upper: int, nodes: int):
        self.lower = lower
        self.upper = upper
        self.nodes = nodes
        super().__init__(
            f"node budget exhausted after {nodes} nodes; score in [{lower}, {upper}]"
        )


class QbfError(DraftGameError):
    """A quantified formula violates the shape this package works with."""
