"""Exception hierarchy.

Two families: :class:`ValidationError` for bad input (CLI exit code 1) and
:class:`InvariantViolation` for internal failures that should be impossible on
valid input (CLI exit code 2).
"""

from __future__ import annotations


class RoadmatchError(Exception):
    """Base class for all package errors."""


class ValidationError(RoadmatchError, ValueError):
    """Input instance is malformed or violates a roadmap invariant."""


class ParseError(ValidationError):
    pass


class NonPositiveLength(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class CardinalityMismatch(ValidationError):
    pass


class CoordinateOutOfRange(ValidationError):
    pass


class UnknownRoad(ValidationError):
    pass


class DuplicateId(ValidationError):
    pass


class InvalidParams(ValidationError):
    """Bad arguments to the random instance generator."""


class InvariantViolation(RoadmatchError, RuntimeError):
    """Internal consistency check failed."""


class UnbalancedSupply(InvariantViolation):
    pass


class NoPath(InvariantViolation):
    pass


class NegativeReducedCost(InvariantViolation):
    pass


class CycleDetected(InvariantViolation):
    pass


class EmptyQueueAtT(InvariantViolation):
    pass


class OracleMismatch(InvariantViolation):
    def __init__(self, message: str, expected: float, actual: float):
        super().__init__(message)
        self.expected = expected
        self.actual = actual
