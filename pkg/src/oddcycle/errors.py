"""Exception types shared across the package."""


class OddcycleError(Exception):
    """Base class for all package errors."""


class RuleViolation(OddcycleError):
    """A move or offer broke the rules of the game being played."""


class StateError(OddcycleError):
    """An operation was applied to a state that cannot accept it."""


class CapacityError(OddcycleError):
    """A computation exceeded a configured size or node budget."""


class CorruptionError(OddcycleError):
    """A transcript failed validation during replay."""


class InvariantViolation(OddcycleError):
    """An assert-mode hook observed a state that violates an invariant."""
