"""Exception types shared across the package."""

from __future__ import annotations


class TwistgameError(Exception):
    """Base class for every error this package raises deliberately."""


class InvalidSpecError(TwistgameError):
    """A group spec or multiplication table fails validation."""


class NotASubgroupError(TwistgameError):
    """A claimed subgroup is not closed or misses the identity."""


class NotNormalError(TwistgameError):
    """A subgroup is not invariant under conjugation."""


class EvenOrderError(TwistgameError):
    """An odd-order-only operation was applied to an even-order group."""


class NotPowerOfTwoError(TwistgameError):
    """An element whose order must be a power of two is not one."""


class OrderTooLargeError(TwistgameError):
    """The group exceeds the exact solver's state-space cap."""


class WrongPhaseError(TwistgameError):
    """A move was applied out of turn (naming vs. steering phase)."""


class PreconditionError(TwistgameError):
    """A strategy or operation was invoked outside its guarantee."""


class BudgetExceededError(TwistgameError):
    """An enumeration ran out of its closure or wall-clock budget.

    ``partial`` holds whatever was found before the budget ran out, so
    callers can degrade to bounds instead of losing everything.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
