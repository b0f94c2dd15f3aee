"""Work budgets for the enumeration searches.

Subgroup and twisted-subgroup enumeration both grow closures breadth-first;
on pathological inputs that can explode, so every search ticks a shared
budget and bails out with whatever it has found so far.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from .errors import BudgetExceededError

DEFAULT_MAX_CLOSURES = 1_000_000
ENV_BUDGET_SECS = "TWISTGAME_BUDGET_SECS"


def default_seconds() -> float:
    raw = os.environ.get(ENV_BUDGET_SECS)
    if raw is None:
        return 60.0
    try:
        value = float(raw)
    except ValueError:
        return 60.0
    return value if value > 0 else 60.0


@dataclass
class Budget:
    """Counts closure computations and wall-clock time for one search."""

    max_closures: int = DEFAULT_MAX_CLOSURES
    max_seconds: float | None = None
    used: int = 0
    started: float = field(default_factory=time.monotonic)

    def __post_init__(self) -> None:
        if self.max_seconds is None:
            self.max_seconds = default_seconds()

    def tick(self, count: int = 1, partial=None) -> None:
        """Charge ``count`` closures, raising once either limit is crossed."""
        self.used += count
        if self.used > self.max_closures:
            raise BudgetExceededError(
                f"closure budget exhausted ({self.max_closures} computations)",
                partial=partial,
            )
        # Checking the clock every tick is cheap relative to a closure.
        if time.monotonic() - self.started > self.max_seconds:
            raise BudgetExceededError(
                f"time budget exhausted ({self.max_seconds:.0f}s)",
                partial=partial,
            )


def ensure_budget(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()
