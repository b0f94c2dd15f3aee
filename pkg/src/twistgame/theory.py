"""Structure-driven prediction of game values, with certified bounds.

The pipeline peels off the subgroup generated by two-power-order elements
(game value there is its full order), reduces to the odd quotient, and
reads the value off the largest proper twisted subgroup.  When enumeration
budgets run out it degrades to a bounds-only report instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .budget import Budget
from .errors import BudgetExceededError
from .groups import (
    GroupTable,
    enumerate_subgroups,
    gamma_subgroup,
    is_nilpotent,
    max_proper_subgroup_order,
    quotient,
)
from .twisted import max_proper_twisted, twisted_sizes


def f_star(n: int) -> int:
    """Value of the cyclic game of order n: n when n is a power of two,
    otherwise n - n/p for p the smallest odd prime factor."""
    if n < 1:
        raise ValueError("order must be positive")
    if n & (n - 1) == 0:
        return n
    m = n
    while m % 2 == 0:
        m //= 2
    p = m
    d = 3
    while d * d <= m:
        if m % d == 0:
            p = d
            break
        d += 2
    return n - n // p


class TheoryMethod(str, Enum):
    POWER_OF_TWO = "PowerOfTwoGroup"
    NILPOTENT = "NilpotentShortcut"
    ODD_TWISTED = "OddTwistedFormula"
    GAMMA_REDUCTION = "GammaReductionThenOdd"
    BOUNDS_ONLY = "BoundsOnly"


@dataclass(frozen=True)
class Bounds:
    lower: int
    upper: int

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"bounds crossed: [{self.lower}, {self.upper}]")

    @property
    def pinned(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class ConjectureStatus:
    """Outcome of one size-set comparison: holds, fails, or skipped."""

    status: str
    witness: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness:
            out["witness_sizes"] = list(self.witness)
        return out


@dataclass(frozen=True)
class ConjectureFlags:
    subgroup_orders: ConjectureStatus
    divisors: ConjectureStatus

    def to_json(self) -> dict:
        return {
            "twisted_sizes_equal_subgroup_orders": self.subgroup_orders.to_json(),
            "twisted_sizes_equal_divisors": self.divisors.to_json(),
        }


@dataclass(frozen=True)
class TheoryReport:
    order: int
    gamma_order: int
    quotient_order: int
    f_star_value: int
    method: TheoryMethod
    f_theory: int | None
    bounds: Bounds

    def __post_init__(self) -> None:
        if self.f_theory is not None and not (
            self.bounds.lower <= self.f_theory <= self.bounds.upper
        ):
            raise RuntimeError(
                f"theory value {self.f_theory} escapes bounds "
                f"[{self.bounds.lower}, {self.bounds.upper}]"
            )

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "gamma_order": self.gamma_order,
            "quotient_order": self.quotient_order,
            "f_star": self.f_star_value,
            "method": self.method.value,
            "f_theory": self.f_theory,
            "lower": self.bounds.lower,
            "upper": self.bounds.upper,
        }


def bounds(group: GroupTable, budget: Budget | None = None) -> Bounds:
    """Certified sandwich for the game value.

    Lower: the two-power part is fully visitable and the odd quotient is at
    least as good as its cyclic baseline.  Upper: in the odd quotient the
    Director can protect a coset of the largest proper subgroup.
    """
    gamma = gamma_subgroup(group)
    g_ord = len(gamma)
    if g_ord == group.n:
        return Bounds(group.n, group.n)
    q, _ = quotient(group, gamma)
    lower = g_ord * f_star(q.n)
    try:
        upper = g_ord * (q.n - max_proper_subgroup_order(q, budget))
    except BudgetExceededError as exc:
        found = exc.partial or []
        best = max((len(s) for s in found if len(s) < q.n), default=1)
        upper = g_ord * (q.n - best)
    return Bounds(lower, max(lower, upper))


def f_theoretical(group: GroupTable, budget: Budget | None = None) -> TheoryReport:
    """Predict the game value from structure alone.

    Falls back to BoundsOnly (f_theory None) if the twisted-subgroup
    enumeration of the odd quotient blows its budget.
    """
    n = group.n
    gamma = gamma_subgroup(group)
    g_ord = len(gamma)
    fs = f_star(n)
    if g_ord == n:
        return TheoryReport(n, g_ord, 1, fs, TheoryMethod.POWER_OF_TWO, n, Bounds(n, n))
    q, _ = quotient(group, gamma)
    sandwich = bounds(group, budget)
    if is_nilpotent(group):
        return TheoryReport(n, g_ord, q.n, fs, TheoryMethod.NILPOTENT, fs, sandwich)
    try:
        max_tw = len(max_proper_twisted(q, budget))
    except BudgetExceededError:
        return TheoryReport(n, g_ord, q.n, fs, TheoryMethod.BOUNDS_ONLY, None, sandwich)
    value = g_ord * (q.n - max_tw)
    method = TheoryMethod.ODD_TWISTED if g_ord == 1 else TheoryMethod.GAMMA_REDUCTION
    return TheoryReport(n, g_ord, q.n, fs, method, value, sandwich)


def conjecture_checks(group: GroupTable, budget: Budget | None = None) -> ConjectureFlags:
    """Compare proper twisted-subgroup sizes against proper subgroup orders
    and against proper divisors; odd-order groups only, else skipped."""
    skipped = ConjectureStatus("skipped")
    if group.n % 2 == 0 or group.n == 1:
        return ConjectureFlags(skipped, skipped)
    try:
        tw = set(twisted_sizes(group, budget))
        subs = {len(s) for s in enumerate_subgroups(group, budget) if len(s) < group.n}
    except BudgetExceededError:
        return ConjectureFlags(skipped, skipped)
    divisors = {d for d in range(1, group.n) if group.n % d == 0}

    def compare(other: set[int]) -> ConjectureStatus:
        if tw == other:
            return ConjectureStatus("holds")
        return ConjectureStatus("fails", tuple(sorted(tw.symmetric_difference(other))))

    return ConjectureFlags(compare(subs), compare(divisors))
