"""Twisted subgroups, betweenness, and the coset structure of avoid sets.

A twisted subgroup is a subset containing the identity and closed under the
operation (a, b) -> a b a.  These are exactly the translated cores of the
sets a Director can protect forever in odd-order groups, which is why most
of the structure theory routes through them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .budget import Budget, ensure_budget
from .errors import EvenOrderError, PreconditionError
from .groups import GroupTable, gamma_subgroup, quotient, sqrt_odd
from .sets import ElemSet


@dataclass(frozen=True)
class TwistedSubgroup:
    """A verified twisted subgroup of a specific group."""

    members: ElemSet

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class TwistedCoset:
    """A left translate rep * P of a twisted subgroup P."""

    rep: int
    core: TwistedSubgroup

    def members(self, group: GroupTable) -> ElemSet:
        a = self.core.members.member_array()
        return ElemSet.of(group.n, group.mul[self.rep, a].tolist())


def is_twisted_subgroup(group: GroupTable, s: ElemSet) -> bool:
    """Contains the identity and is closed under (a, b) -> a b a."""
    if 0 not in s:
        return False
    a = s.member_array()
    prods = group.mul[group.mul[np.ix_(a, a)], a[:, None]]
    return bool(s.mask_array()[prods].all())


def twisted_closure(group: GroupTable, seed) -> ElemSet:
    """Smallest twisted subgroup containing the seed."""
    s = seed if isinstance(seed, ElemSet) else ElemSet.of(group.n, seed)
    s = s.add(0)
    while True:
        a = s.member_array()
        prods = group.mul[group.mul[np.ix_(a, a)], a[:, None]]
        nxt = ElemSet.of(group.n, np.unique(prods).tolist()) | s
        if nxt == s:
            return s
        s = nxt


def enumerate_twisted_subgroups(
    group: GroupTable, budget: Budget | None = None
) -> list[TwistedSubgroup]:
    """Every twisted subgroup, smallest first (ties by bitmask).

    Grown breadth-first: each known twisted subgroup is extended by each
    outside element and re-closed.  Any twisted subgroup T is reachable this
    way because closing a subset of T stays inside T, so T is reached from
    the trivial one by adding its own elements one at a time.
    """
    budget = ensure_budget(budget)
    trivial = twisted_closure(group, [])
    found = {trivial}
    queue = [trivial]
    while queue:
        s = queue.pop()
        for x in range(group.n):
            if x in s:
                continue
            budget.tick(partial=_sorted_twisted(found))
            bigger = twisted_closure(group, s.add(x))
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return _sorted_twisted(found)


def _sorted_twisted(found) -> list[TwistedSubgroup]:
    return [TwistedSubgroup(m) for m in sorted(found, key=lambda t: (len(t), t.bits))]


def max_proper_twisted(group: GroupTable, budget: Budget | None = None) -> TwistedSubgroup:
    """Largest proper twisted subgroup; ties broken by smallest bitmask."""
    all_t = enumerate_twisted_subgroups(group, budget)
    proper = [t for t in all_t if len(t) < group.n]
    if not proper:
        # order 1: the trivial twisted subgroup is the whole group
        return all_t[0]
    best_size = max(len(t) for t in proper)
    # the sorted order puts the smallest bitmask first within a size
    return next(t for t in proper if len(t) == best_size)


def twisted_sizes(group: GroupTable, budget: Budget | None = None) -> list[int]:
    """Sorted distinct sizes of the proper twisted subgroups."""
    out = {len(t) for t in enumerate_twisted_subgroups(group, budget) if len(t) < group.n}
    return sorted(out)


def is_mul_closed(group: GroupTable, s: ElemSet) -> bool:
    a = s.member_array()
    return bool(s.mask_array()[group.mul[np.ix_(a, a)]].all())


# betweenness ---------------------------------------------------------------


def between_set(group: GroupTable, a: int, c: int) -> ElemSet:
    """All b with a = b c^-1 b; such b sit 'between' a and c.

    Equivalently there is a g with a = b g and c = b g^-1.  In even-order
    groups this can be empty or contain several elements.
    """
    col = group.between_table()[:, c]
    return ElemSet.of(group.n, np.nonzero(col == a)[0].tolist())


def between_odd(group: GroupTable, a: int, c: int) -> int:
    """The unique between element in an odd-order group: c * sqrt(c^-1 a)."""
    if group.n % 2 == 0:
        raise EvenOrderError("unique betweenness requires odd order")
    g2 = group.mul_elem(group.inv_elem(c), a)
    return group.mul_elem(c, sqrt_odd(group, g2))


def is_betweenness_closed(group: GroupTable, s: ElemSet) -> bool:
    """No outside element lies between two members."""
    x = group.between_table()
    mask = s.mask_array()
    if not mask.any():
        return True
    cols = s.member_array()
    # violation: b outside s, c in s, with b c^-1 b in s
    hits = mask[x[:, cols]].any(axis=1)
    return not bool((hits & ~mask).any())


def betweenness_closure(group: GroupTable, seed) -> ElemSet:
    """Smallest betweenness-closed superset."""
    s = seed if isinstance(seed, ElemSet) else ElemSet.of(group.n, seed)
    x = group.between_table()
    while True:
        mask = s.mask_array()
        if not mask.any():
            return s
        cols = s.member_array()
        hits = mask[x[:, cols]].any(axis=1)
        nxt = ElemSet.of(group.n, np.nonzero(hits | mask)[0].tolist())
        if nxt == s:
            return s
        s = nxt


def coset_decompose(group: GroupTable, s: ElemSet) -> TwistedCoset | None:
    """Write s as a * P with P twisted, if possible.

    Every translate of s by the inverse of one of its own members contains
    the identity; s is a twisted coset iff one of those translates is a
    twisted subgroup.  The smallest working member is the representative.
    """
    if len(s) == 0:
        return None
    arr = s.member_array()
    for rep in arr.tolist():
        translated = ElemSet.of(group.n, group.mul[group.inv[rep], arr].tolist())
        if is_twisted_subgroup(group, translated):
            return TwistedCoset(int(rep), TwistedSubgroup(translated))
    return None


def verify_odd_twisted_divisibility(group: GroupTable, budget: Budget | None = None) -> bool:
    """In odd-order groups every twisted subgroup size divides the order."""
    if group.n % 2 == 0:
        raise EvenOrderError("divisibility check applies to odd-order groups")
    for t in enumerate_twisted_subgroups(group, budget):
        if group.n % len(t) != 0:
            return False
    return True


def theoretical_avoid_set(group: GroupTable, start: int = 0, budget: Budget | None = None) -> ElemSet:
    """Largest set a Director can protect from ``start`` by structure theory.

    Built as the preimage of a maximal proper twisted coset of the quotient
    by the two-power-generated subgroup, translated off the start's image.
    Preimages of betweenness-closed sets are betweenness-closed, so the
    steering rule stays sound in the full group.
    """
    gamma = gamma_subgroup(group)
    if len(gamma) == group.n:
        return ElemSet.empty(group.n)
    q, proj = quotient(group, gamma)
    p = max_proper_twisted(q, budget)
    pa = p.members.member_array()
    s_img = int(proj[start])
    rep = None
    for g in range(q.n):
        coset = set(q.mul[g, pa].tolist())
        if s_img not in coset:
            rep = g
            break
    if rep is None:
        raise PreconditionError("no twisted coset avoids the start image")
    coset_img = ElemSet.of(q.n, q.mul[rep, pa].tolist())
    keep = coset_img.mask_array()[proj]
    return ElemSet.of(group.n, np.nonzero(keep)[0].tolist())
