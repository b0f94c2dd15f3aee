"""Exact game solving by backward induction over visited sets.

The game state is (visited set V, token position p in V).  Values satisfy

    val(V, p) = max(|V|, max_g min_sign val(V', p'))

where p' is the steered successor and V' = V | {p'}.  Masks are processed
in decreasing popcount order; positions inside one mask form a cyclic
dependency, resolved by a monotone fixpoint iteration from |V| upward.
The move recorded for a position is the one that last raised its value,
which makes greedy witness play terminate: following it, (-value, raise
sweep) decreases lexicographically every round until the token exits the
current visited set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .budget import Budget
from .errors import EvenOrderError, OrderTooLargeError
from .groups import GroupTable
from .sets import ElemSet
from .twisted import enumerate_twisted_subgroups, max_proper_twisted

DEFAULT_SOLVER_CAP = 16
HARD_SOLVER_CAP = 20


def _check_cap(n: int, cap: int | None, what: str) -> None:
    effective = DEFAULT_SOLVER_CAP if cap is None else min(cap, HARD_SOLVER_CAP)
    if n > effective:
        raise OrderTooLargeError(
            f"{what} needs 2^n * n state space; order {n} exceeds the cap {effective}"
        )


@dataclass
class SolveResult:
    """Full value and move tables for one group, plus the headline numbers.

    ``values`` and ``moves`` are flat arrays indexed by ``V * n + pos``
    where V is the visited bitmask.  Entries with pos outside V are never
    read.  A stored move of 0 (the identity) means the Explorer is content:
    the value there equals the coverage already banked.
    """

    group: GroupTable
    start: int
    f_value: int
    optimal_unvisited: ElemSet
    values: np.ndarray
    moves: np.ndarray

    def value(self, pos: int, visited: ElemSet | int) -> int:
        v = visited.bits if isinstance(visited, ElemSet) else int(visited)
        return int(self.values[v * self.group.n + pos])

    def explorer_element(self, pos: int, visited: ElemSet | int) -> int:
        v = visited.bits if isinstance(visited, ElemSet) else int(visited)
        if self.values[v * self.group.n + pos] <= v.bit_count():
            return 0
        return int(self.moves[v * self.group.n + pos])

    def director_sign(self, pos: int, visited: ElemSet | int, named: int) -> int:
        """Value-minimizing sign for the named element; +1 on ties."""
        v = visited.bits if isinstance(visited, ElemSet) else int(visited)
        g = self.group
        plus = int(g.mul[pos, named])
        minus = int(g.mul[pos, g.inv[named]])
        val_plus = int(self.values[(v | (1 << plus)) * g.n + plus])
        val_minus = int(self.values[(v | (1 << minus)) * g.n + minus])
        return 1 if val_plus <= val_minus else -1

    def f_from(self, start: int) -> int:
        return self.value(start, 1 << start)


def _popcounts(n_bits: int) -> np.ndarray:
    pc = np.zeros(1, dtype=np.uint8)
    for _ in range(n_bits):
        pc = np.concatenate([pc, pc + 1])
    return pc


def solve_exact(group: GroupTable, start: int = 0, cap: int | None = None) -> SolveResult:
    """Solve the game exactly; raises OrderTooLargeError beyond the cap."""
    n = group.n
    _check_cap(n, cap, "exact solving")
    if not 0 <= start < n:
        raise ValueError(f"start element {start} out of range")
    mul = group.mul.astype(np.int64)
    mulinv = mul[:, group.inv]
    bits = (np.int64(1) << np.arange(n, dtype=np.int64))
    pc = _popcounts(n)
    values = np.repeat(pc.astype(np.int32), n)
    moves = np.zeros(values.shape, dtype=np.int8)
    ar = np.arange(n, dtype=np.int64)
    # masks in decreasing popcount order; ties don't matter
    order = np.argsort(pc, kind="stable")[::-1]
    for v_mask in order.tolist():
        k = int(pc[v_mask])
        if k == n or k == 0:
            continue
        rows = np.nonzero((v_mask >> ar) & 1)[0]
        succ_p = mul[rows]
        succ_m = mulinv[rows]
        idx_p = (v_mask | bits[succ_p]) * n + succ_p
        idx_m = (v_mask | bits[succ_m]) * n + succ_m
        row_idx = v_mask * n + rows
        cur = values[row_idx]
        while True:
            worst = np.minimum(values[idx_p], values[idx_m])
            best = worst.max(axis=1)
            new = np.maximum(k, best).astype(np.int32)
            raised = new > cur
            if not raised.any():
                break
            moves[row_idx[raised]] = worst[raised].argmax(axis=1)
            values[row_idx[raised]] = new[raised]
            cur = values[row_idx]
    f_value = int(values[(1 << start) * n + start])
    unvisited = _optimal_play_unvisited(group, values, moves, start)
    return SolveResult(group, start, f_value, unvisited, values, moves)


def _optimal_play_unvisited(
    group: GroupTable, values: np.ndarray, moves: np.ndarray, start: int
) -> ElemSet:
    """Play the stored tables against each other and return what stays unseen."""
    n = group.n
    pos = start
    v_mask = 1 << start
    limit = n * n * n + 10 * n
    for _ in range(limit):
        k = v_mask.bit_count()
        if values[v_mask * n + pos] <= k:
            break
        g = int(moves[v_mask * n + pos])
        plus = int(group.mul[pos, g])
        minus = int(group.mul[pos, group.inv[g]])
        val_plus = int(values[(v_mask | (1 << plus)) * n + plus])
        val_minus = int(values[(v_mask | (1 << minus)) * n + minus])
        pos = plus if val_plus <= val_minus else minus
        v_mask |= 1 << pos
    else:
        raise RuntimeError("optimal self-play failed to settle; move table inconsistent")
    return ElemSet(~v_mask & ((1 << n) - 1), n)


# the open variant: the Director commits to an avoid set up front ----------


def solve_open_avoidable(group: GroupTable, avoid: ElemSet, start: int = 0) -> bool:
    """Can the Director keep the token out of ``avoid`` forever from ``start``?

    Computed as an attractor fixpoint: a position is doomed if it is in the
    avoid set or some nameable element forces both steering options into
    doomed positions.
    """
    if start in avoid:
        return False
    if len(avoid) == 0:
        return True
    in_a = avoid.mask_array()
    mul = group.mul
    mulinv = mul[:, group.inv]
    while True:
        forced = (in_a[mul] & in_a[mulinv]).any(axis=1)
        new = in_a | forced
        if new[start]:
            return False
        if np.array_equal(new, in_a):
            return True
        in_a = new


def tilde_f(
    group: GroupTable,
    start: int = 0,
    method: str = "auto",
    cap: int | None = None,
    budget: Budget | None = None,
) -> int:
    """Coverage under optimal play of the open variant.

    ``exhaustive`` scans avoid sets by decreasing size; ``structural`` uses
    the largest proper twisted subgroup (odd order only).  ``auto`` picks
    exhaustive within the solver cap, structural otherwise.
    """
    n = group.n
    if method == "auto":
        effective = DEFAULT_SOLVER_CAP if cap is None else min(cap, HARD_SOLVER_CAP)
        method = "exhaustive" if n <= effective else "structural"
    if method == "structural":
        if n % 2 == 0:
            raise EvenOrderError("the structural route needs odd order; use exhaustive")
        return n - len(max_proper_twisted(group, budget))
    if method != "exhaustive":
        raise ValueError(f"unknown method {method!r}")
    if n > HARD_SOLVER_CAP:
        raise OrderTooLargeError(f"exhaustive avoid-set scan is 2^(n-1) checks; {n} is too big")
    others = [x for x in range(n) if x != start]
    for size in range(n - 1, 0, -1):
        for combo in itertools.combinations(others, size):
            if solve_open_avoidable(group, ElemSet.of(n, combo), start):
                return n - size
    return n


def find_protectable_coset(
    group: GroupTable, unvisited: ElemSet, pos: int, budget: Budget | None = None
) -> ElemSet | None:
    """Largest twisted coset inside ``unvisited`` the Director can still
    protect from ``pos``; ties broken by smallest mask; None if none left."""
    best: ElemSet | None = None
    for tw in enumerate_twisted_subgroups(group, budget):
        if len(tw) >= group.n or (best is not None and len(tw) < len(best)):
            continue
        arr = tw.members.member_array()
        seen = set()
        for rep in range(group.n):
            coset = ElemSet.of(group.n, group.mul[rep, arr].tolist())
            if coset.bits in seen:
                continue
            seen.add(coset.bits)
            if not coset.issubset(unvisited) or pos in coset:
                continue
            if solve_open_avoidable(group, coset, pos):
                if best is None or (len(coset), -coset.bits) > (len(best), -best.bits):
                    best = coset
    return best


def enumerate_avoidable(group: GroupTable, start: int = 0, limit: int = 12) -> list[ElemSet]:
    """Every avoidable avoid set (exhaustive; meant for small groups)."""
    n = group.n
    if n > limit:
        raise OrderTooLargeError(f"avoidable-set enumeration capped at order {limit}")
    others = [x for x in range(n) if x != start]
    out = []
    for size in range(0, n):
        for combo in itertools.combinations(others, size):
            s = ElemSet.of(n, combo)
            if solve_open_avoidable(group, s, start):
                out.append(s)
    return out


def maximal_avoidable(group: GroupTable, start: int = 0, limit: int = 12) -> list[ElemSet]:
    """Avoidable sets with no avoidable strict superset."""
    avoidable = set(enumerate_avoidable(group, start, limit))
    out = []
    for s in avoidable:
        if not any(s != t and s.issubset(t) for t in avoidable):
            out.append(s)
    return sorted(out, key=lambda t: (len(t), t.bits))
