"""Explorer and Director playing policies.

Three families: table-driven optimal play backed by a solve, structure-
driven play (avoid-set steering, two-power sweeps, coset composition), and
baselines (random, greedy).  Strategies are small stateful objects; a
match always starts from a ``fresh()`` copy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .budget import Budget
from .errors import NotPowerOfTwoError, PreconditionError
from .game import GameState
from .groups import GroupTable, gamma_subgroup, is_normal, quotient, subgroup_table
from .sets import ElemSet
from .solver import DEFAULT_SOLVER_CAP, SolveResult, solve_exact
from .twisted import is_betweenness_closed, theoretical_avoid_set


class RandomExplorer:
    label = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def fresh(self) -> "RandomExplorer":
        return RandomExplorer(self.seed)

    def choose(self, state: GameState) -> int:
        return int(self._rng.integers(0, state.group.n))


class RandomDirector:
    label = "random"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def fresh(self) -> "RandomDirector":
        return RandomDirector(self.seed)

    def choose(self, state: GameState) -> int:
        return 1 if self._rng.integers(0, 2) == 0 else -1


class OptimalExplorer:
    """Plays the solve table's recorded move; passes once content."""

    label = "optimal"

    def __init__(self, result: SolveResult):
        self.result = result

    def fresh(self) -> "OptimalExplorer":
        return self

    def choose(self, state: GameState) -> int:
        return self.result.explorer_element(state.pos, state.visited)


class OptimalDirector:
    """Steers to the value-minimizing successor; +1 on ties."""

    label = "optimal"

    def __init__(self, result: SolveResult):
        self.result = result

    def fresh(self) -> "OptimalDirector":
        return self

    def choose(self, state: GameState) -> int:
        return self.result.director_sign(state.pos, state.visited, state.pending)


class GreedyExplorer:
    """Names the smallest element with an unvisited successor.

    Prefers elements where both steering options are unvisited, so the
    Director cannot dodge.  No optimality guarantee; used as the fallback
    when no table or structural plan applies.
    """

    label = "greedy"

    def fresh(self) -> "GreedyExplorer":
        return self

    def choose(self, state: GameState) -> int:
        g = state.group
        single = None
        for x in range(1, g.n):
            plus = g.mul_elem(state.pos, x)
            minus = g.mul_elem(state.pos, g.inv_elem(x))
            p_new = plus not in state.visited
            m_new = minus not in state.visited
            if p_new and m_new:
                return x
            if (p_new or m_new) and single is None:
                single = x
        return single if single is not None else 0


class AvoidSetDirector:
    """Keeps the token out of a betweenness-closed avoid set forever.

    If the token is outside the set, at most one steering option can land
    inside: were both inside, the current position would lie between them
    and closure would pull it in too.  So the rule below never gets stuck.
    """

    label = "avoid-set"

    def __init__(self, group: GroupTable, avoid: ElemSet):
        if not is_betweenness_closed(group, avoid):
            raise PreconditionError("avoid set must be betweenness-closed")
        self.group = group
        self.avoid = avoid

    def fresh(self) -> "AvoidSetDirector":
        return self

    def choose(self, state: GameState) -> int:
        if state.pos in self.avoid:
            raise PreconditionError("token is already inside the avoid set")
        g = self.group
        plus = g.mul_elem(state.pos, state.pending)
        if plus not in self.avoid:
            return 1
        minus = g.mul_elem(state.pos, g.inv_elem(state.pending))
        if minus not in self.avoid:
            return -1
        raise PreconditionError("both steering options inside a betweenness-closed set")


def director_avoid_strategy(group: GroupTable, avoid: ElemSet) -> AvoidSetDirector:
    return AvoidSetDirector(group, avoid)


# two-power sweeps ----------------------------------------------------------


@dataclass
class SweepScript:
    """The naming sequence t, t^2, t^4, ... for an element of two-power order.

    Whatever signs the Director picks, the accumulated exponent is forced
    to 1 modulo ever-larger powers of two, so the token visits x*t before
    the script runs out (stopping as soon as it does).
    """

    group: GroupTable
    x: int
    t: int
    script: list[int]

    @property
    def target(self) -> int:
        return self.group.mul_elem(self.x, self.t)

    def all_replies_reach(self) -> bool:
        """Exhaustively walk every Director reply sequence."""
        frontier = {self.x}
        for named in self.script:
            nxt = set()
            for pos in frontier:
                if pos == self.target:
                    continue
                nxt.add(self.group.mul_elem(pos, named))
                nxt.add(self.group.mul_elem(pos, self.group.inv_elem(named)))
            frontier = nxt
        return all(pos == self.target for pos in frontier) if frontier else True


def explorer_two_power_sweep(group: GroupTable, x: int, t: int) -> SweepScript:
    """Build the sweep script for t; t's order must be a power of two."""
    order = group.element_order(t)
    if order & (order - 1):
        raise NotPowerOfTwoError(f"element {t} has order {order}")
    script = []
    cur = t
    while order > 1:
        script.append(cur)
        cur = group.mul_elem(cur, cur)
        order //= 2
    return SweepScript(group, x, t, script)


class SweepChainExplorer:
    """Visits an entire coset of a two-power-generated subgroup.

    Each unvisited target is factored into a word over the subgroup's
    two-power-order elements; each letter is delivered by a sweep, which
    pins the token on the letter's endpoint no matter how the Director
    steers.  Chaining words walks the token to every target in turn.
    """

    label = "sweep-chain"

    def __init__(self, group: GroupTable, subgroup: ElemSet | None = None):
        self.group = group
        self.subgroup = subgroup if subgroup is not None else group.full_set()
        gens = [
            x
            for x in self.subgroup
            if x != 0 and (group.element_order(x) & (group.element_order(x) - 1)) == 0
        ]
        # breadth-first words over the generators, shortest first
        words: dict[int, tuple[int, ...]] = {0: ()}
        frontier = [0]
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = group.mul_elem(y, g)
                    if z not in words:
                        words[z] = words[y] + (g,)
                        nxt.append(z)
            frontier = nxt
        if set(words) != set(self.subgroup.members()):
            raise PreconditionError("subgroup is not generated by its two-power-order elements")
        self.words = words
        self._letters: list[int] = []
        self._sweep: list[int] = []
        self._subtarget: int | None = None

    def fresh(self) -> "SweepChainExplorer":
        copy = object.__new__(SweepChainExplorer)
        copy.group = self.group
        copy.subgroup = self.subgroup
        copy.words = self.words
        copy._letters = []
        copy._sweep = []
        copy._subtarget = None
        return copy

    def _coset_members(self, pos: int) -> list[int]:
        a = self.subgroup.member_array()
        return sorted(self.group.mul[pos, a].tolist())

    def choose(self, state: GameState) -> int:
        g = self.group
        while True:
            if self._subtarget is not None:
                if state.pos == self._subtarget:
                    self._subtarget = None
                    self._sweep = []
                elif self._sweep:
                    return self._sweep.pop(0)
                else:
                    raise PreconditionError("sweep exhausted before reaching its endpoint")
            elif self._letters:
                letter = self._letters.pop(0)
                self._subtarget = g.mul_elem(state.pos, letter)
                self._sweep = explorer_two_power_sweep(g, state.pos, letter).script
            else:
                targets = [u for u in self._coset_members(state.pos) if u not in state.visited]
                if not targets:
                    return 0
                d = g.mul_elem(g.inv_elem(state.pos), targets[0])
                self._letters = list(self.words[d])


class CosetCompositeExplorer:
    """Quotient-level play with per-coset inner exploration.

    The outer strategy plays on the quotient by a normal subgroup K; its
    named cosets are lifted to representatives.  The first time the token
    enters a coset, an inner strategy on K explores it relative to the
    entry point.  Lifted moves project back onto the outer game, so the
    composite forces (outer coverage) * (inner coverage) overall.
    """

    label = "coset-composite"

    def __init__(self, group: GroupTable, subgroup: ElemSet, inner_factory, outer):
        if not is_normal(group, subgroup):
            raise PreconditionError("coset composition needs a normal subgroup")
        self.group = group
        self.k_table, self.embed = subgroup_table(group, subgroup)
        self.quot, self.proj = quotient(group, subgroup)
        # representative of each coset: the smallest member, matching the quotient convention
        self.reps = np.unique(group.mul[:, subgroup.member_array()].min(axis=1))
        self.inner_factory = inner_factory
        self.outer = outer
        self._inners: dict[int, tuple[int, object]] = {}

    def fresh(self) -> "CosetCompositeExplorer":
        copy = object.__new__(CosetCompositeExplorer)
        copy.group = self.group
        copy.k_table = self.k_table
        copy.embed = self.embed
        copy.quot = self.quot
        copy.proj = self.proj
        copy.reps = self.reps
        copy.inner_factory = self.inner_factory
        copy.outer = self.outer.fresh()
        copy._inners = {}
        return copy

    def _local_state(self, state: GameState, base: int) -> GameState:
        g = self.group
        inv_base = g.inv_elem(base)
        local_pos = int(np.searchsorted(self.embed, g.mul_elem(inv_base, state.pos)))
        locals_visited = []
        for k_local, k_parent in enumerate(self.embed.tolist()):
            if g.mul_elem(base, k_parent) in state.visited:
                locals_visited.append(k_local)
        return GameState(self.k_table, local_pos, ElemSet.of(self.k_table.n, locals_visited))

    def _quotient_state(self, state: GameState) -> GameState:
        seen = sorted({int(self.proj[x]) for x in state.visited})
        return GameState(self.quot, int(self.proj[state.pos]), ElemSet.of(self.quot.n, seen))

    def choose(self, state: GameState) -> int:
        coset = int(self.proj[state.pos])
        entry = self._inners.get(coset)
        if entry is None:
            entry = (state.pos, self.inner_factory(self.k_table).fresh())
            self._inners[coset] = entry
        base, inner = entry
        local_move = inner.choose(self._local_state(state, base))
        if local_move != 0:
            return int(self.embed[local_move])
        outer_move = self.outer.choose(self._quotient_state(state))
        if outer_move != 0:
            return int(self.reps[outer_move])
        return 0


def theoretical_explorer(group: GroupTable, cap: int | None = None, budget: Budget | None = None):
    """Structure-driven Explorer: sweeps the two-power part, solves or
    greedily walks the odd quotient."""
    gamma = gamma_subgroup(group)
    if len(gamma) == group.n:
        return SweepChainExplorer(group)
    effective = DEFAULT_SOLVER_CAP if cap is None else cap
    if len(gamma) == 1:
        if group.n <= effective:
            return OptimalExplorer(solve_exact(group, cap=cap))
        return GreedyExplorer()
    quot, _ = quotient(group, gamma)
    if quot.n <= effective:
        outer = OptimalExplorer(solve_exact(quot, cap=cap))
    else:
        outer = GreedyExplorer()
    return CosetCompositeExplorer(group, gamma, lambda t: SweepChainExplorer(t), outer)


def theoretical_director(group: GroupTable, start: int = 0, budget: Budget | None = None):
    """Structure-driven Director: protects a lifted maximal twisted coset."""
    return AvoidSetDirector(group, theoretical_avoid_set(group, start, budget))
