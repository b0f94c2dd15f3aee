"""The Explorer-Director game itself: states, moves, transcripts, matches.

Each round the Explorer names a group element g; the Director then moves
the token from its position x to x*g or x*g^-1.  The Explorer wants the
token to visit as many distinct elements as possible, the Director as few.
Naming the identity is a legal pass: both of the Director's options leave
the token in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Protocol

from .errors import WrongPhaseError
from .groups import GroupTable
from .sets import ElemSet


@dataclass(frozen=True)
class GameState:
    """Immutable snapshot between moves.

    ``pending`` is the element the Explorer has named this round, or None
    when it is the Explorer's turn to name one.
    """

    group: GroupTable
    pos: int
    visited: ElemSet
    pending: int | None = None

    @property
    def awaiting_director(self) -> bool:
        return self.pending is not None

    @property
    def coverage(self) -> int:
        return len(self.visited)

    def unvisited(self) -> ElemSet:
        return self.visited.complement()


@dataclass(frozen=True)
class ExplorerMove:
    element: int


@dataclass(frozen=True)
class DirectorMove:
    sign: int  # +1 applies the named element, -1 its inverse


Move = ExplorerMove | DirectorMove


@dataclass(frozen=True)
class MoveRecord:
    """One completed round."""

    round: int
    explorer_element: int
    director_sign: int
    new_pos: int


def initial_state(group: GroupTable, start: int = 0) -> GameState:
    if not 0 <= start < group.n:
        raise ValueError(f"start element {start} out of range")
    return GameState(group, start, ElemSet.of(group.n, [start]))


def apply_move(state: GameState, move: Move) -> GameState:
    """Advance the state by one half-round, enforcing turn order."""
    if isinstance(move, ExplorerMove):
        if state.awaiting_director:
            raise WrongPhaseError("the Director must steer before a new element is named")
        if not 0 <= move.element < state.group.n:
            raise ValueError(f"element {move.element} out of range")
        return replace(state, pending=move.element)
    if isinstance(move, DirectorMove):
        if not state.awaiting_director:
            raise WrongPhaseError("no element has been named yet")
        if move.sign not in (1, -1):
            raise ValueError("director sign must be +1 or -1")
        g = state.pending if move.sign == 1 else state.group.inv_elem(state.pending)
        pos = state.group.mul_elem(state.pos, g)
        return GameState(state.group, pos, state.visited.add(pos), None)
    raise TypeError(f"not a move: {move!r}")


class ExplorerStrategy(Protocol):
    label: str

    def fresh(self) -> "ExplorerStrategy":
        """A per-match copy; stateless strategies may return self."""

    def choose(self, state: GameState) -> int:
        """Element to name, given a state awaiting the Explorer."""


class DirectorStrategy(Protocol):
    label: str

    def fresh(self) -> "DirectorStrategy":
        ...

    def choose(self, state: GameState) -> int:
        """Sign (+1 or -1), given a state awaiting the Director."""


@dataclass
class MatchResult:
    start: int
    records: list[MoveRecord] = field(default_factory=list)
    final: GameState | None = None

    @property
    def coverage(self) -> int:
        return self.final.coverage

    @property
    def visited(self) -> ElemSet:
        return self.final.visited

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "rounds": [
                {
                    "round": r.round,
                    "explorer_element": r.explorer_element,
                    "director_sign": r.director_sign,
                    "new_pos": r.new_pos,
                }
                for r in self.records
            ],
            "coverage": self.coverage,
            "visited": list(self.visited.members()),
        }


def play_match(
    group: GroupTable,
    explorer: ExplorerStrategy,
    director: DirectorStrategy,
    start: int = 0,
    max_rounds: int | None = None,
) -> MatchResult:
    """Run a full match; stops when everything is visited or rounds run out.

    The default round cap is 10 * |G|, matching the interactive service.
    """
    if max_rounds is None:
        max_rounds = 10 * group.n
    explorer = explorer.fresh()
    director = director.fresh()
    state = initial_state(group, start)
    result = MatchResult(start=start)
    for rnd in range(1, max_rounds + 1):
        if state.coverage == group.n:
            break
        g = explorer.choose(state)
        state = apply_move(state, ExplorerMove(g))
        sign = director.choose(state)
        state = apply_move(state, DirectorMove(sign))
        result.records.append(MoveRecord(rnd, g, sign, state.pos))
    result.final = state
    return result


def replay(group: GroupTable, start: int, records: list[MoveRecord]) -> GameState:
    """Recompute the state a record sequence leads to, validating each step."""
    state = initial_state(group, start)
    for i, rec in enumerate(records, start=1):
        if rec.round != i:
            raise ValueError(f"rounds must be consecutive from 1, got {rec.round} at step {i}")
        state = apply_move(state, ExplorerMove(rec.explorer_element))
        state = apply_move(state, DirectorMove(rec.director_sign))
        if state.pos != rec.new_pos:
            raise ValueError(f"round {i}: recorded position {rec.new_pos}, replay got {state.pos}")
    return state
