"""HTTP play service: interactive sessions of a human against the engine.

Sessions are in-memory, capped, and evicted after an idle hour.  Requests
for one session serialize on a per-session lock; distinct sessions run
concurrently.  Every mutating response is derived from the transcript, and
the transcript is replay-validated server side after each move.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .budget import Budget
from .catalog import default_catalog, entry_order
from .errors import BudgetExceededError, TwistgameError
from .game import DirectorMove, ExplorerMove, GameState, MoveRecord, apply_move, initial_state, replay
from .groups import GroupSpec, GroupTable, build
from .sets import ElemSet
from .solver import DEFAULT_SOLVER_CAP, SolveResult, find_protectable_coset, solve_exact
from .strategies import (
    AvoidSetDirector,
    OptimalDirector,
    OptimalExplorer,
    RandomDirector,
    RandomExplorer,
    theoretical_explorer,
)
from .theory import f_theoretical
from .twisted import coset_decompose, theoretical_avoid_set

SESSION_CAP = 256
IDLE_SECONDS = 3600
ROUND_CAP_FACTOR = 10
ENGINES = ("optimal", "theoretical", "random")
ROLES = ("explorer", "director")

# exact solves shared across sessions; keyed by the raw multiplication table
_SOLVE_CACHE: dict[bytes, SolveResult] = {}
_SOLVE_LOCK = threading.Lock()


def _solve_cached(group: GroupTable, cap: int) -> SolveResult:
    key = group.mul.tobytes()
    with _SOLVE_LOCK:
        hit = _SOLVE_CACHE.get(key)
    if hit is None:
        hit = solve_exact(group, cap=cap)
        with _SOLVE_LOCK:
            _SOLVE_CACHE[key] = hit
    return hit


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CreateGameBody(BaseModel):
    group_spec: dict
    human_role: str
    engine: str = "optimal"


class MoveBody(BaseModel):
    round: int
    explorer_element: int | None = None
    director_sign: int | None = None


@dataclass
class Session:
    id: str
    group: GroupTable
    spec_json: dict
    human_role: str
    engine: str
    engine_requested: str
    downgraded: bool
    state: GameState
    created_at: float = field(default_factory=time.time)
    last_seen: float = field(default_factory=time.time)
    records: list[MoveRecord] = field(default_factory=list)
    round: int = 1
    over: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock)
    engine_explorer: Any = None
    engine_director: Any = None
    avoid_set: ElemSet | None = None
    theory_cache: Any = None
    # round -> (move key, compact stored response) for idempotent retries
    move_log: dict[int, tuple[tuple, dict]] = field(default_factory=dict)

    @property
    def round_cap(self) -> int:
        return ROUND_CAP_FACTOR * self.group.n

    def touch(self) -> None:
        self.last_seen = time.time()


def _iso(ts: float) -> str:
    return datetime.fromtimestamp(ts, tz=timezone.utc).isoformat(timespec="seconds")


def _record_json(rec: MoveRecord) -> dict:
    return {
        "round": rec.round,
        "explorer_element": rec.explorer_element,
        "director_sign": rec.director_sign,
        "new_pos": rec.new_pos,
    }


def _visited_after(sess: Session, upto: int) -> list[int]:
    """Visited set once ``upto`` rounds have completed, from the transcript."""
    seen = {0}
    for rec in sess.records[:upto]:
        seen.add(rec.new_pos)
    return sorted(seen)


def _state_view(sess: Session) -> dict:
    st = sess.state
    if sess.over:
        awaiting = None
    else:
        awaiting = "director" if st.awaiting_director else "explorer"
    return {
        "pos": st.pos,
        "visited": sorted(st.visited.members()),
        "coverage": st.coverage,
        "pending_element": st.pending,
        "awaiting": awaiting,
        "next_round": None if sess.over else sess.round,
        "round_cap": sess.round_cap,
        "over": sess.over,
    }


def _session_view(sess: Session) -> dict:
    return {
        "id": sess.id,
        "group_spec": sess.spec_json,
        "order": sess.group.n,
        "human_role": sess.human_role,
        "engine": sess.engine,
        "engine_requested": sess.engine_requested,
        "downgraded": sess.downgraded,
        "created_at": _iso(sess.created_at),
        "state": _state_view(sess),
        "transcript": [_record_json(r) for r in sess.records],
    }


def _check_invariants(sess: Session) -> None:
    """Transcript must replay to the live state; a theoretical Director must
    have kept the token out of its declared set."""
    replayed = replay(sess.group, 0, sess.records)
    if sess.state.pending is None:
        same = replayed == sess.state
    else:
        same = (
            replayed.pos == sess.state.pos
            and replayed.visited == sess.state.visited
        )
    if not same:
        raise ApiError(500, "internal-error", "transcript does not replay to the session state")
    if sess.avoid_set is not None and sess.state.pos in sess.avoid_set:
        raise ApiError(500, "internal-error", "engine director let the token into its avoid set")


def create_app(
    session_cap: int = SESSION_CAP,
    idle_seconds: float = IDLE_SECONDS,
    solver_cap: int = DEFAULT_SOLVER_CAP,
    ui_dir: str | None = None,
) -> FastAPI:
    app = FastAPI(title="twistgame", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "invalid-request", "message": str(exc.errors()[:1])},
        )

    @app.exception_handler(TwistgameError)
    async def _domain_error(request: Request, exc: TwistgameError):
        return JSONResponse(status_code=400, content={"code": "invalid-spec", "message": str(exc)})

    def _evict_idle() -> None:
        now = time.time()
        with registry_lock:
            stale = [sid for sid, s in sessions.items() if now - s.last_seen > idle_seconds]
            for sid in stale:
                del sessions[sid]

    def _get_session(sid: str) -> Session:
        _evict_idle()
        with registry_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise ApiError(404, "unknown-session", f"no session {sid!r}")
        sess.touch()
        return sess

    def _engine_explorer_move(sess: Session) -> int | None:
        """Let the engine name its element when it plays Explorer."""
        if sess.over or sess.human_role != "director" or sess.state.awaiting_director:
            return None
        g = sess.engine_explorer.choose(sess.state)
        sess.state = apply_move(sess.state, ExplorerMove(g))
        return g

    def _complete_round(sess: Session, named: int, sign: int) -> MoveRecord:
        sess.state = apply_move(sess.state, DirectorMove(sign))
        rec = MoveRecord(sess.round, named, sign, sess.state.pos)
        sess.records.append(rec)
        sess.round += 1
        if sess.state.coverage == sess.group.n or len(sess.records) >= sess.round_cap:
            sess.over = True
        return rec

    @app.get("/api/groups")
    def list_groups():
        out = []
        for entry in default_catalog():
            out.append(
                {
                    "label": entry.label,
                    "order": entry_order(entry),
                    "spec": entry.spec.to_json(),
                }
            )
        return {"groups": out}

    @app.post("/api/games", status_code=201)
    def create_game(body: CreateGameBody):
        _evict_idle()
        with registry_lock:
            if len(sessions) >= session_cap:
                raise ApiError(503, "capacity", f"session cap {session_cap} reached")
        role = body.human_role.lower()
        engine = body.engine.lower()
        if role not in ROLES:
            raise ApiError(400, "invalid-spec", f"human_role must be one of {ROLES}")
        if engine not in ENGINES:
            raise ApiError(400, "invalid-spec", f"engine must be one of {ENGINES}")
        try:
            spec = GroupSpec.from_json(body.group_spec)
            group = build(spec)
        except TwistgameError as exc:
            raise ApiError(400, "invalid-spec", str(exc))

        requested = engine
        downgraded = False
        if engine == "optimal" and group.n > solver_cap:
            engine = "theoretical"
            downgraded = True

        sid = secrets.token_hex(16)
        sess = Session(
            id=sid,
            group=group,
            spec_json=spec.to_json(),
            human_role=role,
            engine=engine,
            engine_requested=requested,
            downgraded=downgraded,
            state=initial_state(group, 0),
        )
        if group.n == 1:
            sess.over = True
        seed = int(sid[:8], 16)
        try:
            if role == "explorer":
                if engine == "optimal":
                    sess.engine_director = OptimalDirector(_solve_cached(group, solver_cap))
                elif engine == "theoretical":
                    sess.avoid_set = theoretical_avoid_set(group, 0, Budget())
                    sess.engine_director = AvoidSetDirector(group, sess.avoid_set)
                else:
                    sess.engine_director = RandomDirector(seed)
            else:
                if engine == "optimal":
                    sess.engine_explorer = OptimalExplorer(_solve_cached(group, solver_cap))
                elif engine == "theoretical":
                    sess.engine_explorer = theoretical_explorer(group, budget=Budget())
                else:
                    sess.engine_explorer = RandomExplorer(seed)
        except BudgetExceededError as exc:
            raise ApiError(400, "budget-exceeded", f"engine setup exceeded its budget: {exc}")
        strategy = sess.engine_director or sess.engine_explorer
        if strategy is not None:
            fresh = strategy.fresh()
            if sess.engine_director is not None:
                sess.engine_director = fresh
            else:
                sess.engine_explorer = fresh

        _engine_explorer_move(sess)

        with registry_lock:
            if len(sessions) >= session_cap:
                raise ApiError(503, "capacity", f"session cap {session_cap} reached")
            sessions[sid] = sess
        return _session_view(sess)

    @app.get("/api/games/{sid}")
    def get_game(sid: str):
        sess = _get_session(sid)
        with sess.lock:
            return _session_view(sess)

    @app.post("/api/games/{sid}/move")
    def submit_move(sid: str, body: MoveBody):
        sess = _get_session(sid)
        with sess.lock:
            if sess.human_role == "explorer":
                if body.explorer_element is None:
                    raise ApiError(400, "wrong-phase", "your move is an explorer_element")
                move_key = ("explorer", body.explorer_element)
            else:
                if body.director_sign is None:
                    raise ApiError(400, "wrong-phase", "your move is a director_sign")
                move_key = ("director", body.director_sign)

            logged = sess.move_log.get(body.round)
            if logged is not None:
                old_key, stored = logged
                if old_key != move_key:
                    raise ApiError(
                        409,
                        "round-conflict",
                        f"round {body.round} was already played with a different move",
                    )
                # stored responses drop the visited list; rebuild it from the
                # transcript prefix so retries stay O(1) in memory per round
                state = dict(stored["state"])
                state["visited"] = _visited_after(sess, stored["_rounds_done"])
                response = {k: v for k, v in stored.items() if k not in ("_rounds_done", "state")}
                response["state"] = state
                return response

            if sess.over:
                raise ApiError(409, "wrong-phase", "the game is over")
            if body.round != sess.round:
                raise ApiError(
                    409,
                    "round-conflict",
                    f"expected a move for round {sess.round}, got round {body.round}",
                )

            engine_move: dict | None = None
            if sess.human_role == "explorer":
                g = body.explorer_element
                if not 0 <= g < sess.group.n:
                    raise ApiError(400, "illegal-element", f"element {g} is out of range")
                sess.state = apply_move(sess.state, ExplorerMove(g))
                sign = sess.engine_director.choose(sess.state)
                rec = _complete_round(sess, g, sign)
                engine_move = {"director_sign": sign}
            else:
                sign = body.director_sign
                if sign not in (1, -1):
                    raise ApiError(400, "illegal-element", "director_sign must be 1 or -1")
                if not sess.state.awaiting_director:
                    raise ApiError(500, "internal-error", "no pending element for the director")
                rec = _complete_round(sess, sess.state.pending, sign)
                nxt = _engine_explorer_move(sess)
                if nxt is not None:
                    engine_move = {"explorer_element": nxt}

            _check_invariants(sess)

            response = {
                "id": sess.id,
                "round": rec.round,
                "record": _record_json(rec),
                "engine_move": engine_move,
                "over": sess.over,
                "state": _state_view(sess),
            }
            compact_state = {k: v for k, v in response["state"].items() if k != "visited"}
            stored = {k: v for k, v in response.items() if k != "state"}
            stored["state"] = compact_state
            stored["_rounds_done"] = len(sess.records)
            sess.move_log[rec.round] = (move_key, stored)
            return response

    @app.get("/api/games/{sid}/analysis")
    def analyze(sid: str):
        sess = _get_session(sid)
        with sess.lock:
            if sess.theory_cache is None:
                sess.theory_cache = f_theoretical(sess.group, Budget())
            report = sess.theory_cache
            out = report.to_json()

            f_oracle = None
            if sess.group.n <= solver_cap:
                f_oracle = _solve_cached(sess.group, solver_cap).f_value
            out["f_oracle"] = f_oracle

            disclosed = None
            if sess.human_role == "explorer" and sess.engine == "theoretical":
                disclosed = sorted(sess.avoid_set.members())
            out["avoid_set"] = disclosed

            unvisited = sess.state.unvisited()
            try:
                coset = find_protectable_coset(sess.group, unvisited, sess.state.pos, Budget())
            except BudgetExceededError:
                coset = None
            out["protectable_coset"] = None if coset is None else sorted(coset.members())

            out["coverage"] = sess.state.coverage
            out["unvisited"] = sorted(unvisited.members())
            out["over"] = sess.over
            final = None
            if sess.over:
                dec = coset_decompose(sess.group, unvisited) if len(unvisited) else None
                final = {
                    "coverage": sess.state.coverage,
                    "unvisited_coset": None
                    if dec is None
                    else {"rep": dec.rep, "core": sorted(dec.core.members.members())},
                }
            out["final"] = final
            return out

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
