"""Command-line front door: census runs, one-off solves, twisted-set
inspection, claim verification, terminal play, and the HTTP server.

Group arguments accept three forms: a path to a JSON spec file, inline JSON
(anything starting with "{"), or a catalog label like "Z9" or "D4".
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .budget import Budget
from .catalog import catalog_groups, default_catalog
from .errors import TwistgameError
from .game import DirectorMove, ExplorerMove, apply_move, initial_state
from .groups import GroupSpec, GroupTable, KINDS, build
from .census import records_to_jsonl, run_census, summary_table
from .solver import DEFAULT_SOLVER_CAP, HARD_SOLVER_CAP, solve_exact
from .strategies import (
    AvoidSetDirector,
    OptimalDirector,
    OptimalExplorer,
    RandomDirector,
    RandomExplorer,
    theoretical_explorer,
)
from .theory import f_theoretical
from .twisted import (
    enumerate_twisted_subgroups,
    is_mul_closed,
    max_proper_twisted,
    theoretical_avoid_set,
)
from .verify import SCOPES, format_results, run_checks


def resolve_group_spec(text: str) -> GroupSpec:
    """File path, inline JSON, or catalog label, in that order."""
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            return GroupSpec.from_json(json.load(fh))
    if text.lstrip().startswith("{"):
        return GroupSpec.from_json(json.loads(text))
    for entry in default_catalog():
        if entry.label == text:
            return entry.spec
    raise TwistgameError(
        f"{text!r} is not a file, inline JSON, or catalog label; "
        f"known labels include {', '.join(e.label for e in default_catalog()[:6])}, ..."
    )


def _build_group(text: str) -> GroupTable:
    return build(resolve_group_spec(text))


def _cmd_census(args: argparse.Namespace) -> int:
    entries = catalog_groups(
        max_order=args.max_order,
        odd_only=args.odd_only,
        kinds=args.kinds.split(",") if args.kinds else None,
    )
    result = run_census(entries, jobs=args.jobs)
    jsonl = records_to_jsonl(result.records, timing=not args.no_timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(jsonl)
        print(summary_table(result.records))
    else:
        sys.stdout.write(jsonl)
        print(summary_table(result.records), file=sys.stderr)
    for line in result.failures:
        print(f"invariant failure: {line}", file=sys.stderr)
    return 0 if result.ok else 1


def _cmd_solve(args: argparse.Namespace) -> int:
    group = _build_group(args.group)
    report = f_theoretical(group, Budget())
    print(f"order {group.n}, gamma {report.gamma_order}, method {report.method.value}")
    print(f"f_theory = {report.f_theory}, bounds [{report.bounds.lower}, {report.bounds.upper}]")
    if group.n > min(args.cap, HARD_SOLVER_CAP):
        print(f"order {group.n} is beyond the exact-solve cap {args.cap}; theory only")
        return 0
    result = solve_exact(group, start=args.start, cap=args.cap)
    names = [group.names[x] for x in sorted(result.optimal_unvisited.members())]
    print(f"f = {result.f_value} (start {args.start})")
    print(f"optimal-play unvisited: {sorted(result.optimal_unvisited.members())} {names}")
    return 0


def _cmd_twisted(args: argparse.Namespace) -> int:
    group = _build_group(args.group)
    if args.enumerate:
        for tw in enumerate_twisted_subgroups(group, Budget()):
            closed = "subgroup" if is_mul_closed(group, tw.members) else "not a subgroup"
            print(f"size {len(tw):3d}  {sorted(tw.members.members())}  ({closed})")
        return 0
    if args.max:
        tw = max_proper_twisted(group, Budget())
        print(f"max proper twisted subgroup: size {len(tw)}, members {sorted(tw.members.members())}")
        return 0
    sizes = sorted({len(t) for t in enumerate_twisted_subgroups(group, Budget())})
    print(f"twisted subgroup sizes: {sizes}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_checks(args.scope)
    print(format_results(results))
    return 0 if all(r.ok for r in results) else 1


def _cmd_play(args: argparse.Namespace) -> int:
    group = _build_group(args.group)
    engine = args.engine
    if engine == "optimal" and group.n > DEFAULT_SOLVER_CAP:
        print(f"order {group.n} is beyond the solver cap; engine downgraded to theoretical")
        engine = "theoretical"

    if args.role == "explorer":
        if engine == "optimal":
            other = OptimalDirector(solve_exact(group))
        elif engine == "theoretical":
            other = AvoidSetDirector(group, theoretical_avoid_set(group, 0, Budget()))
        else:
            other = RandomDirector(args.seed)
    else:
        if engine == "optimal":
            other = OptimalExplorer(solve_exact(group))
        elif engine == "theoretical":
            other = theoretical_explorer(group, budget=Budget())
        else:
            other = RandomExplorer(args.seed)
    other = other.fresh()

    state = initial_state(group, 0)
    print(f"order {group.n}; you are the {args.role}; engine is {engine}")
    rounds = 0
    while state.coverage < group.n and rounds < 10 * group.n:
        rounds += 1
        if args.role == "explorer":
            print(f"round {rounds}: pos {state.pos} ({group.names[state.pos]}), "
                  f"visited {state.coverage}/{group.n}")
            line = _prompt("name an element id (or q): ")
            if line is None or line == "q":
                break
            try:
                g = int(line)
                state = apply_move(state, ExplorerMove(g))
            except (ValueError, TwistgameError) as exc:
                print(f"  bad move: {exc}")
                rounds -= 1
                continue
            sign = other.choose(state)
            state = apply_move(state, DirectorMove(sign))
            print(f"  engine director chose {'+1' if sign > 0 else '-1'}; pos now {state.pos}")
        else:
            g = other.choose(state)
            state = apply_move(state, ExplorerMove(g))
            print(f"round {rounds}: engine names {g} ({group.names[g]}); pos {state.pos}, "
                  f"visited {state.coverage}/{group.n}")
            line = _prompt("apply + or - (or q): ")
            while line is not None and line not in ("q", "+", "-", "+1", "-1"):
                print("  enter + or -")
                line = _prompt("apply + or - (or q): ")
            if line is None or line == "q":
                break
            sign = 1 if line.startswith("+") else -1
            state = apply_move(state, DirectorMove(sign))
            print(f"  pos now {state.pos}")
    print(f"game over: visited {state.coverage} of {group.n}")
    unseen = sorted(state.unvisited().members())
    if unseen:
        print(f"unvisited: {unseen}")
    return 0


def _prompt(message: str) -> str | None:
    try:
        return input(message).strip()
    except EOFError:
        return None


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistgame",
        description="Explorer-Director game engine over finite groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="survey the group catalog, emit JSONL + summary")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--odd-only", action="store_true")
    p.add_argument("--kinds", type=str, default=None, help=f"comma list from {','.join(KINDS)}")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=str, default=None, help="JSONL path (default: stdout)")
    p.add_argument("--no-timing", action="store_true", help="omit runtimes for byte-stable output")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("solve", help="exact game value for one group")
    p.add_argument("--group", required=True, help="spec file, inline JSON, or catalog label")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_SOLVER_CAP)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("twisted", help="inspect twisted subgroups of one group")
    p.add_argument("--group", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--enumerate", action="store_true", help="list every twisted subgroup")
    mode.add_argument("--max", action="store_true", help="show the largest proper one")
    p.set_defaults(func=_cmd_twisted)

    p = sub.add_parser("verify", help="run the structural claim checks")
    p.add_argument("--scope", required=True, choices=SCOPES)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("play", help="play one game in the terminal")
    p.add_argument("--group", required=True)
    p.add_argument("--role", required=True, choices=("explorer", "director"))
    p.add_argument("--engine", default="optimal", choices=("optimal", "theoretical", "random"))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_play)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", type=str, default="127.0.0.1")
    p.add_argument("--ui-dir", type=str, default=None, help="static web UI directory to mount")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TwistgameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
