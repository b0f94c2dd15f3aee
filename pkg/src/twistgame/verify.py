"""Exhaustive checks of the structural claims the engine relies on.

Each scope token is a stable identifier for one claim about the game value
or the twisted-set machinery; running a scope validates that claim over a
bounded slice of the built-in catalog with the exact solver as the referee.
The slices are sized so "all" completes in well under a minute.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .budget import Budget
from .catalog import build_entry, catalog_groups, default_catalog, entry_order
from .groups import (
    GroupTable,
    enumerate_subgroups,
    gamma_subgroup,
    is_nilpotent,
    is_normal,
    quotient,
    subgroup_table,
    two_power_elements,
)
from .sets import ElemSet
from .solver import (
    DEFAULT_SOLVER_CAP,
    SolveResult,
    maximal_avoidable,
    solve_exact,
    solve_open_avoidable,
    tilde_f,
)
from .strategies import explorer_two_power_sweep
from .theory import f_star, f_theoretical
from .twisted import (
    betweenness_closure,
    coset_decompose,
    enumerate_twisted_subgroups,
    is_betweenness_closed,
    max_proper_twisted,
)

SCOPES = (
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "lemma1",
    "lemma2",
    "lemma3",
    "prop1",
    "prop2",
    "all",
)


@dataclass
class CheckResult:
    scope: str
    subject: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.scope} {self.subject}: {self.detail}"


class Verifier:
    """Runs the per-scope checks with a shared exact-solve cache."""

    def __init__(self, solver_cap: int = DEFAULT_SOLVER_CAP):
        self.solver_cap = solver_cap
        self._solves: dict[bytes, SolveResult] = {}

    def solve(self, group: GroupTable) -> SolveResult:
        key = group.mul.tobytes()
        hit = self._solves.get(key)
        if hit is None:
            hit = self._solves[key] = solve_exact(group, cap=max(self.solver_cap, group.n))
        return hit

    # each scope runner returns one result per group it examined

    def thm1(self) -> list[CheckResult]:
        """Odd order: f = n - (largest proper twisted size), and optimal play
        leaves exactly one twisted coset of that size unvisited."""
        out = []
        for entry in catalog_groups(max_order=15, odd_only=True):
            group = build_entry(entry)
            if group.n < 3:
                continue
            res = self.solve(group)
            tw = max_proper_twisted(group, Budget())
            expect = group.n - len(tw)
            unvisited = res.optimal_unvisited
            dec = coset_decompose(group, unvisited)
            ok = (
                res.f_value == expect
                and len(unvisited) == len(tw)
                and dec is not None
                and len(dec.core) == len(tw)
                and len(dec.core) < group.n
            )
            detail = f"f={res.f_value} vs n-maxtwisted={expect}, unvisited={sorted(unvisited.members())}"
            detail += f", coset core {len(dec.core)}" if dec else ", unvisited not a twisted coset"
            out.append(CheckResult("thm1", entry.label, ok, detail))
        return out

    THM2_LABELS = ("Z6", "Z10", "Z12", "A4", "D3", "D4", "D5", "D6", "D7", "D8", "Q8")

    def thm2(self) -> list[CheckResult]:
        """f factors through the two-power-generated normal subgroup:
        f(G) = |Gamma| * f(G/Gamma), checked by exact solving both sides."""
        by_label = {e.label: e for e in default_catalog()}
        out = []
        for label in self.THM2_LABELS:
            group = build_entry(by_label[label])
            gamma = gamma_subgroup(group)
            quot, _ = quotient(group, gamma)
            f_g = self.solve(group).f_value
            f_q = self.solve(quot).f_value
            ok = f_g == len(gamma) * f_q
            detail = f"f={f_g}, |Gamma|={len(gamma)}, f(quotient)={f_q}"
            out.append(CheckResult("thm2", label, ok, detail))
        return out

    def thm3(self) -> list[CheckResult]:
        """Nilpotent groups achieve the arithmetic value f*(n)."""
        out = []
        for entry in catalog_groups(max_order=100):
            group = build_entry(entry)
            if not is_nilpotent(group):
                continue
            fs = f_star(group.n)
            report = f_theoretical(group, Budget())
            ok = report.f_theory == fs
            detail = f"f_theory={report.f_theory}, f*={fs} ({report.method.value})"
            if group.n <= self.solver_cap:
                f_g = self.solve(group).f_value
                ok = ok and f_g == fs
                detail += f", solver={f_g}"
            out.append(CheckResult("thm3", entry.label, ok, detail))
        return out

    def thm4(self) -> list[CheckResult]:
        """Odd order: every twisted subgroup's size divides the group order."""
        out = []
        for entry in catalog_groups(max_order=81, odd_only=True):
            group = build_entry(entry)
            sizes = sorted({len(t) for t in enumerate_twisted_subgroups(group, Budget())})
            bad = [s for s in sizes if group.n % s]
            out.append(
                CheckResult(
                    "thm4",
                    entry.label,
                    not bad,
                    f"sizes {sizes}" + (f", non-divisors {bad}" if bad else " all divide the order"),
                )
            )
        return out

    def lemma1(self) -> list[CheckResult]:
        """Every normal subgroup K gives the sandwich
        f(K) * f(G/K) <= f(G) <= |K| * f(G/K)."""
        out = []
        for entry in catalog_groups(max_order=self.solver_cap):
            group = build_entry(entry)
            f_g = self.solve(group).f_value
            checked = 0
            bad = None
            for sub in enumerate_subgroups(group, Budget()):
                if not is_normal(group, sub):
                    continue
                k_table, _ = subgroup_table(group, sub)
                q_table, _ = quotient(group, sub)
                f_k = self.solve(k_table).f_value
                f_q = self.solve(q_table).f_value
                checked += 1
                if not (f_k * f_q <= f_g <= len(sub) * f_q):
                    bad = f"K={sorted(sub.members())}: {f_k}*{f_q} <= {f_g} <= {len(sub)}*{f_q} fails"
                    break
            detail = bad or f"{checked} normal subgroups sandwich f={f_g}"
            out.append(CheckResult("lemma1", entry.label, bad is None, detail))
        return out

    def lemma2(self) -> list[CheckResult]:
        """Naming t, t^2, t^4, ... forces the token from x onto x*t for every
        two-power-order t, whatever the Director does."""
        out = []
        for entry in catalog_groups(max_order=self.solver_cap):
            group = build_entry(entry)
            ts = two_power_elements(group)
            bad = None
            for t in ts:
                for x in range(group.n):
                    if not explorer_two_power_sweep(group, x, t).all_replies_reach():
                        bad = f"sweep from x={x} missed target for t={t}"
                        break
                if bad:
                    break
            detail = bad or f"{len(ts)} two-power elements x {group.n} starts all pinned"
            out.append(CheckResult("lemma2", entry.label, bad is None, detail))
        return out

    def lemma3(self) -> list[CheckResult]:
        """Maximal avoidable sets are betweenness-closed, and every
        betweenness-closed set missing the start is avoidable."""
        out = []
        for entry in catalog_groups(max_order=12):
            group = build_entry(entry)
            n = group.n
            bad = None
            for s in maximal_avoidable(group, start=0, limit=12):
                if not is_betweenness_closed(group, s):
                    bad = f"maximal avoidable {sorted(s.members())} not betweenness-closed"
                    break
            closed_count = 0
            if bad is None:
                others = list(range(1, n))
                for size in range(1, n):
                    for combo in combinations(others, size):
                        s = ElemSet.of(n, combo)
                        if not is_betweenness_closed(group, s):
                            continue
                        closed_count += 1
                        if not solve_open_avoidable(group, s, start=0):
                            bad = f"betweenness-closed {sorted(combo)} not avoidable"
                            break
                    if bad:
                        break
            detail = bad or f"{closed_count} closed sets avoidable, maximal avoidable all closed"
            out.append(CheckResult("lemma3", entry.label, bad is None, detail))
        return out

    def prop1(self) -> list[CheckResult]:
        """The open game (pick an avoid set, survive forever) has the same
        value as the visiting game."""
        out = []
        for entry in catalog_groups(max_order=self.solver_cap):
            group = build_entry(entry)
            f_g = self.solve(group).f_value
            f_open = tilde_f(group, method="exhaustive", cap=self.solver_cap)
            out.append(
                CheckResult(
                    "prop1", entry.label, f_g == f_open, f"f={f_g}, open-game value={f_open}"
                )
            )
        return out

    def prop2(self) -> list[CheckResult]:
        """Odd order: a nonempty set is betweenness-closed iff it is a
        twisted coset.  Candidates: closures of all seeds of size <= 2, the
        raw two-element seeds themselves, and every translate of every
        twisted subgroup."""
        out = []
        for entry in catalog_groups(max_order=27, odd_only=True):
            group = build_entry(entry)
            n = group.n
            candidates: set[ElemSet] = set()
            for a in range(n):
                candidates.add(betweenness_closure(group, [a]))
                for b in range(a + 1, n):
                    candidates.add(ElemSet.of(n, [a, b]))
                    candidates.add(betweenness_closure(group, [a, b]))
            for tw in enumerate_twisted_subgroups(group, Budget()):
                arr = tw.members.member_array()
                for g in range(n):
                    candidates.add(ElemSet.of(n, group.mul[g, arr].tolist()))
            bad = None
            for s in sorted(candidates):
                closed = is_betweenness_closed(group, s)
                coset = coset_decompose(group, s) is not None
                if closed != coset:
                    which = "closed but not a coset" if closed else "a coset but not closed"
                    bad = f"{sorted(s.members())} is {which}"
                    break
            detail = bad or f"{len(candidates)} candidate sets agree"
            out.append(CheckResult("prop2", entry.label, bad is None, detail))
        return out

    def run(self, scope: str) -> list[CheckResult]:
        if scope not in SCOPES:
            raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
        if scope == "all":
            results = []
            for name in SCOPES[:-1]:
                results.extend(getattr(self, name)())
            return results
        return getattr(self, scope)()


def run_checks(scope: str = "all", solver_cap: int = DEFAULT_SOLVER_CAP) -> list[CheckResult]:
    return Verifier(solver_cap).run(scope)


def format_results(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
