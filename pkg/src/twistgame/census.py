"""Catalog-wide survey: run theory and solver on every group, emit JSONL.

Each record carries the structural profile, the theory value with bounds,
the solver value where the order permits, twisted-size data, divisibility
and conjecture outcomes, and per-stage runtimes.  Records are deterministic
given the flags; runtimes are dropped under no_timing so two runs byte-match.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .budget import Budget
from .catalog import CatalogEntry, build_entry
from .errors import BudgetExceededError
from .groups import GroupTable, gamma_subgroup, is_nilpotent
from .sets import ElemSet
from .solver import DEFAULT_SOLVER_CAP, solve_exact
from .theory import ConjectureFlags, TheoryReport, conjecture_checks, f_theoretical
from .twisted import (
    enumerate_twisted_subgroups,
    is_mul_closed,
    twisted_sizes,
    verify_odd_twisted_divisibility,
)

# exact twisted enumeration in census rows is limited to these orders;
# larger groups still get theory values and bounds
L_SIZES_ODD_LIMIT = 100
L_SIZES_EVEN_LIMIT = 12


@dataclass
class CensusRecord:
    group_label: str
    group_spec: dict
    order: int
    abelian: bool
    nilpotent: bool
    gamma_size: int
    f_star: int
    f_theory: int | None
    f_oracle: int | None
    lower_bound: int
    upper_bound: int
    method: str
    l_sizes: list[int] | None
    glauberman_ok: bool | None
    conjecture_flags: dict
    witness_unvisited: list[int] | None
    runtimes: dict[str, float]

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "group_label": self.group_label,
            "group_spec": self.group_spec,
            "order": self.order,
            "abelian": self.abelian,
            "nilpotent": self.nilpotent,
            "gamma_size": self.gamma_size,
            "f_star": self.f_star,
            "f_theory": self.f_theory,
            "f_oracle": self.f_oracle,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "method": self.method,
            "L_sizes": self.l_sizes,
            "glauberman_ok": self.glauberman_ok,
            "conjecture_flags": self.conjecture_flags,
            "witness_unvisited": self.witness_unvisited,
        }
        if timing:
            out["runtimes"] = {k: round(v, 6) for k, v in self.runtimes.items()}
        return out

    def invariant_failures(self) -> list[str]:
        """The build-failing row conditions."""
        out = []
        if self.f_theory is not None and self.f_oracle is not None and self.f_theory != self.f_oracle:
            out.append(f"f_theory {self.f_theory} != f_oracle {self.f_oracle}")
        if self.glauberman_ok is False:
            out.append("odd-order twisted size does not divide the order")
        return out


def find_nonsubgroup_twisted(group: GroupTable, budget: Budget | None = None) -> ElemSet | None:
    """A twisted subgroup that is not multiplication-closed, if one exists.

    Deterministic choice: smallest size, then smallest membership mask.
    """
    for tw in enumerate_twisted_subgroups(group, budget):
        if not is_mul_closed(group, tw.members):
            return tw.members
    return None


def census_record(
    entry: CatalogEntry,
    solver_cap: int = DEFAULT_SOLVER_CAP,
    budget_factory=Budget,
) -> CensusRecord:
    runtimes: dict[str, float] = {}
    t_total = time.perf_counter()

    t0 = time.perf_counter()
    group = build_entry(entry)
    runtimes["build"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    report: TheoryReport = f_theoretical(group, budget_factory())
    gamma = gamma_subgroup(group)
    flags: ConjectureFlags = conjecture_checks(group, budget_factory())
    runtimes["theory"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    f_oracle = None
    witness = None
    if group.n <= solver_cap:
        result = solve_exact(group, cap=solver_cap)
        f_oracle = result.f_value
        witness = sorted(result.optimal_unvisited.members())
    runtimes["solve"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    l_sizes = None
    glauberman = None
    limit = L_SIZES_ODD_LIMIT if group.n % 2 else L_SIZES_EVEN_LIMIT
    if group.n <= limit:
        try:
            l_sizes = twisted_sizes(group, budget_factory())
            if group.n % 2 and group.n > 1:
                glauberman = verify_odd_twisted_divisibility(group, budget_factory())
        except BudgetExceededError:
            l_sizes = None
            glauberman = None
    runtimes["twisted"] = time.perf_counter() - t0
    runtimes["total"] = time.perf_counter() - t_total

    return CensusRecord(
        group_label=entry.label,
        group_spec=entry.spec.to_json(),
        order=group.n,
        abelian=group.is_abelian(),
        nilpotent=is_nilpotent(group),
        gamma_size=len(gamma),
        f_star=report.f_star_value,
        f_theory=report.f_theory,
        f_oracle=f_oracle,
        lower_bound=report.bounds.lower,
        upper_bound=report.bounds.upper,
        method=report.method.value,
        l_sizes=l_sizes,
        glauberman_ok=glauberman,
        conjecture_flags=flags.to_json(),
        witness_unvisited=witness,
        runtimes=runtimes,
    )


@dataclass
class CensusResult:
    records: list[CensusRecord]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_census(
    entries: Iterable[CatalogEntry],
    solver_cap: int = DEFAULT_SOLVER_CAP,
    jobs: int = 1,
) -> CensusResult:
    """Survey the entries; records come back in catalog order regardless of
    how the per-group work is scheduled."""
    entries = list(entries)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda e: census_record(e, solver_cap), entries))
    else:
        records = [census_record(e, solver_cap) for e in entries]
    failures = []
    for rec in records:
        for problem in rec.invariant_failures():
            failures.append(f"{rec.group_label}: {problem}")
    return CensusResult(records, failures)


def records_to_jsonl(records: Iterable[CensusRecord], timing: bool = True) -> str:
    lines = [
        json.dumps(rec.to_json(timing), sort_keys=True, separators=(",", ":"))
        for rec in records
    ]
    return "\n".join(lines) + "\n" if lines else ""


def summary_table(records: list[CensusRecord]) -> str:
    """Aligned text table of the headline columns."""
    headers = ["group", "order", "f*", "f_theory", "f_oracle", "bounds", "method", "glauberman"]
    rows = []
    for r in records:
        rows.append(
            [
                r.group_label,
                str(r.order),
                str(r.f_star),
                "-" if r.f_theory is None else str(r.f_theory),
                "-" if r.f_oracle is None else str(r.f_oracle),
                f"[{r.lower_bound},{r.upper_bound}]",
                r.method,
                "-" if r.glauberman_ok is None else ("ok" if r.glauberman_ok else "FAIL"),
            ]
        )
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(headers)]
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for row in rows:
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(out)
