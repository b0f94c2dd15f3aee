"""End-to-end acceptance checks.

Each test covers one headline guarantee, prints a single pass/fail line,
and enforces its own wall-clock limit.  A shared exact-solve cache keeps
repeat solves of the same multiplication table free.
"""

import time

from twistgame.budget import Budget
from twistgame.catalog import build_entry, catalog_groups, default_catalog
from twistgame.census import find_nonsubgroup_twisted, records_to_jsonl, run_census
from twistgame.groups import (
    cyclic,
    gamma_subgroup,
    is_nilpotent,
    is_normal,
    enumerate_subgroups,
    quotient,
    subgroup_table,
)
from twistgame.solver import SolveResult, solve_exact, tilde_f
from twistgame.strategies import explorer_two_power_sweep
from twistgame.theory import bounds, f_star, f_theoretical
from twistgame.twisted import (
    coset_decompose,
    is_mul_closed,
    is_twisted_subgroup,
    max_proper_twisted,
    verify_odd_twisted_divisibility,
)
from twistgame.verify import run_checks

CATALOG = {e.label: e for e in default_catalog()}

_SOLVES: dict[bytes, SolveResult] = {}


def solve(group, cap=20):
    key = group.mul.tobytes()
    if key not in _SOLVES:
        _SOLVES[key] = solve_exact(group, cap=cap)
    return _SOLVES[key]


def reference_f_star(n: int) -> int:
    """Independent restatement of the closed form."""
    if n & (n - 1) == 0:
        return n
    p = next(q for q in range(3, n + 1, 2) if n % q == 0)
    return n - n // p


def report(name: str, failures: list[str], elapsed: float, limit: float) -> None:
    ok = not failures and elapsed <= limit
    detail = "; ".join(failures) if failures else "all checks hold"
    if elapsed > limit:
        detail += f"; exceeded the {limit:.0f}s limit"
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail} ({elapsed:.2f}s)")
    assert ok, detail


def test_closed_form_reference():
    expected = {n: reference_f_star(n) for n in range(1, 65)}
    t0 = time.perf_counter()
    got = {n: f_star(n) for n in range(1, 65)}
    elapsed = time.perf_counter() - t0
    failures = [f"n={n}: {got[n]} != {expected[n]}" for n in expected if got[n] != expected[n]]
    report("closed form on 1..64", failures, elapsed, 0.001)


def test_cyclic_solver_matches_closed_form():
    t0 = time.perf_counter()
    failures = []
    for n in range(2, 17):
        f = solve(cyclic(n)).f_value
        if f != reference_f_star(n):
            failures.append(f"n={n}: solver {f} != {reference_f_star(n)}")
    report("cyclic groups 2..16 equal the closed form", failures, time.perf_counter() - t0, 120)


def test_open_game_value_matches():
    t0 = time.perf_counter()
    failures = []
    for entry in catalog_groups(max_order=16):
        g = build_entry(entry)
        f = solve(g).f_value
        f_open = tilde_f(g, method="exhaustive", cap=16)
        if f != f_open:
            failures.append(f"{entry.label}: f={f} but open value {f_open}")
    report("open-game value equals f on the order<=16 catalog", failures,
           time.perf_counter() - t0, 600)


def test_quotient_product_law():
    t0 = time.perf_counter()
    failures = []
    for label in ("Z6", "Z10", "Z12", "A4", "D3", "D4", "D5", "D6", "D7", "D8", "Q8"):
        g = build_entry(CATALOG[label])
        gamma = gamma_subgroup(g)
        q, _ = quotient(g, gamma)
        expect = len(gamma) * solve(q).f_value
        f = solve(g).f_value
        if f != expect:
            failures.append(f"{label}: f={f} != |Gamma|*f(G/Gamma)={expect}")
    report("two-power quotient product law", failures, time.perf_counter() - t0, 300)


def test_two_power_sweeps_pin():
    t0 = time.perf_counter()
    failures = []
    for entry in catalog_groups(max_order=16):
        g = build_entry(entry)
        for t in range(g.n):
            order = g.element_order(t)
            if order & (order - 1):
                continue
            for x in range(g.n):
                if not explorer_two_power_sweep(g, x, t).all_replies_reach():
                    failures.append(f"{entry.label}: sweep t={t} from x={x} escapes")
    report("sweeps pin the token for every reply sequence", failures,
           time.perf_counter() - t0, 60)


def test_normal_subgroup_sandwich():
    t0 = time.perf_counter()
    failures = []
    for entry in catalog_groups(max_order=16):
        g = build_entry(entry)
        f_g = solve(g).f_value
        for sub in enumerate_subgroups(g):
            if not is_normal(g, sub):
                continue
            k_table, _ = subgroup_table(g, sub)
            q_table, _ = quotient(g, sub)
            f_k = solve(k_table).f_value
            f_q = solve(q_table).f_value
            if not f_k * f_q <= f_g <= len(sub) * f_q:
                failures.append(
                    f"{entry.label}, |K|={len(sub)}: "
                    f"{f_k}*{f_q} <= {f_g} <= {len(sub)}*{f_q} fails"
                )
    report("normal-subgroup sandwich bounds", failures, time.perf_counter() - t0, 600)


def test_odd_order_formula_and_coset_witness():
    t0 = time.perf_counter()
    failures = []
    for label in ("Z3", "Z5", "Z7", "Z9", "Z11", "Z13", "Z15", "Z3xZ3"):
        g = build_entry(CATALOG[label])
        res = solve(g)
        top = max_proper_twisted(g)
        if res.f_value != g.n - len(top):
            failures.append(f"{label}: f={res.f_value} != {g.n}-{len(top)}")
            continue
        dec = coset_decompose(g, res.optimal_unvisited)
        if dec is None:
            failures.append(f"{label}: optimal unvisited set is not a twisted coset")
        elif len(dec.core) >= g.n:
            failures.append(f"{label}: witness core is not proper")
    report("odd-order value formula with coset witness", failures,
           time.perf_counter() - t0, 120)


def test_odd_twisted_size_divides_order():
    t0 = time.perf_counter()
    failures = []
    for entry in catalog_groups(max_order=81, odd_only=True):
        g = build_entry(entry)
        if not verify_odd_twisted_divisibility(g, Budget()):
            failures.append(f"{entry.label}: some twisted size fails to divide {g.n}")
    report("twisted sizes divide odd group orders up to 81", failures,
           time.perf_counter() - t0, 600)


def test_betweenness_iff_twisted_coset():
    t0 = time.perf_counter()
    results = run_checks(scope="prop2")
    failures = [r.line() for r in results if not r.ok]
    report("betweenness-closed iff twisted coset on odd catalog <= 27", failures,
           time.perf_counter() - t0, 300)


def test_nilpotent_closed_form():
    t0 = time.perf_counter()
    failures = []
    for entry in catalog_groups(max_order=100):
        g = build_entry(entry)
        if not is_nilpotent(g):
            continue
        rep = f_theoretical(g)
        if rep.f_theory != reference_f_star(g.n):
            failures.append(f"{entry.label}: theory {rep.f_theory} != {reference_f_star(g.n)}")
        elif g.n <= 16 and solve(g).f_value != rep.f_theory:
            failures.append(f"{entry.label}: solver {solve(g).f_value} != theory {rep.f_theory}")
    report("nilpotent groups hit the closed form", failures, time.perf_counter() - t0, 300)


def test_non_subgroup_twisted_witnesses():
    t0 = time.perf_counter()
    failures = []
    for label in ("H27", "SD75"):
        g = build_entry(CATALOG[label])
        witness = find_nonsubgroup_twisted(g, Budget())
        if witness is None:
            failures.append(f"{label}: no witness found")
        elif not is_twisted_subgroup(g, witness):
            failures.append(f"{label}: witness is not twisted")
        elif is_mul_closed(g, witness):
            failures.append(f"{label}: witness is a plain subgroup")
    report("twisted-but-not-subgroup witnesses at orders 27 and 75", failures,
           time.perf_counter() - t0, 300)


def test_pinned_values_21_75():
    t0 = time.perf_counter()
    failures = []
    for label, f in (("SD21", 14), ("SD75", 50)):
        b = bounds(build_entry(CATALOG[label]))
        if (b.lower, b.upper) != (f, f):
            failures.append(f"{label}: bounds [{b.lower},{b.upper}] do not pin {f}")
    sd21 = build_entry(CATALOG["SD21"])
    by_formula = sd21.n - len(max_proper_twisted(sd21))
    if by_formula != 14:
        failures.append(f"SD21: odd twisted formula gives {by_formula}")
    report("orders 21 and 75 pinned by coinciding bounds", failures,
           time.perf_counter() - t0, 120)


def test_census_determinism():
    t0 = time.perf_counter()
    entries = catalog_groups(max_order=16)
    a = records_to_jsonl(run_census(entries, jobs=1).records, timing=False)
    b = records_to_jsonl(run_census(entries, jobs=2).records, timing=False)
    failures = [] if a == b else ["reruns differ"]
    if not a.strip():
        failures.append("empty census output")
    report("census reruns are byte-identical", failures, time.perf_counter() - t0, 1200)
