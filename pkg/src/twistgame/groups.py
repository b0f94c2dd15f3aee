"""Finite groups as explicit multiplication tables.

Every group in the package is a ``GroupTable``: an order-n Cayley table on
element ids ``0..n-1`` with 0 as the identity, plus element names and the
spec it was built from.  Construction goes through ``GroupSpec`` so any
group in play can be serialized, shipped over the HTTP API, and rebuilt
deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .budget import Budget, ensure_budget
from .errors import (
    EvenOrderError,
    InvalidSpecError,
    NotASubgroupError,
    NotNormalError,
)
from .sets import ElemSet

MAX_ORDER = 2048
_EXHAUSTIVE_ASSOC_LIMIT = 256
_ASSOC_SAMPLES = 1_000_000

KINDS = (
    "cyclic",
    "dihedral",
    "quaternion8",
    "heisenberg_p",
    "semidirect_cyclic",
    "direct_product",
    "permutation",
    "table",
)


@dataclass(frozen=True)
class GroupSpec:
    """Serializable construction recipe: a kind plus its parameters."""

    kind: str
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpecError(f"unknown group kind {self.kind!r}; expected one of {KINDS}")

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params}

    def canonical(self) -> str:
        """Stable string form, usable as a cache key."""
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "GroupSpec":
        if not isinstance(obj, dict):
            raise InvalidSpecError("group spec must be a JSON object")
        if "kind" not in obj:
            raise InvalidSpecError("group spec is missing 'kind'")
        params = {k: v for k, v in obj.items() if k != "kind"}
        return cls(obj["kind"], params)


class GroupTable:
    """A finite group of order ``n`` on elements ``0..n-1``, identity 0."""

    __slots__ = ("n", "mul", "inv", "names", "spec", "_between")

    def __init__(
        self,
        mul: np.ndarray,
        names: Sequence[str] | None = None,
        spec: GroupSpec | None = None,
        validate: bool = True,
    ):
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int32))
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise InvalidSpecError("multiplication table must be square")
        n = int(mul.shape[0])
        if n < 1:
            raise InvalidSpecError("group must have at least the identity")
        if n > MAX_ORDER:
            raise InvalidSpecError(f"order {n} exceeds the table limit {MAX_ORDER}")
        if validate:
            _validate_table(mul)
        self.n = n
        self.mul = mul
        rows, cols = np.nonzero(mul == 0)
        # each row has exactly one 0 entry (Latin property), in row order
        self.inv = np.ascontiguousarray(cols[np.argsort(rows)].astype(np.int32))
        if names is None:
            names = [str(i) for i in range(n)]
        if len(names) != n:
            raise InvalidSpecError("names must match the group order")
        self.names = tuple(str(s) for s in names)
        self.spec = spec if spec is not None else _table_spec(mul)
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)
        self._between = None

    # elementwise helpers -------------------------------------------------

    def mul_elem(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inv_elem(self, a: int) -> int:
        return int(self.inv[a])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv_elem(x), -k)
        acc, base = 0, x
        while k:
            if k & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            k >>= 1
        return acc

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def element_order(self, x: int) -> int:
        k, acc = 1, x
        while acc != 0:
            acc = int(self.mul[acc, x])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def elem_set(self, members: Iterable[int]) -> ElemSet:
        return ElemSet.of(self.n, members)

    def full_set(self) -> ElemSet:
        return ElemSet.full(self.n)

    def between_table(self) -> np.ndarray:
        """X with X[b, c] = b c^-1 b, cached; column c lists b c^-1 b over all b."""
        if self._between is None:
            b = np.arange(self.n, dtype=np.int64)[:, None]
            x = np.ascontiguousarray(self.mul[self.mul[b, self.inv[None, :]], b])
            x.setflags(write=False)
            self._between = x
        return self._between

    def __repr__(self) -> str:
        return f"GroupTable(order={self.n}, kind={self.spec.kind})"


def _table_spec(mul: np.ndarray) -> GroupSpec:
    """Raw-table spec: order plus the row-major flattened table."""
    return GroupSpec("table", {"n": int(mul.shape[0]), "mul": mul.flatten().tolist()})


def _validate_table(mul: np.ndarray) -> None:
    n = mul.shape[0]
    ar = np.arange(n, dtype=mul.dtype)
    if mul.min() < 0 or mul.max() >= n:
        raise InvalidSpecError("table entries out of element range")
    if not np.array_equal(mul[0], ar) or not np.array_equal(mul[:, 0], ar):
        raise InvalidSpecError("element 0 must be a two-sided identity")
    if not np.array_equal(np.sort(mul, axis=1), np.broadcast_to(ar, mul.shape)):
        raise InvalidSpecError("rows must be permutations (left cancellation fails)")
    if not np.array_equal(np.sort(mul, axis=0), np.broadcast_to(ar[:, None], mul.shape)):
        raise InvalidSpecError("columns must be permutations (right cancellation fails)")
    rows, cols = np.nonzero(mul == 0)
    inv = cols[np.argsort(rows)]
    if not np.array_equal(mul[inv, ar], np.zeros(n, dtype=mul.dtype)):
        raise InvalidSpecError("left and right inverses disagree")
    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        # (a b) c vs a (b c), all n^3 triples at once
        left = mul[mul, :].reshape(n, n, n)
        right = mul[:, mul]  # [a, b, c] = mul[a, mul[b, c]]
        if not np.array_equal(left, right):
            raise InvalidSpecError("multiplication is not associative")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, _ASSOC_SAMPLES))
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise InvalidSpecError("multiplication is not associative (sampled triples)")


# builders ----------------------------------------------------------------


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise InvalidSpecError("cyclic group needs n >= 1")
    ar = np.arange(n, dtype=np.int32)
    mul = (ar[:, None] + ar[None, :]) % n
    names = [str(i) for i in range(n)]
    return GroupTable(mul, names, GroupSpec("cyclic", {"n": n}), validate=False)


def dihedral(n: int) -> GroupTable:
    """Symmetries of the regular n-gon, order 2n; id = flip*n + rotation."""
    if n < 1:
        raise InvalidSpecError("dihedral group needs n >= 1")
    order = 2 * n
    mul = np.zeros((order, order), dtype=np.int32)
    for a1 in (0, 1):
        for i1 in range(n):
            e1 = a1 * n + i1
            for a2 in (0, 1):
                for i2 in range(n):
                    i = (i1 - i2) % n if a1 else (i1 + i2) % n
                    mul[e1, a2 * n + i2] = ((a1 + a2) % 2) * n + i
    names = [f"r{i}" for i in range(n)] + [f"fr{i}" for i in range(n)]
    return GroupTable(mul, names, GroupSpec("dihedral", {"n": n}), validate=False)


def quaternion8() -> GroupTable:
    """The quaternion group: a of order 4, b^2 = a^2, b a b^-1 = a^-1."""
    mul = np.zeros((8, 8), dtype=np.int32)
    for i1 in range(4):
        for j1 in (0, 1):
            for i2 in range(4):
                for j2 in (0, 1):
                    if j1 == 0:
                        i, j = (i1 + i2) % 4, j2
                    elif j2 == 0:
                        i, j = (i1 - i2) % 4, 1
                    else:
                        i, j = (i1 - i2 + 2) % 4, 0
                    mul[j1 * 4 + i1, j2 * 4 + i2] = j * 4 + i
    names = ["1", "a", "a2", "a3", "b", "ab", "a2b", "a3b"]
    return GroupTable(mul, names, GroupSpec("quaternion8", {}), validate=False)


def heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over Z/p; order p^3, exponent p for odd p."""
    if p < 2:
        raise InvalidSpecError("heisenberg_p needs a prime p >= 2")
    if any(p % d == 0 for d in range(2, p)):
        raise InvalidSpecError(f"heisenberg_p needs p prime, got {p}")
    n = p ** 3
    idx = lambda a, b, c: (a * p + b) * p + c
    mul = np.zeros((n, n), dtype=np.int32)
    names = [""] * n
    for a1 in range(p):
        for b1 in range(p):
            for c1 in range(p):
                e1 = idx(a1, b1, c1)
                names[e1] = f"({a1},{b1},{c1})"
                for a2 in range(p):
                    for b2 in range(p):
                        for c2 in range(p):
                            mul[e1, idx(a2, b2, c2)] = idx(
                                (a1 + a2) % p, (b1 + b2) % p, (c1 + c2 + a1 * b2) % p
                            )
    return GroupTable(mul, names, GroupSpec("heisenberg_p", {"p": p}), validate=False)


def semidirect_cyclic(m: int, k: int, r: int) -> GroupTable:
    """Z/m semidirect Z/k where the Z/k generator acts by x -> r*x mod m.

    Element (i, j) is a^i b^j with id j*m + i; the defining relation is
    b a b^-1 = a^r, which requires r^k = 1 mod m.
    """
    if m < 1 or k < 1:
        raise InvalidSpecError("semidirect_cyclic needs m, k >= 1")
    if not 0 <= r < m:
        raise InvalidSpecError("semidirect_cyclic needs 0 <= r < m")
    if pow(r, k, m) != 1 % m:
        raise InvalidSpecError(f"action invalid: r^k = {pow(r, k, m)} != 1 mod {m}")
    n = m * k
    rpow = [pow(r, j, m) for j in range(k)]
    mul = np.zeros((n, n), dtype=np.int32)
    names = [""] * n
    for j1 in range(k):
        for i1 in range(m):
            e1 = j1 * m + i1
            names[e1] = f"a{i1}b{j1}"
            for j2 in range(k):
                for i2 in range(m):
                    mul[e1, j2 * m + i2] = ((j1 + j2) % k) * m + (i1 + rpow[j1] * i2) % m
    return GroupTable(mul, names, GroupSpec("semidirect_cyclic", {"m": m, "k": k, "r": r}), validate=False)


def direct_product(factors: Sequence[GroupSpec | dict | GroupTable]) -> GroupTable:
    """Componentwise product; element ids are mixed-radix, first factor major."""
    if not factors:
        raise InvalidSpecError("direct_product needs at least one factor")
    tables: list[GroupTable] = []
    specs: list[dict] = []
    for f in factors:
        t = f if isinstance(f, GroupTable) else build(f)
        tables.append(t)
        specs.append(t.spec.to_json())
    n = 1
    for t in tables:
        n *= t.n
        if n > MAX_ORDER:
            raise InvalidSpecError(f"product order exceeds the table limit {MAX_ORDER}")
    mul = np.zeros((1, 1), dtype=np.int64)
    parts: list[list[str]] = [[]]
    for t in tables:
        old_n = mul.shape[0]
        mul = (mul[:, None, :, None] * t.n + t.mul[None, :, None, :].astype(np.int64)).reshape(
            old_n * t.n, old_n * t.n
        )
        parts = [p + [nm] for p in parts for nm in t.names]
    if len(tables) == 1:
        names = list(tables[0].names)
    else:
        names = ["(" + ",".join(p) + ")" for p in parts]
    return GroupTable(
        mul.astype(np.int32),
        names,
        GroupSpec("direct_product", {"factors": specs}),
        validate=False,
    )


def _perm_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p . q)(x) = p[q[x]]: apply q, then p."""
    return tuple(p[v] for v in q)


def _cycle_name(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    parts = []
    for s in range(len(p)):
        if seen[s] or p[s] == s:
            seen[s] = True
            continue
        cyc, x = [], s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "e"


def permutation_group(generators: Sequence[Sequence[int]]) -> GroupTable:
    """Closure of the given permutations under composition.

    Elements are discovered breadth-first from the identity in generator
    order, which fixes the element numbering for a given spec.
    """
    if not generators:
        raise InvalidSpecError("permutation group needs at least one generator")
    degree = len(generators[0])
    gens: list[tuple[int, ...]] = []
    for g in generators:
        t = tuple(int(v) for v in g)
        if len(t) != degree or sorted(t) != list(range(degree)):
            raise InvalidSpecError(f"not a permutation of 0..{degree - 1}: {g}")
        gens.append(t)
    ident = tuple(range(degree))
    index: dict[tuple[int, ...], int] = {ident: 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _perm_compose(p, g)
                if q not in index:
                    if len(elems) >= MAX_ORDER:
                        raise InvalidSpecError(
                            f"permutation closure exceeds the table limit {MAX_ORDER}"
                        )
                    index[q] = len(elems)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    n = len(elems)
    mul = np.zeros((n, n), dtype=np.int32)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mul[i, j] = index[_perm_compose(p, q)]
    names = [_cycle_name(p) for p in elems]
    spec = GroupSpec("permutation", {"degree": degree, "generators": [list(g) for g in gens]})
    return GroupTable(mul, names, spec, validate=False)


def from_table(
    mul: Sequence[Sequence[int]] | Sequence[int],
    names: Sequence[str] | None = None,
    n: int | None = None,
) -> GroupTable:
    """Group from a raw table, either nested rows or row-major flat with n."""
    arr = np.asarray(mul, dtype=np.int32)
    if arr.ndim == 1:
        if n is None:
            n = int(round(len(arr) ** 0.5))
        if n * n != arr.size:
            raise InvalidSpecError(f"flat table of length {arr.size} does not match n={n}")
        arr = arr.reshape(n, n)
    return GroupTable(arr, names, _table_spec(arr), validate=True)


def build(spec: GroupSpec | dict[str, Any]) -> GroupTable:
    """Build the group a spec describes; validation errors raise InvalidSpecError."""
    if isinstance(spec, dict):
        spec = GroupSpec.from_json(spec)
    p = spec.params
    try:
        if spec.kind == "cyclic":
            return cyclic(int(p["n"]))
        if spec.kind == "dihedral":
            return dihedral(int(p["n"]))
        if spec.kind == "quaternion8":
            return quaternion8()
        if spec.kind == "heisenberg_p":
            return heisenberg(int(p["p"]))
        if spec.kind == "semidirect_cyclic":
            return semidirect_cyclic(int(p["m"]), int(p["k"]), int(p["r"]))
        if spec.kind == "direct_product":
            return direct_product(p["factors"])
        if spec.kind == "permutation":
            return permutation_group(p["generators"])
        if spec.kind == "table":
            return from_table(p["mul"], p.get("names"), p.get("n"))
    except KeyError as exc:
        raise InvalidSpecError(f"spec for kind {spec.kind!r} is missing parameter {exc}") from exc
    raise InvalidSpecError(f"unknown group kind {spec.kind!r}")


# subgroup machinery -------------------------------------------------------


def subgroup_closure(group: GroupTable, seed: Iterable[int] | ElemSet) -> ElemSet:
    """Smallest subgroup containing the seed (the identity is always included)."""
    members = set(seed.members() if isinstance(seed, ElemSet) else (int(x) for x in seed))
    members.add(0)
    cur = np.array(sorted(members), dtype=np.int64)
    while True:
        prod = group.mul[np.ix_(cur, cur)]
        nxt = np.unique(prod)
        merged = np.union1d(cur, nxt)
        if merged.size == cur.size:
            return ElemSet.of(group.n, cur.tolist())
        cur = merged


def is_subgroup(group: GroupTable, s: ElemSet) -> bool:
    if 0 not in s or len(s) == 0:
        return False
    a = s.member_array()
    prods = group.mul[np.ix_(a, a)]
    mask = s.mask_array()
    return bool(mask[prods].all())


def require_subgroup(group: GroupTable, s: ElemSet) -> None:
    if not is_subgroup(group, s):
        raise NotASubgroupError(f"{s} is not a subgroup")


def is_normal(group: GroupTable, s: ElemSet) -> bool:
    require_subgroup(group, s)
    a = s.member_array()
    for g in range(group.n):
        conj = group.mul[group.mul[g, a], group.inv[g]]
        if ElemSet.of(group.n, conj.tolist()) != s:
            return False
    return True


def two_power_elements(group: GroupTable) -> list[int]:
    """Elements whose order is a power of two (the identity counts)."""
    out = []
    for x in range(group.n):
        o = group.element_order(x)
        if o & (o - 1) == 0:
            out.append(x)
    return out


def gamma_subgroup(group: GroupTable) -> ElemSet:
    """Subgroup generated by all elements of two-power order.

    This is generation-invariant, hence normal, and the quotient kills every
    element of even order, so the index is odd.  Both facts are asserted.
    """
    g = subgroup_closure(group, two_power_elements(group))
    if not is_normal(group, g):
        raise NotNormalError("two-power-generated subgroup failed normality check")
    if (group.n // len(g)) % 2 == 0:
        raise InvalidSpecError("two-power-generated subgroup has even index")
    return g


def quotient(group: GroupTable, normal: ElemSet) -> tuple[GroupTable, np.ndarray]:
    """Quotient by a normal subgroup.

    Returns the quotient table and the projection array mapping each parent
    element to its coset id.  Coset representatives are the smallest element
    ids, sorted so the identity coset is id 0.
    """
    if not is_normal(group, normal):
        raise NotNormalError("quotient requires a normal subgroup")
    a = normal.member_array()
    rep = group.mul[:, a].min(axis=1)
    reps = np.unique(rep)
    proj = np.searchsorted(reps, rep).astype(np.int32)
    qmul = proj[group.mul[np.ix_(reps, reps)]]
    names = [f"[{group.names[r]}]" for r in reps]
    q = GroupTable(qmul, names, _table_spec(qmul), validate=False)
    return q, proj


def subgroup_table(group: GroupTable, s: ElemSet) -> tuple[GroupTable, np.ndarray]:
    """Reindex a subgroup as a standalone group.

    Returns the subgroup's own table plus the embedding array mapping its
    local ids back to parent ids (local 0 is the parent identity).
    """
    require_subgroup(group, s)
    a = s.member_array()
    local = np.searchsorted(a, group.mul[np.ix_(a, a)]).astype(np.int32)
    names = [group.names[int(x)] for x in a]
    t = GroupTable(local, names, _table_spec(local), validate=False)
    return t, a


def center(group: GroupTable) -> ElemSet:
    eq = group.mul == group.mul.T
    return ElemSet.of(group.n, np.nonzero(eq.all(axis=1))[0].tolist())


def is_nilpotent(group: GroupTable) -> bool:
    """Ascending central series reaches the whole group."""
    n = group.n
    g = np.arange(n, dtype=np.int64)
    # comm[x, y] = x^-1 y^-1 x y
    comm = group.mul[group.mul[group.inv[:, None], group.inv[None, :]], group.mul[g[:, None], g[None, :]]]
    in_z = np.zeros(n, dtype=bool)
    in_z[0] = True
    while True:
        candidate = in_z[comm].all(axis=1)
        if candidate.all():
            return True
        if np.array_equal(candidate, in_z):
            return False
        in_z = candidate


def sqrt_odd(group: GroupTable, x: int) -> int:
    """The unique square root in an odd-order group: y with y*y = x."""
    if group.n % 2 == 0:
        raise EvenOrderError("square roots are only unique in odd-order groups")
    m = group.element_order(x)
    return group.power(x, (m + 1) // 2)


def enumerate_subgroups(group: GroupTable, budget: Budget | None = None) -> list[ElemSet]:
    """All subgroups, grown breadth-first by closing each set with one new element."""
    budget = ensure_budget(budget)
    trivial = subgroup_closure(group, [])
    found = {trivial}
    queue = [trivial]
    while queue:
        s = queue.pop()
        for x in range(group.n):
            if x in s:
                continue
            budget.tick(partial=sorted(found))
            bigger = subgroup_closure(group, s.add(x))
            if bigger not in found:
                found.add(bigger)
                queue.append(bigger)
    return sorted(found, key=lambda t: (len(t), t.bits))


def max_proper_subgroup_order(group: GroupTable, budget: Budget | None = None) -> int:
    subs = enumerate_subgroups(group, budget)
    proper = [len(s) for s in subs if len(s) < group.n]
    return max(proper) if proper else 1
