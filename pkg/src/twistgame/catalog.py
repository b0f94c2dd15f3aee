"""The built-in group catalog the census and service draw from.

Covers the cyclic range the exact solver handles, odd cyclic orders up to
45, small abelian products, dihedral groups, the quaternion group, two
permutation groups, the order-27 extraspecial group, and the two
semidirect examples of orders 21 and 75.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import GroupSpec, GroupTable, build


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    spec: GroupSpec


def _cyclic(n: int) -> GroupSpec:
    return GroupSpec("cyclic", {"n": n})


def _product(*ns: int) -> CatalogEntry:
    label = "x".join(f"Z{n}" for n in ns)
    return CatalogEntry(label, GroupSpec("direct_product", {"factors": [_cyclic(n).to_json() for n in ns]}))


def _order75_spec() -> GroupSpec:
    """(Z/5)^2 extended by an order-3 matrix action, realized on 25 points.

    Generators: the two unit translations of the plane over Z/5 and the
    companion matrix of x^2 + x + 1, which has order 3 and no fixed points,
    so the closure is a non-abelian group of order 75.
    """
    def idx(u: int, v: int) -> int:
        return 5 * u + v

    t1 = [idx((u + 1) % 5, v) for u in range(5) for v in range(5)]
    t2 = [idx(u, (v + 1) % 5) for u in range(5) for v in range(5)]
    m = [idx((4 * v) % 5, (u + 4 * v) % 5) for u in range(5) for v in range(5)]
    return GroupSpec("permutation", {"degree": 25, "generators": [t1, t2, m]})


def default_catalog() -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    for n in range(2, 17):
        entries.append(CatalogEntry(f"Z{n}", _cyclic(n)))
    for n in range(17, 46, 2):
        entries.append(CatalogEntry(f"Z{n}", _cyclic(n)))
    entries.extend(
        [
            _product(2, 2),
            _product(2, 4),
            _product(2, 2, 2),
            _product(3, 3),
            _product(2, 6),
            _product(4, 4),
            _product(2, 2, 4),
            _product(2, 2, 2, 2),
            _product(5, 5),
            _product(3, 9),
            _product(3, 3, 3),
            _product(6, 6),
            _product(5, 9),
        ]
    )
    for n in range(3, 9):
        entries.append(CatalogEntry(f"D{n}", GroupSpec("dihedral", {"n": n})))
    entries.append(CatalogEntry("Q8", GroupSpec("quaternion8", {})))
    entries.append(
        CatalogEntry(
            "A4",
            GroupSpec("permutation", {"degree": 4, "generators": [[1, 2, 0, 3], [1, 0, 3, 2]]}),
        )
    )
    entries.append(
        CatalogEntry(
            "S4",
            GroupSpec("permutation", {"degree": 4, "generators": [[1, 2, 3, 0], [1, 0, 2, 3]]}),
        )
    )
    entries.append(CatalogEntry("H27", GroupSpec("heisenberg_p", {"p": 3})))
    entries.append(CatalogEntry("SD21", GroupSpec("semidirect_cyclic", {"m": 7, "k": 3, "r": 2})))
    entries.append(CatalogEntry("SD75", _order75_spec()))
    return entries


_ORDER_CACHE: dict[str, int] = {}
_TABLE_CACHE: dict[str, GroupTable] = {}


def build_entry(entry: CatalogEntry) -> GroupTable:
    """Build with a cache; tables are immutable so sharing is safe."""
    key = entry.spec.canonical()
    table = _TABLE_CACHE.get(key)
    if table is None:
        table = build(entry.spec)
        _TABLE_CACHE[key] = table
        _ORDER_CACHE[key] = table.n
    return table


def entry_order(entry: CatalogEntry) -> int:
    key = entry.spec.canonical()
    if key not in _ORDER_CACHE:
        build_entry(entry)
    return _ORDER_CACHE[key]


def catalog_groups(
    max_order: int | None = None,
    odd_only: bool = False,
    kinds: list[str] | None = None,
) -> list[CatalogEntry]:
    """Filtered catalog in fixed order; filters compose."""
    out = []
    for entry in default_catalog():
        if kinds is not None and entry.spec.kind not in kinds:
            continue
        order = entry_order(entry)
        if max_order is not None and order > max_order:
            continue
        if odd_only and order % 2 == 0:
            continue
        out.append(entry)
    return out
