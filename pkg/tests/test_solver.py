import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistgame.errors import EvenOrderError, OrderTooLargeError
from twistgame.groups import cyclic, dihedral, permutation_group, quaternion8
from twistgame.sets import ElemSet
from twistgame.solver import (
    enumerate_avoidable,
    find_protectable_coset,
    maximal_avoidable,
    solve_exact,
    solve_open_avoidable,
    tilde_f,
)
from twistgame.twisted import coset_decompose


def a4():
    return permutation_group([[1, 2, 0, 3], [1, 0, 3, 2]])


# exact values ----------------------------------------------------------------


def test_power_of_two_groups_fully_explored():
    for g in (cyclic(2), cyclic(4), cyclic(8), quaternion8(), dihedral(4)):
        res = solve_exact(g)
        assert res.f_value == g.n
        assert len(res.optimal_unvisited) == 0


def test_cyclic_nine():
    res = solve_exact(cyclic(9))
    assert res.f_value == 6
    assert sorted(res.optimal_unvisited.members()) == [2, 5, 8]


def test_cyclic_fifteen_with_coset_witness():
    res = solve_exact(cyclic(15))
    assert res.f_value == 10
    dec = coset_decompose(cyclic(15), res.optimal_unvisited)
    assert dec is not None
    assert len(dec.core) == 5


def test_even_order_values():
    assert solve_exact(cyclic(6)).f_value == 4
    assert solve_exact(cyclic(12)).f_value == 8
    assert solve_exact(dihedral(3)).f_value == 6
    assert solve_exact(a4()).f_value == 8


def test_translation_invariance():
    for g in (cyclic(9), cyclic(12), dihedral(3)):
        res = solve_exact(g)
        values = {res.f_from(s) for s in range(g.n)}
        assert len(values) == 1


def test_value_table_bounds():
    g = cyclic(6)
    res = solve_exact(g)
    n = g.n
    for v_mask in range(1, 1 << n):
        k = bin(v_mask).count("1")
        for pos in range(n):
            if not (v_mask >> pos) & 1:
                continue
            val = res.value(pos, v_mask)
            assert k <= val <= n


def test_solver_cap():
    with pytest.raises(OrderTooLargeError):
        solve_exact(cyclic(17))
    with pytest.raises(OrderTooLargeError):
        solve_exact(cyclic(21), cap=25)  # the hard cap still applies


def test_optimal_moves_consistent_with_values():
    g = cyclic(9)
    res = solve_exact(g)
    state_visited = ElemSet.of(9, [0])
    elem = res.explorer_element(0, state_visited)
    assert elem != 0  # not content at the start
    sign = res.director_sign(0, state_visited, elem)
    assert sign in (1, -1)


@given(st.integers(min_value=2, max_value=10))
def test_cyclic_matches_formula(n):
    from twistgame.theory import f_star

    assert solve_exact(cyclic(n)).f_value == f_star(n)


# the open variant ------------------------------------------------------------


def test_avoidability_oracles():
    z4 = cyclic(4)
    for x in (1, 2, 3):
        assert not solve_open_avoidable(z4, ElemSet.of(4, [x]))
    z9 = cyclic(9)
    assert solve_open_avoidable(z9, ElemSet.of(9, [2, 5, 8]))
    assert not solve_open_avoidable(z9, ElemSet.of(9, [2, 5, 8, 1]))
    z6 = cyclic(6)
    assert solve_open_avoidable(z6, ElemSet.of(6, [1, 4]))
    assert solve_open_avoidable(z6, ElemSet.of(6, [1]))
    assert not solve_open_avoidable(z6, ElemSet.of(6, [1, 2]))
    assert not solve_open_avoidable(z6, ElemSet.of(6, [3]))
    # the start inside the set is immediately lost; the empty set is safe
    assert not solve_open_avoidable(z6, ElemSet.of(6, [0, 1]))
    assert solve_open_avoidable(z6, ElemSet.of(6, []))


def test_enumerate_avoidable_z6():
    sets = {tuple(sorted(s.members())) for s in enumerate_avoidable(cyclic(6))}
    assert sets == {(), (1,), (2,), (4,), (5,), (1, 4), (2, 5)}


def test_maximal_avoidable_z6():
    top = maximal_avoidable(cyclic(6))
    assert [sorted(s.members()) for s in top] == [[1, 4], [2, 5]]


def test_avoidable_enumeration_cap():
    with pytest.raises(OrderTooLargeError):
        enumerate_avoidable(cyclic(13))


def test_tilde_matches_f():
    assert tilde_f(cyclic(9), method="exhaustive") == 6
    assert tilde_f(cyclic(9), method="structural") == 6
    assert tilde_f(cyclic(6), method="exhaustive") == 4
    assert tilde_f(cyclic(8), method="exhaustive") == 8
    assert tilde_f(cyclic(45), method="auto") == 30  # falls back to structure
    with pytest.raises(EvenOrderError):
        tilde_f(cyclic(6), method="structural")
    with pytest.raises(ValueError):
        tilde_f(cyclic(6), method="telepathy")


def test_find_protectable_coset():
    z9 = cyclic(9)
    full_unvisited = ElemSet.of(9, range(1, 9))
    first = find_protectable_coset(z9, full_unvisited, 0)
    assert sorted(first.members()) == [1, 4, 7]  # size ties break to smallest mask

    after = find_protectable_coset(z9, ElemSet.of(9, [1, 2, 3, 5, 6, 7, 8]), 4)
    assert sorted(after.members()) == [2, 5, 8]

    nothing = find_protectable_coset(cyclic(4), ElemSet.of(4, [2]), 0)
    assert nothing is None
