import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistgame.sets import ElemSet


def test_empty_and_full():
    e = ElemSet.empty(5)
    f = ElemSet.full(5)
    assert len(e) == 0 and not e
    assert len(f) == 5 and f
    assert list(f) == [0, 1, 2, 3, 4]
    assert e.complement() == f


def test_of_and_membership():
    s = ElemSet.of(6, [1, 4, 4])
    assert len(s) == 2
    assert 1 in s and 4 in s and 0 not in s
    assert sorted(s.members()) == [1, 4]


def test_of_rejects_out_of_range():
    with pytest.raises(ValueError):
        ElemSet.of(4, [4])
    with pytest.raises(ValueError):
        ElemSet.of(4, [-1])


def test_boolean_algebra():
    a = ElemSet.of(8, [0, 1, 2])
    b = ElemSet.of(8, [2, 3])
    assert sorted((a | b).members()) == [0, 1, 2, 3]
    assert sorted((a & b).members()) == [2]
    assert sorted((a - b).members()) == [0, 1]
    assert a.add(7) == ElemSet.of(8, [0, 1, 2, 7])
    assert a.issubset(a | b)
    assert not (a | b).issubset(a)


def test_arrays_roundtrip():
    s = ElemSet.of(10, [0, 3, 9])
    arr = s.member_array()
    assert arr.dtype == np.int64 or arr.dtype == np.intp or arr.dtype.kind == "i"
    assert arr.tolist() == [0, 3, 9]
    mask = s.mask_array()
    assert mask.dtype == np.bool_
    assert np.nonzero(mask)[0].tolist() == [0, 3, 9]


def test_hashable_and_ordered():
    a = ElemSet.of(4, [1])
    b = ElemSet.of(4, [1])
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
    assert sorted([ElemSet.of(4, [2]), a]) == [a, ElemSet.of(4, [2])]


@given(
    st.integers(min_value=1, max_value=16).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.integers(0, n - 1), max_size=2 * n),
            st.lists(st.integers(0, n - 1), max_size=2 * n),
        )
    )
)
def test_set_semantics_match_python_sets(data):
    n, xs, ys = data
    a, b = ElemSet.of(n, xs), ElemSet.of(n, ys)
    sa, sb = set(xs), set(ys)
    assert set((a | b).members()) == sa | sb
    assert set((a & b).members()) == sa & sb
    assert set((a - b).members()) == sa - sb
    assert set(a.complement().members()) == set(range(n)) - sa
    assert a.issubset(b) == (sa <= sb)
    assert len(a) == len(sa)
