import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cnslab.errors import BadBounds, BadH, ContextMismatch
from cnslab.subsums import (
    FpSet,
    count_profile,
    hfold,
    is_asymmetric,
    restricted_sumset,
    sigma_double,
    sigma_lower,
    sigma_sizes_from_profile,
    sigma_star,
    sigma_upper,
    subsum_table,
    sumset,
)
from oracles import subset_rows

S = FpSet.of


def test_sumset_examples():
    assert sumset(S(7, [1, 2]), S(7, [3, 5])).elements() == [0, 4, 5, 6]
    B = S(11, [2, 3, 7])
    assert sumset(S(11, [0]), B) == B
    assert sumset(FpSet.full(13), S(13, [4])) == FpSet.full(13)
    with pytest.raises(ContextMismatch):
        sumset(S(5, [1]), S(7, [1]))


def test_restricted_sumset_examples():
    assert restricted_sumset(S(5, [1, 2]), S(5, [1, 2])).elements() == [3]
    assert len(restricted_sumset(S(5, [1]), S(5, [1]))) == 0
    assert restricted_sumset(S(7, [1, 2]), S(7, [3])).elements() == [4, 5]


def test_subsum_table_examples():
    t = subsum_table(S(7, [1, 2, 3]))
    assert [t.row(k).elements() for k in range(4)] == [[0], [1, 2, 3], [3, 4, 5], [6]]
    assert subsum_table(S(7, [])).rows == (1,)
    t = subsum_table(S(11, [5]))
    assert [t.row(k).elements() for k in range(2)] == [[0], [5]]


def test_hfold_examples():
    A = S(7, [1, 2, 3])
    assert hfold(A, 2).elements() == [3, 4, 5]
    assert hfold(A, 0).elements() == [0]
    with pytest.raises(BadH):
        hfold(A, 4)


def test_hfold_interval_size():
    for p in (11, 13, 31):
        for d in range(1, p):
            A = FpSet.interval(p, 1, d)
            for h in range(d + 1):
                assert len(hfold(A, h)) == min(p, h * (d - h) + 1)


def test_sigma_examples():
    A = S(11, [1, 2, 3])
    assert sigma_lower(A, 2).elements() == [3, 4, 5, 6]
    assert sigma_upper(A, 2).elements() == [0, 1, 2, 3]
    assert len(sigma_double(S(11, [1, -2, 3, 4, 5]), 1, 1)) == 10
    with pytest.raises(BadBounds):
        sigma_double(A, 2, 2)


def test_empty_set_conventions():
    E = S(7, [])
    assert sigma_lower(E, 0).elements() == [0]
    assert len(sigma_star(E)) == 0


def test_is_asymmetric_examples():
    assert is_asymmetric(S(11, [1, 9, 3, 4, 5]))
    assert not is_asymmetric(S(11, [1, 10]))
    assert not is_asymmetric(S(5, [0]))


sets = st.integers(min_value=0, max_value=6).flatmap(
    lambda i: st.tuples(st.just([3, 5, 7, 11, 13, 17, 101][i]),
                        st.lists(st.integers(0, 200), max_size=12)))


@given(sets)
def test_table_matches_enumeration(data):
    p, raw = data
    A = S(p, raw)
    t = subsum_table(A)
    expected = subset_rows(p, A.elements())
    assert [set(t.row(k)) for k in range(len(A) + 1)] == expected
    assert t.union(0, len(A)) == sigma_lower(A, 0)


@given(sets, st.integers(0, 12))
def test_symmetry_nesting_endpoints(data, alpha):
    p, raw = data
    A = S(p, raw)
    d = len(A)
    alpha = min(alpha, d)
    s = A.total()
    assert sigma_lower(A, alpha) == sigma_upper(A, alpha).reflect(s)
    if alpha < d:
        assert sigma_lower(A, alpha + 1).issubset(sigma_lower(A, alpha))
    assert sigma_lower(A, 0) == sigma_upper(A, 0)
    if d:
        assert sigma_lower(A, 1) == sigma_star(A)


@settings(max_examples=60)
@given(sets)
def test_count_profile_agrees_with_table(data):
    p, raw = data
    A = S(p, raw)
    d = len(A)
    lower, upper = sigma_sizes_from_profile(*count_profile(A), d)
    assert lower == [len(sigma_lower(A, a)) for a in range(d + 1)]
    assert upper == [len(sigma_upper(A, a)) for a in range(d + 1)]


def test_count_profile_zero_element():
    A = S(7, [0, 1])
    fewest, most = count_profile(A)
    assert most[0] == 1 and fewest[0] == 0
    assert most[1] == 2 and fewest[1] == 1


def test_rotation_wraps():
    A = S(7, [5, 6])
    assert A.translate(3).elements() == [1, 2]
    assert A.translate(-6).elements() == [0, 6]
