import math

import pytest
from hypothesis import given, strategies as st

from ksums import (BudgetExceededError, IntegerSet, InvalidInputError, SumOverflowError,
                   enumerate_representations, ksum_multiplicity, ksum_set, ksum_sizes)
from ksums.oracle import brute_force_oracle

from conftest import small_sets


def test_ap_example():
    s = ksum_set([1, 2, 3, 4, 5], 2)
    assert s.tolist() == [3, 4, 5, 6, 7, 8, 9]
    assert len(s) == 2 * (5 - 2) + 1


def test_k_zero_is_empty_sum():
    assert ksum_set([4, 9, -1], 0).tolist() == [0]


def test_powers_of_two():
    assert ksum_set([1, 2, 4, 8], 2).tolist() == [3, 5, 6, 9, 10, 12]


def test_k_equals_n():
    assert ksum_set([-3, 5, 7], 3).tolist() == [9]
    assert ksum_multiplicity([-3, 5, 7], 3).entries == {9: 1}


def test_multiplicity_example():
    tab = ksum_multiplicity([1, 2, 3, 4, 5], 2, cap=2)
    assert tab.entries == {3: 1, 4: 1, 5: 2, 6: 2, 7: 2, 8: 1, 9: 1}
    assert tab.unique().tolist() == [3, 4, 8, 9]
    assert tab.repeated().tolist() == [5, 6, 7]


def test_multiplicity_with_exclusion():
    tab = ksum_multiplicity([1, 2, 3, 4, 5], 2, cap=2, exclude=5)
    assert tab[5] == 2
    assert 9 not in tab
    assert tab.entries == {3: 1, 4: 1, 5: 2, 6: 1, 7: 1}


def test_multiplicity_errors():
    with pytest.raises(InvalidInputError):
        ksum_multiplicity([1, 2, 3], 1, exclude=9)
    with pytest.raises(InvalidInputError):
        ksum_multiplicity([1, 2, 3], 3, exclude=1)
    with pytest.raises(InvalidInputError):
        ksum_multiplicity([1, 2, 3], 1, cap=0)
    with pytest.raises(InvalidInputError):
        ksum_multiplicity([1, 2, 3], 1, cap=1).repeated()


@pytest.mark.parametrize("k", [-1, 4])
def test_k_out_of_range(k):
    with pytest.raises(InvalidInputError):
        ksum_set([1, 2, 3], k)


def test_empty_set_rejected():
    with pytest.raises(InvalidInputError):
        ksum_set([], 0)


def test_accumulation_overflow_reported():
    from ksums import _kernels
    import numpy as np
    big = np.array([(1 << 62), (1 << 62) + 1], dtype=np.int64)
    with pytest.raises(SumOverflowError):
        _kernels.layer_bounds(big, 2)


def test_representations_example():
    reps = enumerate_representations([1, 2, 3, 4], 2)
    assert reps.groups == {3: [(1, 2)], 4: [(1, 3)], 5: [(1, 4), (2, 3)], 6: [(2, 4)], 7: [(3, 4)]}
    assert reps.total == 6
    assert enumerate_representations([5, 6], 0).groups == {0: [()]}


def test_representation_threshold():
    A = IntegerSet(range(1, 41))
    with pytest.raises(BudgetExceededError) as info:
        enumerate_representations(A, 10)
    assert info.value.required == math.comb(40, 10)


@given(small_sets(max_size=10), st.data())
def test_size_bounds_and_extremes(vals, data):
    A = IntegerSet(vals)
    k = data.draw(st.integers(0, A.n))
    s = ksum_set(A, k)
    assert 1 <= len(s) <= math.comb(A.n, k)
    e = A.elements
    assert s[0] == sum(e[:k])
    assert s[-1] == sum(e[A.n - k:])


@given(small_sets(max_size=11))
def test_symmetry(vals):
    sizes = ksum_sizes(vals)
    assert sizes == sizes[::-1]


@given(small_sets(max_size=10), st.data())
def test_three_routes_agree(vals, data):
    A = IntegerSet(vals)
    k = data.draw(st.integers(0, A.n))
    s = ksum_set(A, k).tolist()
    assert ksum_multiplicity(A, k).values.tolist() == s
    assert list(enumerate_representations(A, k).groups) == s


@given(small_sets(max_size=10), st.data())
def test_oracle_equivalence(vals, data):
    A = IntegerSet(vals)
    k = data.draw(st.integers(0, A.n))
    sums, mult = brute_force_oracle(A, k)
    assert ksum_set(A, k).tolist() == sorted(sums)
    assert ksum_multiplicity(A, k, cap=10**9).entries == mult
    assert ksum_multiplicity(A, k, cap=2).entries == {s: min(c, 2) for s, c in mult.items()}


@given(small_sets(min_size=2, max_size=10), st.data())
def test_exclusion_equals_smaller_set(vals, data):
    A = IntegerSet(vals)
    a = data.draw(st.sampled_from(A.elements))
    k = data.draw(st.integers(0, A.n - 1))
    assert ksum_multiplicity(A, k, exclude=a) == ksum_multiplicity(A.without(a), k)
    assert set(ksum_multiplicity(A, k, exclude=a).entries) <= set(ksum_set(A, k).tolist())


def test_deterministic():
    A = [-40, -3, 0, 7, 19, 22, 31]
    assert ksum_multiplicity(A, 3) == ksum_multiplicity(A, 3)
