"""Restricted k-fold sumsets and representation multiplicities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import BudgetExceededError, InvalidInputError
from .intset import IntegerSet, check_k

DEFAULT_CAP = 2
ENUMERATION_THRESHOLD = 2_000_000


@dataclass(frozen=True, eq=False)
class SumMultiplicityTable:
    """Achievable k-sums with representation counts saturated at ``cap``.

    A count equal to ``cap`` means "at least ``cap``". ``values`` is sorted.
    """

    k: int
    cap: int
    values: np.ndarray
    counts: np.ndarray

    def __len__(self):
        return int(self.values.size)

    def __contains__(self, s):
        i = np.searchsorted(self.values, s)
        return bool(i < self.values.size and self.values[i] == s)

    def __getitem__(self, s):
        i = np.searchsorted(self.values, s)
        if i < self.values.size and self.values[i] == s:
            return int(self.counts[i])
        raise KeyError(s)

    def get(self, s, default=0):
        try:
            return self[s]
        except KeyError:
            return default

    @property
    def entries(self) -> dict:
        return dict(zip(self.values.tolist(), self.counts.tolist()))

    def unique(self) -> np.ndarray:
        """Sums with exactly one representation."""
        return self.values[self.counts == 1]

    def repeated(self) -> np.ndarray:
        """Sums with at least two representations (needs ``cap >= 2``)."""
        if self.cap < 2:
            raise InvalidInputError("cap=1 cannot tell unique sums from repeated ones")
        return self.values[self.counts >= 2]

    def __eq__(self, other):
        if not isinstance(other, SumMultiplicityTable):
            return NotImplemented
        return (self.k == other.k and self.cap == other.cap
                and np.array_equal(self.values, other.values)
                and np.array_equal(self.counts, other.counts))


@dataclass(frozen=True)
class RepresentationList:
    k: int
    groups: dict = field(repr=False)

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.groups.values())

    def sums(self) -> list:
        return sorted(self.groups)


def _prepare(A, k, exclude=None):
    A = IntegerSet.coerce(A)
    if exclude is not None:
        A = A.without(exclude)
    if A.n < 1 and exclude is None:
        raise InvalidInputError("sumset operations need a non-empty set")
    k = check_k(k, 0, A.n)
    return A, k


def ksum_set(A, k, use_jit=None) -> np.ndarray:
    """Sorted array of every sum of ``k`` distinct elements of ``A``.

    >>> ksum_set([1, 2, 4, 8], 2).tolist()
    [3, 5, 6, 9, 10, 12]
    """
    A, k = _prepare(A, k)
    layers = _kernels.compute_layers(A.as_array(), k, None, use_jit)
    return layers[k][0]


def ksum_sizes(A, kmax=None, use_jit=None) -> list:
    """``[|0∧A|, |1∧A|, ..., |kmax∧A|]`` from a single DP pass."""
    A = IntegerSet.coerce(A)
    if A.n < 1:
        raise InvalidInputError("sumset operations need a non-empty set")
    kmax = A.n if kmax is None else check_k(kmax, 0, A.n, "kmax")
    return _kernels.layer_sizes(A.as_array(), kmax, use_jit)


def ksum_size(A, k, use_jit=None) -> int:
    A, k = _prepare(A, k)
    return ksum_sizes(A, k, use_jit)[k]


def ksum_multiplicity(A, k, cap=DEFAULT_CAP, exclude=None, use_jit=None) -> SumMultiplicityTable:
    """Multiplicity table over ``k∧(A minus {exclude})`` saturated at ``cap``."""
    if isinstance(cap, bool) or not isinstance(cap, (int, np.integer)) or not 1 <= cap <= _kernels.MAX_CAP:
        raise InvalidInputError(f"cap must be an integer in [1, 2**62 - 1], got {cap!r}")
    B, k = _prepare(A, k, exclude)
    values, counts = _kernels.compute_layers(B.as_array(), k, int(cap), use_jit)[k]
    return SumMultiplicityTable(k, int(cap), values, counts)


def multiplicity_layers(A, kmax, cap=DEFAULT_CAP, exclude=None, use_jit=None) -> list:
    """Tables for every layer ``0..kmax`` from one pass."""
    B, kmax = _prepare(A, kmax, exclude)
    return [SumMultiplicityTable(j, int(cap), v, c)
            for j, (v, c) in enumerate(_kernels.compute_layers(B.as_array(), kmax, int(cap), use_jit))]


def enumerate_representations(A, k, threshold=ENUMERATION_THRESHOLD) -> RepresentationList:
    """Every k-subset of ``A`` grouped by its sum.

    Raises BudgetExceededError when C(n, k) exceeds ``threshold``; callers
    should fall back to :func:`ksum_multiplicity`.
    """
    A, k = _prepare(A, k)
    total = math.comb(A.n, k)
    if total > threshold:
        raise BudgetExceededError(
            f"C({A.n},{k}) = {total} subsets exceeds the enumeration threshold {threshold}",
            required=total, budget=threshold)
    groups: dict = {}
    for combo in combinations(A.elements, k):
        groups.setdefault(sum(combo), []).append(combo)
    return RepresentationList(k, dict(sorted(groups.items())))
