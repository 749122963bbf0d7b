"""Brute-force ground truth for the DP kernels.

Deliberately shares no code with :mod:`ksums.sumsets` or the kernels: it walks
every k-subset with :func:`itertools.combinations` and counts sums exactly.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import combinations

from .errors import BudgetExceededError

ORACLE_THRESHOLD = 5_000_000


class OracleBudgetError(BudgetExceededError):
    pass


def brute_force_oracle(A, k, threshold=ORACLE_THRESHOLD):
    """Return ``(sums, multiplicity)``: the set of k-sums and exact counts."""
    elems = sorted(int(a) for a in A)
    if len(set(elems)) != len(elems):
        raise ValueError("oracle input must have distinct elements")
    if not 0 <= k <= len(elems):
        raise ValueError(f"k={k} out of range [0, {len(elems)}]")
    total = math.comb(len(elems), k)
    if total > threshold:
        raise OracleBudgetError(f"C({len(elems)},{k}) = {total} exceeds oracle threshold {threshold}",
                                required=total, budget=threshold)
    counts = Counter(sum(c) for c in combinations(elems, k))
    return set(counts), dict(counts)
