"""Exhaustive and stochastic searches over integer sets for large ratios
|(k+1)^A| / |k^A| and for sets with n > 2k that violate the bound."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import BudgetExceededError, InvalidInputError
from .intset import IntegerSet, check_k
from .sumsets import ksum_sizes
from .theorem import RatioVerdict, verdict_from_sizes

SEARCH_BUDGET = 10_000_000


@dataclass
class SearchReport:
    mode: str
    space: dict
    instances_checked: int
    best: Optional[RatioVerdict]
    counterexamples: list = field(default_factory=list)
    seed: Optional[int] = None
    wall_time: float = 0.0
    trace: Optional[list] = None
    rows: Optional[list] = None


def better(a: RatioVerdict, b: Optional[RatioVerdict]) -> bool:
    """Strictly larger |(k+1)^A|/|k^A|, ties to the lexicographically smaller set."""
    if b is None:
        return True
    left = a.size_k1 * b.size_k
    right = b.size_k1 * a.size_k
    if left != right:
        return left > right
    return a.A.elements < b.A.elements


def is_counterexample(v: RatioVerdict) -> bool:
    return v.hyp_question and not v.holds


def _evaluate(elems, k, use_jit=None) -> RatioVerdict:
    A = IntegerSet(elems)
    sizes = ksum_sizes(A, k + 1, use_jit)
    return verdict_from_sizes(A, k, sizes[k], sizes[k + 1])


def _is_canonical(combo):
    if combo[0] != 1:
        return False
    return reduce(math.gcd, (b - a for a, b in zip(combo, combo[1:])), 0) == 1


def _scan(args):
    M, n, k, first, canonicalize, keep_rows = args
    checked = 0
    best = None
    found = []
    rows = [] if keep_rows else None
    for rest in combinations(range(first + 1, M + 1), n - 1):
        combo = (first,) + rest
        if canonicalize and not _is_canonical(combo):
            continue
        v = _evaluate(combo, k)
        checked += 1
        if better(v, best):
            best = v
        if is_counterexample(v):
            found.append(v)
        if keep_rows:
            rows.append(v)
    return checked, best, found, rows


def exhaustive_search(M, n, k, budget=SEARCH_BUDGET, canonicalize=False, workers=1,
                      keep_rows=False) -> SearchReport:
    """Evaluate every n-subset of ``{1..M}``.

    With ``canonicalize`` only sets with minimum 1 and coprime gaps are
    evaluated; the verdict is invariant under translation and dilation, so
    the best ratio (and best set) is unchanged. The space is split by
    smallest element; chunks are merged in a fixed order.
    """
    for name, v in (("M", M), ("n", n), ("k", k)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidInputError(f"{name} must be an integer")
    if n > M:
        raise InvalidInputError(f"infeasible: n={n} exceeds the universe size M={M}")
    if n < 2:
        raise InvalidInputError("search needs n >= 2")
    k = check_k(k, 1, n - 1)
    total = math.comb(M, n)
    if total > budget:
        raise BudgetExceededError(
            f"C({M},{n}) = {total} sets exceeds the search budget {budget}",
            required=total, budget=budget)
    started = time.perf_counter()
    firsts = [1] if canonicalize else list(range(1, M - n + 2))
    jobs = [(M, n, k, f, canonicalize, keep_rows) for f in firsts]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan, jobs))
    else:
        parts = [_scan(j) for j in jobs]
    checked = 0
    best = None
    found = []
    rows = [] if keep_rows else None
    for c, b, f, r in parts:
        checked += c
        if b is not None and better(b, best):
            best = b
        found.extend(f)
        if keep_rows:
            rows.extend(r)
    found.sort(key=lambda v: v.A.elements)
    space = {"universe": M, "n": n, "k": k, "canonicalize": bool(canonicalize), "size": total}
    return SearchReport("exhaustive", space, checked, best, found,
                        wall_time=time.perf_counter() - started, rows=rows)


class _Stream:
    """Uniform integers from the raw PCG64 output, stable across platforms."""

    def __init__(self, seed):
        self.bits = np.random.PCG64(seed)

    def below(self, span):
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            x = int(self.bits.random_raw())
            if x < limit:
                return x % span

    def distinct(self, n, lo, span, avoid=()):
        out = []
        seen = set(avoid)
        while len(out) < n:
            v = lo + self.below(span)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out


def stochastic_search(n, k, lo, hi, seed, budget=10_000, patience=200, record_trace=False) -> SearchReport:
    """Hill climbing with restarts over n-subsets of ``[lo, hi]``.

    A move swaps one element for a fresh in-range value; it is accepted when
    the exact ratio does not drop. A restart happens after ``patience``
    consecutive moves without strict improvement. ``budget`` counts ratio
    evaluations.
    """
    if n < 2:
        raise InvalidInputError("search needs n >= 2")
    k = check_k(k, 1, n - 1)
    if budget < 1:
        raise InvalidInputError("budget must be at least 1")
    span = hi - lo + 1
    if span < n:
        raise InvalidInputError(f"range [{lo}, {hi}] is too small for {n} distinct values")
    started = time.perf_counter()
    stream = _Stream(seed)
    evals = 0
    restarts = 0
    best = None
    found = {}
    trace = [] if record_trace else None

    def score(elems):
        nonlocal evals, best
        v = _evaluate(sorted(elems), k)
        evals += 1
        if better(v, best):
            best = v
        if is_counterexample(v):
            found.setdefault(v.A.elements, v)
        return v

    while evals < budget:
        cur = stream.distinct(n, lo, span)
        cur_v = score(cur)
        if trace is not None:
            trace.append((restarts, cur_v.size_k, cur_v.size_k1))
        stale = 0
        while evals < budget and stale < patience and span > n:
            i = stream.below(n)
            cand = list(cur)
            cand[i] = stream.distinct(1, lo, span, avoid=cur)[0]
            v = score(cand)
            gain = v.size_k1 * cur_v.size_k - cur_v.size_k1 * v.size_k
            if gain >= 0:
                cur, cur_v = cand, v
                if trace is not None:
                    trace.append((restarts, v.size_k, v.size_k1))
            stale = 0 if gain > 0 else stale + 1
        restarts += 1
        if span == n:
            break
    space = {"n": n, "k": k, "lo": lo, "hi": hi, "budget": budget, "patience": patience,
             "restarts": restarts}
    found_list = [found[key] for key in sorted(found)]
    return SearchReport("stochastic", space, evals, best, found_list, seed=seed,
                        wall_time=time.perf_counter() - started, trace=trace)
