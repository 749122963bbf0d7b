"""Exact ratio verdicts, instance generators and closed-form checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, SumOverflowError
from .intset import INT64_MAX, INT64_MIN, IntegerSet, check_k
from .oracle import brute_force_oracle  # noqa: F401  (re-exported)
from .sumsets import ksum_sizes


@dataclass(frozen=True)
class RatioVerdict:
    """Cross-multiplied comparison of |(k+1)^A| / |k^A| against (n-k)/(k+1)."""

    A: IntegerSet
    k: int
    size_k: int
    size_k1: int
    lhs_cross: int
    rhs_cross: int
    holds: bool
    equality: bool
    hyp_theorem: bool
    hyp_question: bool

    @property
    def n(self):
        return self.A.n


def hypotheses(n: int, k: int):
    return 2 * n >= k * k + 7 * k, n > 2 * k


def verdict_from_sizes(A, k, size_k, size_k1) -> RatioVerdict:
    n = A.n
    lhs = (k + 1) * size_k1
    rhs = (n - k) * size_k
    hyp_t, hyp_q = hypotheses(n, k)
    return RatioVerdict(A, k, size_k, size_k1, lhs, rhs, lhs <= rhs, lhs == rhs, hyp_t, hyp_q)


def ratio_check(A, k, use_jit=None) -> RatioVerdict:
    """Decide ``(k+1)|(k+1)^A| <= (n-k)|k^A|`` exactly, for ``1 <= k <= n-1``.

    >>> v = ratio_check([1, 2, 3, 4], 2)
    >>> v.lhs_cross, v.rhs_cross, v.holds
    (12, 10, False)
    """
    A = IntegerSet.coerce(A)
    if A.n < 2:
        raise InvalidInputError("ratio_check needs n >= 2")
    k = check_k(k, 1, A.n - 1)
    sizes = ksum_sizes(A, k + 1, use_jit)
    return verdict_from_sizes(A, k, sizes[k], sizes[k + 1])


# ------------------------------------------------------------------ generators

def _checked(values):
    for v in values:
        if not INT64_MIN <= v <= INT64_MAX:
            raise SumOverflowError(f"generated element {v} does not fit in 64 bits")
    return IntegerSet(values)


def gp(n, r=2, a0=1) -> IntegerSet:
    if n < 1:
        raise InvalidInputError("gp needs n >= 1")
    if a0 == 0:
        raise InvalidInputError("gp needs a non-zero first term")
    if abs(r) < 2:
        raise InvalidInputError("gp needs an integer ratio with |r| >= 2")
    return _checked([a0 * r ** i for i in range(n)])


def ap(n, d=1, a0=1) -> IntegerSet:
    if n < 1:
        raise InvalidInputError("ap needs n >= 1")
    if d < 1:
        raise InvalidInputError("ap needs difference d >= 1")
    return _checked([a0 + i * d for i in range(n)])


def _bounded(bitgen, span):
    # unbiased draw from [0, span) by rejection on raw 64-bit PCG64 output
    limit = (1 << 64) - ((1 << 64) % span)
    while True:
        x = int(bitgen.random_raw())
        if x < limit:
            return x % span


def random_set(n, lo, hi, seed) -> IntegerSet:
    """``n`` distinct integers drawn uniformly from ``[lo, hi]``.

    Draws come from the raw PCG64 stream seeded with ``seed`` (whose output is
    fixed across numpy versions and platforms); repeats are rejected.
    """
    if n < 1:
        raise InvalidInputError("random needs n >= 1")
    if hi - lo + 1 < n:
        raise InvalidInputError(f"range [{lo}, {hi}] cannot hold {n} distinct values")
    bitgen = np.random.PCG64(seed)
    span = hi - lo + 1
    seen = set()
    out = []
    while len(out) < n:
        v = lo + _bounded(bitgen, span)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return _checked(out)


def generate(kind, **params) -> IntegerSet:
    """``generate("gp", n=4, r=2, a0=1)``, ``generate("ap", n=5, d=1)``,
    ``generate("random", n=6, lo=-50, hi=50, seed=7)``."""
    makers = {"gp": gp, "ap": ap, "random": random_set}
    if kind not in makers:
        raise InvalidInputError(f"unknown generator {kind!r}; expected gp, ap or random")
    try:
        return makers[kind](**params)
    except TypeError as exc:
        raise InvalidInputError(f"bad parameters for {kind}: {exc}") from None


# ----------------------------------------------------------- structure checks

def detect_ap(A):
    """Common difference if ``A`` is an arithmetic progression, else None.
    Sets of size one or two count as progressions."""
    e = A.elements
    if len(e) < 2:
        return 1 if e else None
    d = e[1] - e[0]
    if all(b - a == d for a, b in zip(e, e[1:])):
        return d
    return None


def detect_gp(A):
    """``(a0, r)`` with integer ``|r| >= 2`` if ``A = {a0 r^i}``, else None."""
    e = sorted(A.elements, key=abs)
    if len(e) < 2 or e[0] == 0:
        return None
    if e[1] % e[0]:
        return None
    r = e[1] // e[0]
    if abs(r) < 2:
        return None
    if all(b == a * r for a, b in zip(e, e[1:])):
        return e[0], r
    return None


@dataclass
class StructureReport:
    A: IntegerSet
    sizes: list
    symmetric: bool
    ap_difference: object = None
    ap_closed_form: object = None
    gp_params: object = None
    gp_all_distinct: object = None
    gp_equality: object = None
    middle_equality: object = None
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def structural_checks(A, use_jit=None) -> StructureReport:
    """Symmetry of sumset sizes, the AP closed form, GP equality, and equality
    at ``k = (n-1)/2`` for odd ``n``. Non-applicable fields stay None."""
    A = IntegerSet.coerce(A)
    n = A.n
    sizes = ksum_sizes(A, n, use_jit)
    rep = StructureReport(A, sizes, all(sizes[k] == sizes[n - k] for k in range(n + 1)))
    if not rep.symmetric:
        k = next(k for k in range(n + 1) if sizes[k] != sizes[n - k])
        rep.failures.append(f"symmetry fails at k={k}: {sizes[k]} != {sizes[n - k]}")

    d = detect_ap(A)
    if d is not None:
        rep.ap_difference = d
        bad = [k for k in range(n + 1) if sizes[k] != k * (n - k) + 1]
        rep.ap_closed_form = not bad
        if bad:
            rep.failures.append(f"AP closed form fails at k={bad}")

    g = detect_gp(A)
    if g is not None:
        rep.gp_params = g
        rep.gp_all_distinct = all(sizes[k] == math.comb(n, k) for k in range(n + 1))
        rep.gp_equality = all((k + 1) * sizes[k + 1] == (n - k) * sizes[k] for k in range(1, n))
        if not rep.gp_all_distinct:
            rep.failures.append("GP has coinciding subset sums")
        if not rep.gp_equality:
            rep.failures.append("GP misses equality in the ratio bound")

    if n % 2 == 1 and n >= 3:
        k = (n - 1) // 2
        rep.middle_equality = (k + 1) * sizes[k + 1] == (n - k) * sizes[k]
        if not rep.middle_equality:
            rep.failures.append(f"no equality at k={k}")
    return rep
