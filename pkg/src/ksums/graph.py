"""Extension graphs between k-sums and (k+1)-sums, and the counting chain.

``G`` joins the k-sum ``s`` to the (k+1)-sum ``s + a`` whenever some
representation of ``s`` avoids ``a``. ``H`` keeps the edges where two distinct
representations of ``s`` avoid ``a``. Vertices are the sum values themselves.

Every inequality is decided in exact integer arithmetic; fractional bounds
are compared after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidInputError
from .intset import IntegerSet, check_k
from .sumsets import (ENUMERATION_THRESHOLD, enumerate_representations,
                      ksum_multiplicity, multiplicity_layers)

STRATEGIES = ("exclusion", "representations")

# order matters: it is the order reports list them in
CHAIN_CHECKS = (
    "trivial_upper",        # e(G) <= n|U|
    "trivial_lower",        # e(G) >= (k+1)|V|
    "upper_with_S",         # e(G) <= (n-k)|k^A| + k|S|
    "lower_with_T",         # e(G) >= (k+1)|(k+1)^A| + 2|T|
    "H_edges_from_S",       # e(H) >= (n-2k)|S|
    "T_degree",             # d_G(v_t) >= k+3 on T
    "T_degree_with_H",      # (k+3) d_G(v_t) >= (k+1)(k+3) + 2 d_H(v_t) on T
)


@dataclass(eq=False)
class ExtensionGraph:
    A: IntegerSet
    k: int
    U: np.ndarray
    V: np.ndarray
    edge_s: np.ndarray
    edge_t: np.ndarray
    in_H: np.ndarray
    S_set: np.ndarray
    T_set: np.ndarray

    @property
    def e_G(self) -> int:
        return int(self.edge_s.size)

    @property
    def e_H(self) -> int:
        return int(np.count_nonzero(self.in_H))

    @property
    def edges(self) -> list:
        return [(int(s), int(t), bool(h))
                for s, t, h in zip(self.edge_s, self.edge_t, self.in_H)]

    def same_as(self, other: "ExtensionGraph") -> bool:
        return (self.A == other.A and self.k == other.k
                and all(np.array_equal(getattr(self, f), getattr(other, f))
                        for f in ("U", "V", "edge_s", "edge_t", "in_H", "S_set", "T_set")))


def _sorted_edges(s, t, h):
    order = np.lexsort((t, s))
    return s[order], t[order], h[order]


def _build_by_exclusion(A, k, use_jit):
    tables = multiplicity_layers(A, k + 1, cap=2, use_jit=use_jit)
    U, V = tables[k].values, tables[k + 1].values
    S_set, T_set = tables[k].repeated(), tables[k + 1].repeated()
    ss, ts, hs = [], [], []
    for a in A.elements:
        tab = ksum_multiplicity(A, k, cap=2, exclude=a, use_jit=use_jit)
        ss.append(tab.values)
        ts.append(tab.values + a)
        hs.append(tab.counts >= 2)
    s, t, h = _sorted_edges(np.concatenate(ss), np.concatenate(ts), np.concatenate(hs))
    return ExtensionGraph(A, k, U, V, s, t, h, S_set, T_set)


def _build_by_representations(A, k, threshold):
    reps = enumerate_representations(A, k, threshold)
    upper = enumerate_representations(A, k + 1, threshold)
    ss, ts, hs = [], [], []
    for s, subsets in reps.groups.items():
        for a in A.elements:
            avoiding = sum(1 for sub in subsets if a not in sub)
            if avoiding:
                ss.append(s)
                ts.append(s + a)
                hs.append(avoiding >= 2)
    arr = lambda xs: np.array(xs, dtype=np.int64)
    s, t, h = _sorted_edges(arr(ss), arr(ts), np.array(hs, dtype=bool))
    U = arr(sorted(reps.groups))
    V = arr(sorted(upper.groups))
    S_set = arr(sorted(x for x, subs in reps.groups.items() if len(subs) >= 2))
    T_set = arr(sorted(x for x, subs in upper.groups.items() if len(subs) >= 2))
    return ExtensionGraph(A, k, U, V, s, t, h, S_set, T_set)


def build_extension_graphs(A, k, strategy="exclusion", threshold=ENUMERATION_THRESHOLD,
                           use_jit=None) -> ExtensionGraph:
    """Build ``G`` (with the ``H`` flag on each edge) for ``0 <= k <= n-1``.

    ``strategy="exclusion"`` runs one capped DP per element with that element
    removed; ``"representations"`` enumerates every k- and (k+1)-subset and
    is limited by ``threshold``. Both give identical graphs.
    """
    A = IntegerSet.coerce(A)
    if A.n < 1:
        raise InvalidInputError("extension graphs need a non-empty set")
    k = check_k(k, 0, A.n - 1)
    if strategy == "exclusion":
        return _build_by_exclusion(A, k, use_jit)
    if strategy == "representations":
        return _build_by_representations(A, k, threshold)
    raise InvalidInputError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


@dataclass
class DegreeProfile:
    dG_U: np.ndarray
    dH_U: np.ndarray
    dG_V: np.ndarray
    dH_V: np.ndarray
    min_dG_S: Optional[int]
    min_dH_S: Optional[int]
    min_dG_T: Optional[int]
    min_dH_T: Optional[int]


def _min_over(values, universe, subset):
    if subset.size == 0:
        return None
    return int(values[np.searchsorted(universe, subset)].min())


def degree_profile(g: ExtensionGraph) -> DegreeProfile:
    iu = np.searchsorted(g.U, g.edge_s)
    iv = np.searchsorted(g.V, g.edge_t)
    dG_U = np.bincount(iu, minlength=g.U.size)
    dH_U = np.bincount(iu[g.in_H], minlength=g.U.size)
    dG_V = np.bincount(iv, minlength=g.V.size)
    dH_V = np.bincount(iv[g.in_H], minlength=g.V.size)
    return DegreeProfile(
        dG_U, dH_U, dG_V, dH_V,
        _min_over(dG_U, g.U, g.S_set), _min_over(dH_U, g.U, g.S_set),
        _min_over(dG_V, g.V, g.T_set), _min_over(dH_V, g.V, g.T_set),
    )


@dataclass
class Check:
    name: str
    relation: str
    lhs: Optional[int]
    rhs: int
    holds: bool
    witness: Optional[dict] = None
    chain: bool = True


@dataclass
class VerificationReport:
    A: IntegerSet
    k: int
    e_G: int
    e_H: int
    sizes: dict
    checks: list = field(default_factory=list)
    hypothesis_flags: dict = field(default_factory=dict)

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def chain_holds(self) -> bool:
        return all(c.holds for c in self.checks if c.chain)

    @property
    def failed(self) -> list:
        return [c for c in self.checks if not c.holds]


def _first(mask, values, extra):
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    i = int(idx[0])
    w = {"vertex": int(values[i])}
    w.update({name: int(arr[i]) for name, arr in extra.items()})
    return w


def verify_counting_chain(A, k, strategy="exclusion", graph=None, threshold=ENUMERATION_THRESHOLD,
                          use_jit=None) -> VerificationReport:
    """Check every counting inequality of the double-counting argument on
    ``(A, k)``. False inequalities become failed checks with witnesses;
    nothing is raised for them."""
    A = IntegerSet.coerce(A)
    g = graph if graph is not None else build_extension_graphs(A, k, strategy, threshold, use_jit)
    k = g.k
    n = A.n
    prof = degree_profile(g)
    nU, nV, nS, nT = g.U.size, g.V.size, g.S_set.size, g.T_set.size
    eG, eH = g.e_G, g.e_H
    in_S = np.isin(g.U, g.S_set)
    in_T = np.isin(g.V, g.T_set)
    counts = {"n": n, "k": k, "size_k": int(nU), "size_k1": int(nV), "S": int(nS), "T": int(nT),
              "e_G": eG, "e_H": eH}

    def aggregate(name, relation, lhs, rhs, local=None, chain=True):
        holds = lhs <= rhs if relation == "<=" else lhs >= rhs
        witness = None
        if not holds:
            witness = local() if local is not None else None
            if witness is None:
                witness = {"counts": dict(counts)}
        return Check(name, relation, int(lhs), int(rhs), bool(holds), witness, chain)

    def forall(name, per_vertex_lhs, rhs, mask_T):
        # per-vertex bound over T; lhs reported as the minimum
        vals = per_vertex_lhs[mask_T]
        if vals.size == 0:
            return Check(name, "min>=", None, int(rhs), True)
        lhs = int(vals.min())
        holds = lhs >= rhs
        witness = None
        if not holds:
            witness = _first(mask_T & (per_vertex_lhs < rhs), g.V,
                             {"d_G": prof.dG_V, "d_H": prof.dH_V})
        return Check(name, "min>=", lhs, int(rhs), holds, witness)

    u_cap = np.where(in_S, n, n - k)
    v_floor = np.where(in_T, k + 3, k + 1)
    checks = [
        aggregate("trivial_upper", "<=", eG, n * nU,
                  lambda: _first(prof.dG_U > n, g.U, {"d_G": prof.dG_U})),
        aggregate("trivial_lower", ">=", eG, (k + 1) * nV,
                  lambda: _first(prof.dG_V < k + 1, g.V, {"d_G": prof.dG_V})),
        aggregate("upper_with_S", "<=", eG, (n - k) * nU + k * nS,
                  lambda: _first(prof.dG_U > u_cap, g.U, {"d_G": prof.dG_U})),
        aggregate("lower_with_T", ">=", eG, (k + 1) * nV + 2 * nT,
                  lambda: _first(prof.dG_V < v_floor, g.V, {"d_G": prof.dG_V})),
        aggregate("H_edges_from_S", ">=", eH, (n - 2 * k) * nS,
                  lambda: _first(in_S & (prof.dH_U < n - 2 * k), g.U, {"d_H": prof.dH_U})),
        forall("T_degree", prof.dG_V, k + 3, in_T),
        forall("T_degree_with_H", (k + 3) * prof.dG_V - 2 * prof.dH_V, (k + 1) * (k + 3), in_T),
        # consequences; the last is only guaranteed under the size hypothesis
        aggregate("combined", "<=", (k + 3) * (k + 1) * nV + 2 * (n - 2 * k) * nS,
                  (k + 3) * ((n - k) * nU + k * nS), chain=False),
        aggregate("conclusion", "<=", (k + 1) * nV, (n - k) * nU, chain=False),
    ]
    flags = {"theorem": 2 * n >= k * k + 7 * k, "question": n > 2 * k}
    return VerificationReport(A, k, eG, eH, counts, checks, flags)
