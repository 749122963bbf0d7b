"""JSON and CSV forms of tables, graphs and reports.

JSON field names follow the dataclass fields; graph edges are written as
``[s, t, in_H]`` triples. Output is deterministic apart from ``wall_time``,
which callers can drop with ``timing=False``.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .graph import Check, DegreeProfile, ExtensionGraph, VerificationReport
from .intset import IntegerSet
from .search import SearchReport
from .sumsets import RepresentationList, SumMultiplicityTable
from .theorem import RatioVerdict, StructureReport

CSV_COLUMNS = ("set", "n", "k", "size_k", "size_k1", "lhs_cross", "rhs_cross",
               "holds", "hyp_theorem", "hyp_question")


def verdict_dict(v: RatioVerdict) -> dict:
    return {
        "A": list(v.A.elements), "n": v.A.n, "k": v.k,
        "size_k": v.size_k, "size_k1": v.size_k1,
        "lhs_cross": v.lhs_cross, "rhs_cross": v.rhs_cross,
        "holds": v.holds, "equality": v.equality,
        "hyp_theorem": v.hyp_theorem, "hyp_question": v.hyp_question,
    }


def to_jsonable(obj, timing=True):
    if isinstance(obj, IntegerSet):
        return list(obj.elements)
    if isinstance(obj, RatioVerdict):
        return verdict_dict(obj)
    if isinstance(obj, SumMultiplicityTable):
        return {"k": obj.k, "cap": obj.cap,
                "entries": [[int(s), int(c)] for s, c in zip(obj.values, obj.counts)]}
    if isinstance(obj, RepresentationList):
        return {"k": obj.k, "groups": [[s, [list(x) for x in subs]] for s, subs in obj.groups.items()]}
    if isinstance(obj, ExtensionGraph):
        return {
            "instance": {"A": list(obj.A.elements), "k": obj.k},
            "k": obj.k, "U": obj.U.tolist(), "V": obj.V.tolist(),
            "edges": [list(e) for e in obj.edges],
            "S_set": obj.S_set.tolist(), "T_set": obj.T_set.tolist(),
            "e_G": obj.e_G, "e_H": obj.e_H,
        }
    if isinstance(obj, DegreeProfile):
        return {k: (v.tolist() if isinstance(v, np.ndarray) else v) for k, v in vars(obj).items()}
    if isinstance(obj, Check):
        return {"name": obj.name, "relation": obj.relation, "lhs": obj.lhs, "rhs": obj.rhs,
                "holds": obj.holds, "witness": obj.witness, "chain": obj.chain}
    if isinstance(obj, VerificationReport):
        return {
            "instance": {"A": list(obj.A.elements), "k": obj.k},
            "e_G": obj.e_G, "e_H": obj.e_H, "sizes": obj.sizes,
            "checks": [to_jsonable(c) for c in obj.checks],
            "chain_holds": obj.chain_holds,
            "hypothesis_flags": obj.hypothesis_flags,
        }
    if isinstance(obj, StructureReport):
        return {
            "A": list(obj.A.elements), "sizes": obj.sizes, "symmetric": obj.symmetric,
            "ap_difference": obj.ap_difference, "ap_closed_form": obj.ap_closed_form,
            "gp_params": list(obj.gp_params) if obj.gp_params else None,
            "gp_all_distinct": obj.gp_all_distinct, "gp_equality": obj.gp_equality,
            "middle_equality": obj.middle_equality, "failures": obj.failures,
        }
    if isinstance(obj, SearchReport):
        out = {
            "mode": obj.mode, "space": obj.space, "instances_checked": obj.instances_checked,
            "best": verdict_dict(obj.best) if obj.best else None,
            "counterexamples": [verdict_dict(v) for v in obj.counterexamples],
            "seed": obj.seed,
        }
        if obj.trace is not None:
            out["trace"] = [list(t) for t in obj.trace]
        if timing:
            out["wall_time"] = obj.wall_time
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, timing) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, timing) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def dumps(obj, timing=True) -> str:
    return json.dumps(to_jsonable(obj, timing), indent=2) + "\n"


def csv_row(v: RatioVerdict) -> list:
    return [v.A.to_text(), v.A.n, v.k, v.size_k, v.size_k1, v.lhs_cross, v.rhs_cross,
            int(v.holds), int(v.hyp_theorem), int(v.hyp_question)]


def verdicts_csv(verdicts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for v in verdicts:
        w.writerow(csv_row(v))
    return buf.getvalue()
