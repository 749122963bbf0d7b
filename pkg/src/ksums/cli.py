"""Command-line entry point.

    ksums compute --set 1,2,3,4,5 --k 2 --format json
    ksums verify --gen gp:n=5,r=2,a0=1 --k 1..3
    ksums search --exhaustive --universe 6 --n 3 --k 1
    ksums search --stochastic --n 6 --k 2 --range 1..64 --seed 1 --budget 10000
    ksums report out1.json out2.json --format text

Exit codes: 0 success (a found counterexample is a success), 2 invalid
input, 3 budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import BudgetExceededError, InvalidInputError, InvariantViolation, KsumsError
from .graph import verify_counting_chain
from .intset import IntegerSet
from .oracle import ORACLE_THRESHOLD, brute_force_oracle
from .search import SEARCH_BUDGET, exhaustive_search, stochastic_search
from .serialize import to_jsonable, verdict_dict, verdicts_csv
from .sumsets import ENUMERATION_THRESHOLD, ksum_multiplicity
from .theorem import RatioVerdict, generate, ratio_check, verdict_from_sizes

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4


# ------------------------------------------------------------------- parsing

def parse_krange(text):
    """``"2"`` -> (2, 2); ``"1..3"`` -> (1, 3)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InvalidInputError(f"bad k-range {text!r}; use K or A..B") from None
    if lo > hi:
        raise InvalidInputError(f"empty k-range {text!r}")
    return lo, hi


def parse_range(text):
    for sep in ("..", ","):
        if sep in text[1:]:
            i = text.index(sep, 1)
            try:
                return int(text[:i]), int(text[i + len(sep):])
            except ValueError:
                break
    raise InvalidInputError(f"bad value range {text!r}; use LO..HI")


def parse_gen(text):
    """``"gp:n=5,r=2,a0=1"`` -> ("gp", {...}); random gets ``seed=0`` if absent."""
    kind, _, rest = text.partition(":")
    params = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise InvalidInputError(f"bad generator parameter {item!r} in {text!r}")
        key = key.strip()
        if key == "range":
            params["lo"], params["hi"] = parse_range(val.strip())
            continue
        try:
            params[key] = int(val)
        except ValueError:
            raise InvalidInputError(f"generator parameter {key} must be an integer") from None
    if kind == "random":
        params.setdefault("seed", 0)
    return kind, params


def read_set_file(path):
    sets = []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from None
    for lineno, line in enumerate(lines, 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            sets.append(IntegerSet.parse(body))
        except InvalidInputError as exc:
            raise InvalidInputError(f"{path}:{lineno}: {exc}") from None
    if not sets:
        raise InvalidInputError(f"{path} contains no sets")
    return sets


def resolve_sets(args, config):
    sets = []
    sources = []
    for text in args.set or []:
        sets.append(IntegerSet.parse(text))
        sources.append({"set": sets[-1].to_text()})
    for text in args.gen or []:
        kind, params = parse_gen(text)
        sets.append(generate(kind, **params))
        sources.append({"gen": kind, "params": params})
    for path in args.file or []:
        got = read_set_file(path)
        sets.extend(got)
        sources.append({"file": str(path), "count": len(got)})
    if not sets:
        raise InvalidInputError("no input set given; use --set, --gen or --file")
    config["sources"] = sources
    return sets


def k_values(krange, lo, hi):
    if krange is None:
        return list(range(lo, hi + 1))
    a, b = krange
    if a < lo or b > hi:
        raise InvalidInputError(f"k-range {a}..{b} outside the allowed range {lo}..{hi}")
    return list(range(a, b + 1))


# ------------------------------------------------------------------ commands

def cmd_compute(args, config):
    sets = resolve_sets(args, config)
    results, verdicts = [], []
    for A in sets:
        ks = k_values(config["k"], 0, A.n)
        for k in ks:
            table = ksum_multiplicity(A, k, cap=args.cap)
            item = {"A": list(A.elements), "n": A.n, "k": k, "size": len(table),
                    "table": to_jsonable(table)}
            if args.check_oracle:
                sums, mult = brute_force_oracle(A, k, threshold=args.oracle_threshold)
                capped = {s: min(c, args.cap) for s, c in mult.items()}
                if capped != table.entries:
                    raise InvariantViolation(f"DP disagrees with the brute-force oracle on {A!r}, k={k}")
                item["oracle_agrees"] = True
            results.append(item)
        sizes = {r["k"]: r["size"] for r in results if r["A"] == list(A.elements)}
        for k in ks:
            if 1 <= k <= A.n - 1 and k + 1 in sizes:
                verdicts.append(verdict_from_sizes(A, k, sizes[k], sizes[k + 1]))
    return results, verdicts, EXIT_OK, []


def cmd_verify(args, config):
    sets = resolve_sets(args, config)
    results, verdicts, notes = [], [], []
    status = EXIT_OK
    for A in sets:
        lo = 1 if A.n >= 2 else 0
        for k in k_values(config["k"], lo, A.n - 1):
            rep = verify_counting_chain(A, k, strategy=args.strategy, threshold=args.enum_threshold)
            item = {"report": to_jsonable(rep)}
            if k >= 1:
                v = ratio_check(A, k)
                verdicts.append(v)
                item["ratio"] = verdict_dict(v)
                if not v.holds and v.hyp_theorem:
                    status = EXIT_INVARIANT
                    notes.append(f"bound fails although n >= (k^2+7k)/2: A={A.to_text()} k={k}")
                elif not v.holds and v.hyp_question:
                    notes.append(certificate(v))
            if not rep.chain_holds:
                status = EXIT_INVARIANT
                bad = ", ".join(c.name for c in rep.failed if c.chain)
                notes.append(f"counting chain check(s) failed for A={A.to_text()} k={k}: {bad}")
            results.append(item)
    return results, verdicts, status, notes


def cmd_search(args, config):
    if args.exhaustive == args.stochastic:
        raise InvalidInputError("choose exactly one of --exhaustive or --stochastic")
    if args.n is None or args.k is None:
        raise InvalidInputError("search needs --n and --k")
    k = int(args.k)
    if args.exhaustive:
        if args.universe is None:
            raise InvalidInputError("--exhaustive needs --universe M")
        budget = SEARCH_BUDGET if args.budget is None else args.budget
        config["budget"] = budget
        rep = exhaustive_search(args.universe, args.n, k, budget=budget,
                                canonicalize=args.canonicalize, workers=args.workers,
                                keep_rows=args.format == "csv")
        rows = rep.rows or []
    else:
        if args.range is None:
            raise InvalidInputError("--stochastic needs --range LO..HI")
        lo, hi = parse_range(args.range)
        seed = 0 if args.seed is None else args.seed
        config["seed"] = seed
        budget = 10_000 if args.budget is None else args.budget
        config["budget"] = budget
        rep = stochastic_search(args.n, k, lo, hi, seed, budget=budget, patience=args.patience)
        rows = ([rep.best] if rep.best else []) + list(rep.counterexamples)
    notes = [certificate(v) for v in rep.counterexamples]
    for v in rep.counterexamples:
        if not v.hyp_question or v.holds:
            raise InvariantViolation(f"listed counterexample does not re-verify: {v.A!r}")
        again = ratio_check(v.A, v.k)
        if (again.lhs_cross, again.rhs_cross) != (v.lhs_cross, v.rhs_cross):
            raise InvariantViolation(f"certificate for {v.A!r} does not replay")
    payload = to_jsonable(rep, timing=not args.reproducible)
    return [payload], rows, EXIT_OK, notes


def _collect_verdicts(obj, out):
    if isinstance(obj, dict):
        if {"A", "k", "size_k", "size_k1"} <= obj.keys():
            out.append(obj)
            return
        for v in obj.values():
            _collect_verdicts(v, out)
    elif isinstance(obj, list):
        for v in obj:
            _collect_verdicts(v, out)


def cmd_report(args, config):
    found = []
    for path in args.inputs:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {path}: {exc}") from None
        if p.suffix == ".csv":
            for row in csv.DictReader(text.splitlines()):
                found.append({"A": [int(x) for x in row["set"].split(",")], "k": int(row["k"]),
                              "size_k": int(row["size_k"]), "size_k1": int(row["size_k1"])})
        else:
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"{path} is not JSON: {exc}") from None
            _collect_verdicts(doc, found)
    config["inputs"] = [str(p) for p in args.inputs]
    seen = {}
    for d in found:
        A = IntegerSet(d["A"])
        key = (A.elements, int(d["k"]))
        if key not in seen:
            seen[key] = verdict_from_sizes(A, int(d["k"]), int(d["size_k"]), int(d["size_k1"]))
    verdicts = [seen[key] for key in sorted(seen)]
    results = []
    for v in verdicts:
        row = verdict_dict(v)
        row["ratio"] = str(Fraction(v.size_k1, v.size_k))
        row["bound"] = str(Fraction(v.n - v.k, v.k + 1))
        results.append(row)
    notes = [certificate(v) for v in verdicts if v.hyp_question and not v.holds]
    return results, verdicts, EXIT_OK, notes


def certificate(v: RatioVerdict) -> str:
    return ("COUNTEREXAMPLE (n > 2k, bound fails): "
            f"A={{{v.A.to_text()}}} n={v.n} k={v.k} |k^A|={v.size_k} |(k+1)^A|={v.size_k1} "
            f"(k+1)|(k+1)^A|={v.lhs_cross} > (n-k)|k^A|={v.rhs_cross}")


# ------------------------------------------------------------------- output

def render_text(command, results, verdicts):
    lines = []
    if command == "compute":
        for r in results:
            lines.append(f"A={{{','.join(map(str, r['A']))}}} k={r['k']} |k^A|={r['size']}")
    elif command == "verify":
        for r in results:
            rep = r["report"]
            inst = rep["instance"]
            lines.append(f"A={{{','.join(map(str, inst['A']))}}} k={inst['k']} "
                         f"e(G)={rep['e_G']} e(H)={rep['e_H']} chain={'ok' if rep['chain_holds'] else 'FAIL'}")
            for c in rep["checks"]:
                tag = "ok  " if c["holds"] else "FAIL"
                lines.append(f"  {tag} {c['name']:<18} {c['lhs']} {c['relation']} {c['rhs']}")
            if "ratio" in r:
                v = r["ratio"]
                lines.append(f"  ratio: {v['lhs_cross']} <= {v['rhs_cross']} -> {v['holds']}"
                             f"{' (equality)' if v['equality'] else ''}")
    elif command == "search":
        rep = results[0]
        lines.append(f"mode={rep['mode']} checked={rep['instances_checked']} space={rep['space']}")
        if rep["best"]:
            b = rep["best"]
            lines.append(f"best: A={{{','.join(map(str, b['A']))}}} "
                         f"|(k+1)^A|/|k^A| = {b['size_k1']}/{b['size_k']} "
                         f"bound {b['n'] - b['k']}/{b['k'] + 1}")
        lines.append(f"counterexamples: {len(rep['counterexamples'])}")
    else:
        lines.append(f"{'set':<28} {'n':>3} {'k':>3} {'ratio':>10} {'bound':>8} holds")
        for r in results:
            lines.append(f"{','.join(map(str, r['A'])):<28} {r['n']:>3} {r['k']:>3} "
                         f"{r['ratio']:>10} {r['bound']:>8} {r['holds']}")
    return "\n".join(lines) + "\n"


def emit(args, config, results, verdicts, started):
    if args.format == "csv":
        return verdicts_csv(verdicts)
    if args.format == "text":
        return render_text(args.command, results, verdicts)
    doc = {"tool": "ksums", "version": __version__, "config": config, "results": results}
    if not args.reproducible:
        doc["wall_time"] = time.perf_counter() - started
    return json.dumps(doc, indent=2) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="ksums", description="Restricted sumsets and the (k+1)-sum versus k-sum bound.")
    p.add_argument("--version", action="version", version=f"ksums {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--output", "-o", help="write here instead of stdout")
        sp.add_argument("--reproducible", action="store_true",
                        help="omit wall times so identical runs are byte-identical")

    def sources(sp):
        sp.add_argument("--set", action="append", help="comma-separated integers")
        sp.add_argument("--gen", action="append", help="gp:n=5,r=2,a0=1 | ap:n=5,d=1,a0=1 | random:n=6,lo=-50,hi=50,seed=7")
        sp.add_argument("--file", action="append", help="one set per line, '#' comments")
        sp.add_argument("--k", help="K or A..B (inclusive)")
        sp.add_argument("--enum-threshold", type=int, default=ENUMERATION_THRESHOLD)

    c = sub.add_parser("compute", help="k-sum sizes and multiplicity tables")
    sources(c)
    common(c)
    c.add_argument("--cap", type=int, default=2)
    c.add_argument("--check-oracle", action="store_true", help="cross-check against brute force")
    c.add_argument("--oracle-threshold", type=int, default=ORACLE_THRESHOLD)

    v = sub.add_parser("verify", help="counting-chain reports over a k-range")
    sources(v)
    common(v)
    v.add_argument("--strategy", choices=("exclusion", "representations"), default="exclusion")

    s = sub.add_parser("search", help="exhaustive or stochastic search")
    common(s)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--stochastic", action="store_true")
    s.add_argument("--universe", type=int, help="search n-subsets of {1..M}")
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--range", help="LO..HI for stochastic search (write --range=-5..5 for negative LO)")
    s.add_argument("--seed", type=int)
    s.add_argument("--budget", type=int,
                   help=f"sets to evaluate: a hard cap for --exhaustive (default {SEARCH_BUDGET}), "
                        "the evaluation count for --stochastic (default 10000)")
    s.add_argument("--patience", type=int, default=200)
    s.add_argument("--canonicalize", action="store_true")
    s.add_argument("--workers", type=int, default=1)

    r = sub.add_parser("report", help="summarise prior JSON/CSV outputs")
    r.add_argument("inputs", nargs="+")
    common(r)
    return p


def _config(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("output",)}
    if "k" in cfg and isinstance(cfg["k"], str):
        cfg["k"] = parse_krange(cfg["k"])
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    handlers = {"compute": cmd_compute, "verify": cmd_verify, "search": cmd_search, "report": cmd_report}
    try:
        config = _config(args)
        results, verdicts, status, notes = handlers[args.command](args, config)
        if isinstance(config.get("k"), tuple):
            config["k"] = list(config["k"])
        text = emit(args, config, results, verdicts, started)
    except BudgetExceededError as exc:
        print(f"ksums: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"ksums: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except KsumsError as exc:
        print(f"ksums: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    for note in notes:
        print(note, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
