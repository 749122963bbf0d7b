"""Compare the numba loop kernels with the numpy slice kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Both paths are run on the same inputs and their outputs compared before any
timing is reported.
"""

import argparse
import time
from itertools import combinations

import numpy as np

from ksums import _kernels, build_extension_graphs, generate


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads():
    rng = np.random.default_rng(10)
    wide = np.sort(rng.choice(np.arange(-10**5, 10**5 + 1), size=100, replace=False))
    small = [np.array(c, dtype=np.int64) for c in combinations(range(1, 13), 6)]
    B = generate("random", n=14, lo=-1000, hi=1000, seed=14)

    def sizes_many(jit):
        return [_kernels.layer_sizes(v, 4, use_jit=jit) for v in small]

    return {
        "presence n=100 k=10": lambda jit: _kernels.compute_layers(wide, 10, None, use_jit=jit)[10][0],
        "multiplicity cap=2 n=100 k=10": lambda jit: _kernels.compute_layers(wide, 10, 2, use_jit=jit)[10][1],
        "924 small sets n=6 (sizes)": sizes_many,
        "graph build n=14 k=4": lambda jit: build_extension_graphs(B, 4, use_jit=jit).edge_t,
    }


def same(a, b):
    if isinstance(a, list):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'workload':<34} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, fn in workloads().items():
        fn(True)  # compile
        t_jit, out_jit = best_of(lambda: fn(True), args.repeat)
        t_np, out_np = best_of(lambda: fn(False), args.repeat)
        if not same(out_jit, out_np):
            raise SystemExit(f"{name}: numba and numpy results differ")
        print(f"{name:<34} {t_jit:>9.4f}s {t_np:>9.4f}s {t_np / t_jit:>7.1f}x")


if __name__ == "__main__":
    main()
