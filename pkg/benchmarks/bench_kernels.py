"""Time the subset-table kernels, compiled against plain numpy.

    python3 benchmarks/bench_kernels.py [--min-edges 8] [--max-edges 18] [--repeat 3]

The compiled column reads "n/a" when numba is missing or disabled through
METAPROJ_DISABLE_NUMBA.  The first compiled call is a warm-up and is not timed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from metaproj import _kernels, gen_random


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-edges", type=int, default=8)
    ap.add_argument("--max-edges", type=int, default=18)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    compiled = _kernels.numba_enabled()
    print(f"{'edges':>5} {'subsets':>8} {'numpy_s':>10} {'numba_s':>10} {'speedup':>8}")
    for m in range(args.min_edges, args.max_edges + 1):
        mg = gen_random(12, m, 4, args.seed + m)
        inv = [e.invertex for e in mg.edges]
        out = [e.outvertex for e in mg.edges]
        t_np = best_of(lambda: _kernels.subset_table(inv, out, use_numba=False), args.repeat)
        if compiled:
            ref = _kernels.subset_table(inv, out, use_numba=False)
            got = _kernels.subset_table(inv, out, use_numba=True)
            assert all(np.array_equal(a, b) for a, b in zip(ref, got)), "kernels disagree"
            t_nb = best_of(lambda: _kernels.subset_table(inv, out, use_numba=True), args.repeat)
            cells = f"{t_nb:>10.4f} {t_np / t_nb:>7.1f}x"
        else:
            cells = f"{'n/a':>10} {'-':>8}"
        print(f"{m:>5} {1 << m:>8} {t_np:>10.4f} {cells}", flush=True)


if __name__ == "__main__":
    main()
