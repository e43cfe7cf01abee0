"""Time the census kernels on both backends and check they agree.

Run as a script:

    python3 benchmarks/bench_backends.py [--max-dim 6] [--repeat 3]

The numba backend compiles on first use; a warmup call keeps JIT time
out of the measurements.  Outputs one row per (dimension, support)
cell plus per-dimension totals.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ghw import _kernels
from ghw.enumerate import hyperplane_classes


def _time_call(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-dim", type=int, default=6,
                    help="largest dimension to time (capped by the kernels)")
    ap.add_argument("--repeat", type=int, default=3,
                    help="take the best of this many runs")
    args = ap.parse_args()
    max_dim = min(args.max_dim, _kernels.MAX_KERNEL_DIM)

    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    # Warm up the JIT cache on the smallest cell.
    _kernels.census_leaves(2, 1, backend="numba")

    header = f"{'dim':>3} {'support':>8} {'classes':>8} {'numba':>10} {'numpy':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in range(2, max_dim + 1):
        total_nb = total_np = 0.0
        for support in hyperplane_classes(n):
            k = len(support)
            a = _kernels.census_leaves(n, k, backend="numba")
            b = _kernels.census_leaves(n, k, backend="numpy")
            assert np.array_equal(a, b), f"backend mismatch at n={n}, k={k}"
            t_nb = _time_call(
                lambda: _kernels.census_leaves(n, k, backend="numba"),
                args.repeat)
            t_np = _time_call(
                lambda: _kernels.census_leaves(n, k, backend="numpy"),
                args.repeat)
            total_nb += t_nb
            total_np += t_np
            print(f"{n:>3} {{1..{k}}}".ljust(12)
                  + f" {len(a):>8} {t_nb:>9.4f}s {t_np:>9.4f}s"
                  + f" {t_np / t_nb:>7.1f}x")
        print(f"{n:>3} {'total':>8} {'':>8} {total_nb:>9.4f}s "
              f"{total_np:>9.4f}s {total_np / total_nb:>7.1f}x")
    print("backends agree on every cell")


if __name__ == "__main__":
    main()
