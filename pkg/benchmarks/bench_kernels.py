"""Benchmark the compiled transform kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--max-nu 18] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from distmind._kernels import HAVE_ACCEL, fwht_inplace, fwht_inplace_numpy


def _time(fn, base: np.ndarray, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        data = base.copy()
        start = time.perf_counter()
        fn(data)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-nu", type=int, default=18)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"compiled kernel available: {HAVE_ACCEL}")
    header = f"{'nu':>4} {'size':>9} {'numpy (us)':>12}"
    if HAVE_ACCEL:
        header += f" {'compiled (us)':>14} {'speedup':>8}"
    print(header)
    for nu in range(4, args.max_nu + 1):
        base = rng.standard_normal(1 << nu)
        t_numpy = _time(fwht_inplace_numpy, base, args.repeats)
        line = f"{nu:>4} {1 << nu:>9} {t_numpy * 1e6:>12.1f}"
        if HAVE_ACCEL:
            t_accel = _time(fwht_inplace, base, args.repeats)
            line += f" {t_accel * 1e6:>14.1f} {t_numpy / t_accel:>8.2f}"
            a, b = base.copy(), base.copy()
            fwht_inplace(a)
            fwht_inplace_numpy(b)
            assert np.array_equal(a, b), "kernels disagree"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
