#!/usr/bin/env python3
"""Benchmark the compiled hypervolume kernels against the numpy fallback.

Times the three kernel entry points plus a discount-bisection workload (the
hot per-insertion path) on representative front sizes, and prints one table
per operation with the speedup of the compiled backend.

Usage: python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from moqd._kernels import _hv_py

try:
    from moqd._kernels import _hv_cy
except ImportError:
    _hv_cy = None

FRONT_SIZES = (5, 10, 20, 100, 1000)


def random_front(rng, k, n):
    # Points on the positive-octant sphere of radius 100: equal norms make
    # the set mutually non-dominated at any size.
    u = np.abs(rng.standard_normal((n, k))) + 1e-6
    return 100.0 * u / np.linalg.norm(u, axis=1, keepdims=True)


def best_of(fn, repeats, inner):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def bisect_workload(impl, f, front, ref, alpha=0.1, eps=1e-6):
    full = impl.hvi(f, front, ref)
    if full <= 0:
        return 0.0
    target = alpha * full
    lo, hi = 0.0, 1.0
    for _ in range(64):
        d = 0.5 * (lo + hi)
        mid = impl.hvi(d * f, front, ref)
        if mid > target:
            hi = d
        else:
            lo = d
            if target - mid <= eps:
                return d
    return lo


def bench(repeats):
    rng = np.random.default_rng(0)
    backends = [("python", _hv_py)] + ([("compiled", _hv_cy)] if _hv_cy else [])
    if _hv_cy is None:
        print("compiled backend not built; timing the fallback only\n")

    for op in ("hypervolume", "hvi", "bisection"):
        print(f"== {op} ==")
        header = f"{'k':>2} {'n':>5}" + "".join(f" {name:>12}" for name, _ in backends)
        if _hv_cy:
            header += f" {'speedup':>8}"
        print(header)
        for k in (2, 3):
            for n in FRONT_SIZES:
                front = random_front(rng, k, n)
                ref = np.zeros(k)
                # probe point just outside the front sphere: never dominated,
                # so hvi/bisection always take the full computation path
                u = np.abs(rng.standard_normal(k)) + 1e-6
                p = 105.0 * u / np.linalg.norm(u)
                inner = max(1, 2000 // max(1, n))
                times = []
                for _, impl in backends:
                    if op == "hypervolume":
                        fn = lambda impl=impl: impl.hypervolume(front, ref)
                    elif op == "hvi":
                        fn = lambda impl=impl: impl.hvi(p, front, ref)
                    else:
                        fn = lambda impl=impl: bisect_workload(impl, p, front, ref)
                    times.append(best_of(fn, repeats, inner))
                row = f"{k:>2} {n:>5}" + "".join(f" {t * 1e6:>10.2f}us" for t in times)
                if len(times) == 2:
                    row += f" {times[0] / times[1]:>7.1f}x"
                print(row)
        print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    bench(args.repeats)


if __name__ == "__main__":
    main()
