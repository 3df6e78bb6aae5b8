#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallbacks.

Both implementations live in hideseek._kernels regardless of which one
the HIDESEEK_BACKEND flag selects, so a single process can benchmark the
two side by side.  Covers the hot paths: batch unit inversion, solution
enumeration, and the fused factor scan.

Usage: python benchmarks/compare_backends.py [--repeat K]
"""

import argparse
import random
import statistics
import time
from math import isqrt

import numpy as np

from hideseek import _kernels as K
from hideseek.arith import ceil_cbrt
from hideseek.factor import is_probable_prime


def timeit(fn, repeat):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def rand_prime(rng, lo, hi):
    while True:
        c = rng.randrange(lo, hi) | 1
        if is_probable_prime(c):
            return c


def bench_inverse_table(repeat):
    rows = []
    for m in (10_000, 100_000, 1_000_000):
        primes = K._distinct_primes(m)
        t_nb = timeit(lambda: K._unit_inverse_table_loop(m, primes), repeat)
        t_np = timeit(lambda: K._unit_inverse_table_np(m, primes), repeat)
        rows.append((f"unit_inverse_table m={m:>9,}", t_nb, t_np))
    return rows


def bench_factor_scan(repeat):
    rows = []
    rng = random.Random(2)
    for target in (10 ** 9, 10 ** 10, 10 ** 11, 10 ** 12):
        p = rand_prime(rng, isqrt(target // 2), isqrt(target))
        q = rand_prime(rng, p, 2 * p)
        n = p * q
        a = ceil_cbrt(2 * n)
        b = isqrt(a - 1) + 1
        pa = K._distinct_primes(a)
        pm = K._distinct_primes(a - 1)
        args_nb = (np.int64(n), np.int64(a), np.int64(a - 1), pa, pm,
                   np.int64(b), np.int64(b), np.int64(1), np.int64(1))
        t_nb = timeit(lambda: K._hyperbola_scan_loop(*args_nb), repeat)
        t_np = timeit(
            lambda: K._hyperbola_scan_np(n, a, a - 1, pa, pm, b, b, 1, 1),
            repeat)
        rows.append((f"hyperbola_scan N~1e{len(str(target)) - 1}", t_nb, t_np))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args()

    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    print("warming up (JIT compile)...")
    K.warmup()

    rows = bench_inverse_table(args.repeat) + bench_factor_scan(args.repeat)
    print(f"\n{'kernel':<34} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    print("-" * 69)
    for name, t_nb, t_np in rows:
        print(f"{name:<34} {t_nb * 1e6:>10.0f}us {t_np * 1e6:>10.0f}us "
              f"{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
