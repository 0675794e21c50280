#!/usr/bin/env python3
"""Benchmark the modular series kernels: compiled extension vs pure Python.

Times the three hot operations (truncated product, composition, n-fold
iteration) at a few truncation orders, plus the exhaustive mod-2 square
classification, and prints a speedup table.  Run from anywhere:

    python3 benchmarks/bench_backends.py [--orders 16,32,64] [--repeat 5]
"""

import argparse
import random
import time

from iterroots import _kernels_py

try:
    from iterroots import _kernels_c
except ImportError:
    _kernels_c = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def series(rng, size, mod, zero_first=True):
    out = [rng.randrange(mod) for _ in range(size)]
    if zero_first:
        out[0] = 0
        if size > 1:
            out[1] = 1
    return out


def bench_kernels(orders, repeat, mod):
    rng = random.Random(2024)
    rows = []
    for order in orders:
        size = order + 1
        a = series(rng, size, mod, zero_first=False)
        g = series(rng, size, mod)
        h = series(rng, size, mod)

        cases = [
            ("mul", lambda impl: impl.mul_mod(a, h, mod)),
            ("compose", lambda impl: impl.compose_mod(a, g, mod)),
            ("iterate n=8", lambda impl: impl.iterate_mod(g, 8, mod)),
        ]
        for name, call in cases:
            pure = best_of(repeat, call, _kernels_py)
            if _kernels_c is None:
                rows.append((f"{name} (m={order}, mod {mod})", pure, None))
            else:
                fast = best_of(repeat, call, _kernels_c)
                rows.append((f"{name} (m={order}, mod {mod})", pure, fast))
    return rows


def bench_enumeration(order, repeat):
    def run(impl):
        free = order - 1
        table = {}
        for bits in range(2**free):
            w = [0, 1] + [(bits >> i) & 1 for i in range(free)]
            sq = impl.compose_mod(w, w, 2)
            table.setdefault(tuple(sq[2:]), 0)
        return table

    pure = best_of(repeat, run, _kernels_py)
    fast = None if _kernels_c is None else best_of(repeat, run, _kernels_c)
    return [(f"mod-2 square classes (order {order}, 2^{order - 1} candidates)",
             pure, fast)]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--orders", default="16,32,64")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--mod", type=int, default=12289)
    parser.add_argument("--enum-order", type=int, default=14)
    args = parser.parse_args()

    orders = [int(s) for s in args.orders.split(",")]
    rows = bench_kernels(orders, args.repeat, args.mod)
    rows += bench_enumeration(args.enum_order, max(1, args.repeat // 2))

    if _kernels_c is None:
        print("compiled kernels not built; timing the pure backend only\n")
    width = max(len(r[0]) for r in rows)
    print(f"{'operation':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, pure, fast in rows:
        if fast is None:
            print(f"{name:<{width}}  {pure * 1e3:>9.3f}ms  {'-':>10}  {'-':>8}")
        else:
            print(f"{name:<{width}}  {pure * 1e3:>9.3f}ms  {fast * 1e3:>9.3f}ms"
                  f"  {pure / fast:>7.1f}x")


if __name__ == "__main__":
    main()
