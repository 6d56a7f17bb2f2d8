"""Benchmark the numba kernels against the pure numpy fallback.

Usage: python benchmarks/bench_backends.py [--n 16] [--d 8] [--repeat 5]
"""

import argparse
import time

import numpy as np

from petzaug.backends import load_backend
from petzaug.channel import random_channel


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--d", type=int, default=8)
    ap.add_argument("--alpha", type=float, default=0.6)
    ap.add_argument("--iters", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    ch = random_channel(args.n, args.d, seed=0)
    wa = ch.powered(args.alpha)
    p = np.full(args.n, 1.0 / args.n)

    rows = []
    for name in ("numpy", "numba"):
        be = load_backend(name)
        # trigger jit compilation outside the timed region
        be.fixed_point_loop(wa, p, args.alpha, 0.0, 2)
        be.pair_traces(wa, np.ascontiguousarray(ch.states[0]))
        t_fp = time_call(
            be.fixed_point_loop, wa, p, args.alpha, 0.0, args.iters, repeat=args.repeat
        )
        t_tr = time_call(
            be.pair_traces, wa, np.ascontiguousarray(ch.states[0]), repeat=args.repeat
        )
        rows.append((name, t_fp, t_tr))
        print(
            f"{name:>6}: fixed_point_loop({args.iters} iters) {t_fp * 1e3:8.2f} ms   "
            f"pair_traces {t_tr * 1e6:8.2f} us"
        )
    if len(rows) == 2:
        print(f"speedup (fixed point): {rows[0][1] / rows[1][1]:.1f}x")


if __name__ == "__main__":
    main()
