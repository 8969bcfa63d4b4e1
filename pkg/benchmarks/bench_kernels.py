"""Compare the numba and numpy kernel paths.

    python3 benchmarks/bench_kernels.py [--sizes 4096 65536 1048576] [--repeat 5]

Prints the best-of-repeat time per path and the largest relative difference.
"""
import argparse
import time

import numpy as np

from sigmadecay import kernels


def best_time(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[4096, 65536, 1048576])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sigma", type=float, default=1.0)
    ap.add_argument("--delta", type=float, default=0.25)
    ap.add_argument("--t", type=float, default=50.0)
    args = ap.parse_args()

    # compile outside the timed region
    kernels.multiplier_arrays(args.sigma, args.delta, np.linspace(0, 1, 8), 1.0, use_numba=True)

    print(f"{'points':>9} {'i':>2} {'numba [ms]':>11} {'numpy [ms]':>11} {'speedup':>8} {'max rel diff':>13}")
    for size in args.sizes:
        xi = np.geomspace(1e-4, 40.0, size)
        for i in (0, 1):
            def run(flag):
                return kernels.multiplier_arrays(args.sigma, args.delta, xi, args.t, i, use_numba=flag)

            t_nb = best_time(lambda: run(True), args.repeat)
            t_np = best_time(lambda: run(False), args.repeat)
            a, b = run(True), run(False)
            scale = np.maximum(np.abs(a), np.abs(b)).max(axis=1, keepdims=True)
            diff = float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / scale))
            print(f"{size:>9} {i:>2} {1e3 * t_nb:>11.2f} {1e3 * t_np:>11.2f} "
                  f"{t_np / t_nb:>8.2f} {diff:>13.2e}")


if __name__ == "__main__":
    main()
