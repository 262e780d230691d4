"""Compare the numba and numpy kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Timings are the best of
several repeats after one warm-up call (which also triggers compilation).
"""

import argparse
import time

import numpy as np

from quatspec import _kernels
from quatspec.operators import S, S_ADJ, Diagonal
from quatspec.qmatrix import chi


def best_of(fn, repeats):
    fn()
    times = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def row(label, t_numba, t_numpy):
    print(f"{label:<34} {t_numba * 1e3:>10.3f} {t_numpy * 1e3:>10.3f} {t_numpy / t_numba:>8.2f}x")


def bench_qmatmul(rng, repeats):
    print("\nqmatmul (ms)                          numba      numpy  speedup")
    for n in (8, 32, 64, 128, 256):
        a, b = rng.standard_normal((n, n, 4)), rng.standard_normal((n, n, 4))
        row(f"dense {n}x{n}", best_of(lambda: _kernels.qmatmul_numba(a, b), repeats),
            best_of(lambda: _kernels.qmatmul_numpy(a, b), repeats))
    d = Diagonal(((1, 2, 0, 0), (0, 0, 1, 1)), (0.5, 0.0, 0.5, 0.0))
    for n in (64, 128, 256, 512):
        # operator sections are banded, so most entries are zero
        a, b = (d * S).block(n + 1, n + 1), (S_ADJ * d).block(n + 1, n)
        row(f"banded section {n + 1}x{n}", best_of(lambda: _kernels.qmatmul_numba(a, b), repeats),
            best_of(lambda: _kernels.qmatmul_numpy(a, b), repeats))


def bench_mu_grid(rng, repeats):
    print("\nmu_grid 21x11 (ms)                    numba      numpy  speedup")
    rr, dd = np.meshgrid(np.linspace(-2, 2, 21), np.linspace(0, 2, 11), indexing="ij")
    res, rads = rr.ravel().copy(), dd.ravel().copy()
    for n in (2, 4, 8, 16, 32):
        c = chi(rng.standard_normal((n, n, 4)))
        row(f"matrix n={n}", best_of(lambda: _kernels.mu_grid_numba(c, res, rads), repeats),
            best_of(lambda: _kernels.mu_grid_numpy(c, res, rads), repeats))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.Generator(np.random.PCG64(args.seed))
    bench_qmatmul(rng, args.repeats)
    bench_mu_grid(rng, args.repeats)


if __name__ == "__main__":
    main()
