#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot loops on representative workloads: the hypergeometric
series at increasing w = tanh^2(ell r/2) (term counts from tens to ~1e5)
and the radial RK4 sweep.  Run from the repository root:

    python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import math
import time

from hhm._kernels import _pure

try:
    from hhm._kernels import _fast
except ImportError:
    _fast = None


def _time(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_hyp2f1(backend, radii, repeats):
    # H3 spherical-function parameters: a = (1+i)/2, b = conj(a), c = 3/2
    def run():
        for r in radii:
            z = -math.sinh(r) ** 2
            backend.hyp2f1_neg_z(0.5, 0.5, 0.5, -0.5, 1.5, z, 1e-12, 200_000)

    return _time(run, repeats)


def bench_rk4(backend, h, repeats):
    npts = int(round((5.0 - 1e-4) / h)) + 1

    def run():
        backend.radial_rk4(7, 1.0, 4.0, 4.25, 1e-4, 1.0, -5e-4, h, npts, 1.0)

    return _time(run, repeats)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="small workloads, 1 repeat")
    args = ap.parse_args()

    repeats = 1 if args.quick else 3
    radii = (0.5, 1.0, 2.0, 3.0) if args.quick else (0.5, 1.0, 2.0, 3.0, 4.0, 5.0)
    h = 1e-3 if args.quick else 2e-4

    rows = []
    t_py = bench_hyp2f1(_pure, radii, repeats)
    t_cy = bench_hyp2f1(_fast, radii, repeats) if _fast else None
    rows.append(("hyp2f1 series (6 radii up to r=5)", t_py, t_cy))

    t_py = bench_rk4(_pure, h, repeats)
    t_cy = bench_rk4(_fast, h, repeats) if _fast else None
    rows.append((f"radial RK4 to r=5, h={h:g}", t_py, t_cy))

    print(f"{'kernel':<38} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, py, cy in rows:
        if cy is None:
            print(f"{name:<38} {py * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>8}")
        else:
            print(f"{name:<38} {py * 1e3:>8.1f}ms {cy * 1e3:>8.1f}ms {py / cy:>7.1f}x")
    if _fast is None:
        print("compiled backend not available; build with `pip install -e .`")


if __name__ == "__main__":
    main()
