"""Compare the numba and numpy product kernels.

    python benchmarks/bench_kernels.py [--p 5 --r 2 --repeat 5]

Part 1 times one batched product over every element of K(p, r) with each
kernel.  Part 2 times the full witness verification in a subprocess per
backend (the backend is fixed at import time through CAPGROUPS_BACKEND).
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from capgroups import _accel
from capgroups.constructions import easterfield


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_bench(p, r, repeat):
    G = easterfield(p, r)
    args = G._kernel_args
    codes = np.arange(G.order, dtype=np.int64)
    other = np.random.default_rng(0).integers(G.order, size=G.order)
    ref = _accel.mul_pairs_numpy(codes, other, *args)
    if _accel.HAVE_NUMBA:
        assert np.array_equal(ref, _accel.mul_pairs_numba(codes, other, *args))
    print(f"K({p},{r}): {G.order} products per call, best of {repeat}")
    t_np = best_of(lambda: _accel.mul_pairs_numpy(codes, other, *args), repeat)
    print(f"  numpy  {t_np * 1e3:9.2f} ms")
    if _accel.HAVE_NUMBA:
        t_nb = best_of(lambda: _accel.mul_pairs_numba(codes, other, *args), repeat)
        print(f"  numba  {t_nb * 1e3:9.2f} ms   ({t_np / t_nb:.1f}x)")


def pipeline_bench(p, r):
    print(f"witness --p {p} --r {r}, wall time per backend (includes interpreter start)")
    for backend in ("numpy", "numba"):
        if backend == "numba" and not _accel.HAVE_NUMBA:
            continue
        env = dict(os.environ, CAPGROUPS_BACKEND=backend)
        cmd = [sys.executable, "-m", "capgroups", "witness", "--p", str(p), "--r", str(r), "--json"]
        t0 = time.perf_counter()
        proc = subprocess.run(cmd, env=env, capture_output=True)
        dt = time.perf_counter() - t0
        print(f"  {backend:6s} {dt:7.2f} s   exit={proc.returncode}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    kernel_bench(args.p, args.r, args.repeat)
    pipeline_bench(args.p, args.r)


if __name__ == "__main__":
    main()
