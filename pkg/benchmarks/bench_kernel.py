"""Compare the compiled and pure-Python kernels on census and sweep workloads.

    python3 benchmarks/bench_kernel.py [--rows 2000] [--cap 10000]
"""

import argparse
import time

import numpy as np

from framegas import _kernel_py, kernel
from framegas.analysis import CensusSpec, random_background
from framegas.bundle import bundle_of
from framegas.generators import cross_polytope


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=2000)
    ap.add_argument("--cap", type=int, default=10_000)
    ap.add_argument("--horizon", type=int, default=36)
    args = ap.parse_args()

    try:
        from framegas import _kernel as cy
    except ImportError:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")

    c = cross_polytope(3)
    b = bundle_of(c)
    t = kernel.Tables.of(b)
    spec = CensusSpec(c, sample=args.rows, seed=0, cap=args.cap)
    rows = kernel.pad([kernel.encode(b, spec.member(k)) for k in spec.indices().tolist()])
    bg = kernel.encode(b, random_background(b, 0.2, 0, 0))

    print(f"{'workload':<34}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name, fn, a in [
        (f"census {args.rows} pinned pairs", kernel.batch_periods, (t, rows, args.cap)),
        (f"eddie sweep |P|={len(b)} h={args.horizon}", kernel.eddie_sweep, (t, bg, args.horizon)),
    ]:
        fast, tc = timed(fn, *a, cy)
        slow, tp = timed(fn, *a, _kernel_py)
        assert np.array_equal(fast, slow), f"{name}: backends disagree"
        print(f"{name:<34}{tc:>10.3f}{tp:>10.3f}{tp / tc:>8.0f}x")


if __name__ == "__main__":
    main()
