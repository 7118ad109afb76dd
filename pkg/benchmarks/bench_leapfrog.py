"""Wall-time comparison of the numba and numpy leapfrog backends.

    python3 benchmarks/bench_leapfrog.py --sizes 128 256 512 --repeat 5
"""
import argparse
import time

import numpy as np

from quarticgreen import Lattice1p1, make_background
from quarticgreen._accel import HAVE_NUMBA
from quarticgreen.lattice import solve_linearized, solve_nonlinear


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[128, 256, 512])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    bg = make_background(1.0, 2.0)
    backends = [False, True] if HAVE_NUMBA else [False]
    print(f"{'n':>6} {'solver':>10} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>8} {'max diff':>10}")
    for n in args.sizes:
        lat = Lattice1p1.default(bg, nx=n, nt=n)
        site = (n // 8, n // 2)
        solvers = {
            "nonlinear": lambda use: solve_nonlinear(bg, None, lat, use_numba=use).field,
            "linear": lambda use: solve_linearized(bg, lat.delta(site), lat, use_numba=use).field,
        }
        for name, run in solvers.items():
            for use in backends:  # warm-up, including JIT compilation
                run(use)
            t = {use: best_of(lambda: run(use), args.repeat) for use in backends}
            diff = float(np.max(np.abs(run(False) - run(True)))) if HAVE_NUMBA else float("nan")
            tn = t.get(True, float("nan"))
            print(f"{n:>6} {name:>10} {1e3 * t[False]:>12.2f} {1e3 * tn:>12.2f} {t[False] / tn:>8.1f} {diff:>10.1e}")


if __name__ == "__main__":
    main()
