"""Time the numba and pure-numpy kernels side by side.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each row runs one kernel on both backends, checks that the outputs are
identical, and reports the best wall time of `--repeat` runs (after one
warm-up call, so JIT compilation is excluded).
"""
import argparse
import time

import numpy as np

from slorbits import _kernels as K
from slorbits.sl_group import GroupSpec, generator_array


def count_sl(m, n):
    return sum(c.size for c in K.sl_codes(n, m))


def closure(m, n):
    return K.closure_codes(generator_array(GroupSpec.of(m, n)), n, m)


def partition(m, n):
    table = K.action_table(generator_array(GroupSpec.of(m, n)), n, m)
    return K.orbit_labels(table, n**m)


def reach(m, n):
    table = K.action_table(generator_array(GroupSpec.of(m, n)), n, m)
    return K.reach(table, 1, n**m)[0]


CASES = [
    ("det filter", count_sl, (3, 5)),
    ("det filter", count_sl, (2, 50)),
    ("det filter", count_sl, (3, 6)),
    ("closure", closure, (3, 5)),
    ("closure", closure, (2, 40)),
    ("partition", partition, (2, 400)),
    ("partition", partition, (3, 60)),
    ("reach", reach, (2, 400)),
]
QUICK = [c for c in CASES if c[2] in {(3, 5), (2, 400)}]


def best_time(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="two cases only")
    args = ap.parse_args()
    if K.numba is None:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<11} {'(m, n)':<9} {'numpy s':>9} {'numba s':>9} {'speedup':>8}  agree")
    for name, fn, mn in (QUICK if args.quick else CASES):
        results = {}
        for backend in ("numpy", "numba"):
            K.set_backend(backend)
            results[backend] = best_time(fn, mn, args.repeat)
        (t_np, o_np), (t_nb, o_nb) = results["numpy"], results["numba"]
        print(f"{name:<11} {str(mn):<9} {t_np:9.4f} {t_nb:9.4f} {t_np / t_nb:7.1f}x  {same(o_np, o_nb)}", flush=True)


if __name__ == "__main__":
    main()
