"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --repeat 5 --quick
"""

import argparse
import time

import numpy as np

from cayleyiso import kernels
from cayleyiso.core import GeneratorSet, ZSet, boundary_size
from cayleyiso.frontier import build_frontier

CASES = [
    # (label, generators, kind, n, W)
    ("edge +-{1,10} n=33", GeneratorSet.symmetric(1, 10), "edge", 33, 48),
    ("vertex +-{1,9,10,11} n=16", GeneratorSet.symmetric(1, 9, 10, 11), "vertex", 16, 48),
    ("vertex +-{1,3,4,5} n=20", GeneratorSet.symmetric(1, 3, 4, 5), "vertex", 20, 40),
]
QUICK = [
    ("edge +-{1,4} n=12", GeneratorSet.symmetric(1, 4), "edge", 12, 24),
    ("vertex +-{1,3,4,5} n=8", GeneratorSet.symmetric(1, 3, 4, 5), "vertex", 8, 20),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_case(K, G, kind, n, W, repeat):
    fr = build_frontier(tuple(G), kind)
    allowed = np.ones(W, dtype=np.uint8)
    start_ok = np.zeros(W, dtype=np.uint8)
    start_ok[0] = 1
    cap = boundary_size(G, ZSet.interval(0, n - 1), kind) + 1
    t_table, (Gt, rlo, rhi) = best_of(
        lambda: K.build_table(fr.nxt, fr.cost, fr.flush, allowed, n, W - n, cap), repeat)
    opt = int(Gt[0, 0, n - rlo[0]])
    t_dfs, sets = best_of(
        lambda: K.dfs_table(Gt, rlo, rhi, fr.nxt, fr.cost, fr.flush, allowed, start_ok,
                            0, 0, n, 0, False, opt), repeat)
    slack = 4 * G.b_max
    s1 = int(fr.nxt[1, 0])
    t_sweep, _ = best_of(lambda: K.sweep_holes(fr.nxt, fr.cost, fr.flush, s1, 200 + slack, slack), repeat)
    return {"states": fr.n_states, "opt": opt, "found": len(sets),
            "build_table": t_table, "dfs_table": t_dfs, "sweep_holes": t_sweep}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small cases only")
    args = ap.parse_args(argv)

    backends = ["python"]
    try:
        kernels.get_backend("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled kernels not built; timing the fallback only")

    cases = QUICK if args.quick else CASES
    print(f"{'case':28s} {'kernel':12s} " + " ".join(f"{b:>10s}" for b in backends) + "    speedup")
    for label, G, kind, n, W in cases:
        res = {b: bench_case(kernels.get_backend(b), G, kind, n, W, args.repeat) for b in backends}
        ref = res[backends[0]]
        for b in backends[1:]:
            assert (res[b]["opt"], res[b]["found"]) == (ref["opt"], ref["found"]), label
        for k in ("build_table", "dfs_table", "sweep_holes"):
            cells = " ".join(f"{res[b][k] * 1e3:9.2f}ms" for b in backends)
            speed = f"{res['python'][k] / res['cython'][k]:9.1f}x" if len(backends) == 2 else ""
            print(f"{label:28s} {k:12s} {cells} {speed}")
        print(f"{'':28s} states={ref['states']} opt={ref['opt']} optimizers={ref['found']}")


if __name__ == "__main__":
    main()
