"""Compiled vs pure-Python kernels on the two hot loops.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

from theta_miner import _pykernels
from theta_miner.generators import random_regular
from theta_miner.oracles import _masks

try:
    from theta_miner import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_bfs(repeat):
    g = random_regular(20000, 4, seed=1)
    lists, arrays = g.csr_lists(), g.csr_arrays()
    sources = range(0, g.n, g.n // 20)
    py = best_of(lambda: [_pykernels.bfs_distances(*lists, s) for s in sources], repeat)
    c = best_of(lambda: [_ckernels.bfs_distances(*arrays, s) for s in sources], repeat) if _ckernels else None
    return "bfs_distances (n=20000, 20 sources)", py, c


def bench_theta(repeat):
    g = random_regular(16, 3, seed=1)
    nbr, mult = _masks(g)
    py = best_of(lambda: _pykernels.theta_search(g.n, nbr, mult, 5, -1), repeat)
    c = best_of(lambda: _ckernels.theta_search(g.n, nbr, mult, 5, -1), repeat) if _ckernels else None
    return "theta_search (cubic, n=16, r=5)", py, c


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    print(f"{'kernel':40s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for bench in (bench_bfs, bench_theta):
        name, py, c = bench(args.repeat)
        if c is None:
            print(f"{name:40s} {py:10.4f} {'n/a':>10s} {'':>8s}")
        else:
            print(f"{name:40s} {py:10.4f} {c:10.4f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
