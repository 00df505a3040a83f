"""Compiled vs pure-Python enumeration kernels, and fast vs direct DFT.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row is the best of N wall-clock runs.  Results of the two backends are
compared before timing, so a mismatch aborts the benchmark.
"""
import argparse
import time

import numpy as np

from ffdist import kernels, spectral
from ffdist.ensembles import EnsembleSpec, generate, random_function
from ffdist.field import FieldParams
from ffdist.graph import distance_table

CASES = [
    ("chains", (5, 2), 25, (1, 1, 1, 1)),
    ("chains", (3, 4), 60, (1, 1, 1)),
    ("paths", (3, 4), 60, (1, 1, 1)),
    ("paths", (7, 3), 200, (1, 1)),
    ("stars", (3, 5), 200, (1, 1, 2)),
    ("stars", (7, 3), 200, (1, 2, 3)),
]
KERNEL = {"chains": "count_chains", "paths": "count_paths", "stars": "count_stars"}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def same(a, b):
    return np.array_equal(np.asarray(a), np.asarray(b))


def bench_kernels(repeat):
    if "compiled" not in kernels.BACKENDS:
        print("compiled extension not available; only the Python backend can run")
        return
    print(f"{'kernel':8} {'field':8} {'|E|':>5} {'type':10} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for what, qd, size, ts in CASES:
        E = generate(EnsembleSpec("random_size", seed=17, size=size), FieldParams(*qd))
        table = distance_table(E)
        arr = np.array(ts, dtype=np.int32)
        runs = {}
        for name in ("python", "compiled"):
            fn = getattr(kernels.BACKENDS[name], KERNEL[what])
            runs[name] = best_of(lambda: fn(table.nbr, table.off, arr), repeat)
        if not same(runs["python"][1], runs["compiled"][1]):
            raise SystemExit(f"backends disagree on {what} {qd} {ts}")
        tp, tc = runs["python"][0], runs["compiled"][0]
        field = f"F_{qd[0]}^{qd[1]}"
        print(f"{what:8} {field:8} {size:5d} {','.join(map(str, ts)):10} {tp:10.4f} {tc:11.5f} {tp / tc:7.0f}x")


def bench_dft(repeat):
    print(f"\n{'field':8} {'q^d':>6} {'direct s':>10} {'fast s':>10} {'speedup':>8} {'max dev':>9}")
    for q, d in [(3, 4), (5, 3), (7, 3), (11, 3), (3, 7), (13, 3)]:
        p = FieldParams(q, d)
        f = random_function(p, seed=q * d)
        td, direct = best_of(lambda: spectral.dft_direct(f, p), repeat)
        tf, fast = best_of(lambda: spectral.dft(f, p), repeat)
        dev = float(np.max(np.abs(direct - fast)))
        print(f"F_{q}^{d:<5} {p.size:6d} {td:10.4f} {tf:10.5f} {td / tf:7.0f}x {dev:9.1e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    bench_kernels(args.repeat)
    bench_dft(args.repeat)


if __name__ == "__main__":
    main()
