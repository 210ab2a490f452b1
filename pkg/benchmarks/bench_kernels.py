"""Compare the compiled and pure-Python reachability kernels.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 100000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from mbgraph import build_graph, kernels, markov_blanket_in, reachable


def chain(n):
    labels = [f"x{i}" for i in range(n)]
    return build_graph("directed", labels, list(zip(labels, labels[1:])))


def sparse_dag(n, seed=0):
    # two random earlier parents per vertex
    rng = np.random.default_rng(seed)
    labels = [f"x{i}" for i in range(n)]
    pairs = {(labels[int(p)], labels[i]) for i in range(1, n) for p in rng.integers(0, i, size=2)}
    return build_graph("directed", labels, sorted(pairs))


def best(fn, repeats):
    out = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out


def cases(n):
    g = chain(n)
    tail = {f"x{i}" for i in range(n - 50, n)}
    yield f"chain reach n={n}", lambda: reachable(g, {"x0"}, set())
    yield f"chain mb_in n={n} |C|=50", lambda: markov_blanket_in(g, {"x0"}, tail)
    r = sparse_dag(n)
    cand = set(r.labels[:50])
    yield f"sparse dag n={n} mb_in |C|=50", lambda: markov_blanket_in(r, {r.labels[-1]}, cand)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    print(f"backends: {', '.join(kernels.BACKENDS)}")
    print(f"{'case':40s} " + " ".join(f"{b:>12s}" for b in kernels.BACKENDS) + "   speedup")
    for n in args.sizes:
        for name, fn in cases(n):
            row = []
            for b in kernels.BACKENDS:
                with kernels.use_backend(b):
                    row.append(best(fn, args.repeats))
            speed = f"{row[-1] / row[0]:8.1f}x" if len(row) == 2 else ""
            print(f"{name:40s} " + " ".join(f"{t * 1e3:10.2f}ms" for t in row) + f"  {speed}")


if __name__ == "__main__":
    main()
