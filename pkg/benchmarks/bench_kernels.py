"""Compare the numba kernels with their pure Python / numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths must return identical results; the script aborts otherwise.
"""
import argparse
import time

import numpy as np

from surfnorm import _kernels
from surfnorm.surface import square_grid


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_circuits(repeat):
    rows = []
    for n, m in [(2, 2), (3, 3), (4, 3), (4, 4)]:
        S = square_grid(n, m)
        tail = np.asarray(S.tail, np.int64)
        head = np.asarray(S.head, np.int64)
        cap = 10**6
        _kernels.circuits_numba(S.n_vertices, tail, head, cap)  # compile / warm cache
        t_nb, r_nb = best_of(lambda: _kernels.circuits_numba(S.n_vertices, tail, head, cap), repeat)
        t_py, r_py = best_of(lambda: _kernels.circuits_python(S.n_vertices, tail, head, cap), repeat)
        assert r_nb == r_py, f"circuit kernels disagree on {S.name}"
        rows.append((f"circuits {S.name}", len(r_nb[0]), t_py, t_nb))
    return rows


def bench_adjacency(repeat):
    rows = []
    rng = np.random.default_rng(12345)
    for n_rays, m in [(200, 40), (800, 60)]:
        zero = rng.random((n_rays, m)) < 0.3
        pairs = rng.integers(0, n_rays, size=(4000, 2)).astype(np.int64)
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        _kernels._adjacent_pairs_nb(zero, pairs, 2)
        t_nb, r_nb = best_of(lambda: _kernels._adjacent_pairs_nb(zero, pairs, 2), repeat)
        t_py, r_py = best_of(lambda: _kernels.adjacent_pairs_numpy(zero, pairs, 2), repeat)
        assert (r_nb == r_py).all(), "adjacency kernels disagree"
        rows.append((f"adjacency {n_rays}x{m}", int(r_nb.sum()), t_py, t_nb))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")
    rows = bench_circuits(args.repeat) + bench_adjacency(args.repeat)
    print(f"{'kernel':28} {'result':>8} {'python s':>10} {'numba s':>10} {'speedup':>8}")
    for name, size, t_py, t_nb in rows:
        print(f"{name:28} {size:8d} {t_py:10.4f} {t_nb:10.4f} {t_py / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
