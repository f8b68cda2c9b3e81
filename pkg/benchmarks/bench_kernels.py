"""Time the numba and numpy refinement kernels, and the full stability test.

    python3 benchmarks/bench_kernels.py --n-max 40 --valency 6
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from circstab.autgroup import automorphism_group, cover_symmetries
from circstab.harness import enumerate_circulants
from circstab.kernels import BACKENDS, get_backend
from circstab.products import double_cover


def _graphs(n_min: int, n_max: int, valency: int, limit: int):
    out = []
    for n in range(n_min, n_max + 1, 2):
        out.extend(enumerate_circulants(n, valency))
    step = max(1, len(out) // limit)
    return out[::step][:limit]


def bench_refine(graphs, name: str, reps: int) -> float:
    kern = get_backend(name)
    covers = [double_cover(x) for x in graphs]
    for g in covers[:2]:  # warm up (numba compiles on first call)
        kern.refine(g.neighbor_matrix, g.degrees, np.zeros(g.n, dtype=np.int64))
    t0 = time.perf_counter()
    for _ in range(reps):
        for g in covers:
            colors = np.zeros(g.n, dtype=np.int64)
            colors[0] = 1
            kern.refine(g.neighbor_matrix, g.degrees, colors)
    return time.perf_counter() - t0


def bench_search(graphs, name: str) -> float:
    t0 = time.perf_counter()
    for x in graphs:
        automorphism_group(double_cover(x), known=cover_symmetries(x.n), backend=name)
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--valency", type=int, default=6)
    ap.add_argument("--limit", type=int, default=200, help="graphs sampled from the range")
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    graphs = _graphs(args.n_min, args.n_max, args.valency, args.limit)
    print(f"{len(graphs)} circulants, valency {args.valency}, even n in [{args.n_min}, {args.n_max}]")
    rows = []
    for name in BACKENDS:
        bench_search(graphs[:2], name)
        r = bench_refine(graphs, name, args.reps)
        s = bench_search(graphs, name)
        rows.append((name, r, s))
    base = dict((name, (r, s)) for name, r, s in rows)
    print(f"{'backend':<8} {'refine (s)':>11} {'search (s)':>11} {'refine x':>9} {'search x':>9}")
    for name, r, s in rows:
        print(f"{name:<8} {r:11.3f} {s:11.3f} {base['numpy'][0] / r:9.1f} {base['numpy'][1] / s:9.1f}")


if __name__ == "__main__":
    main()
