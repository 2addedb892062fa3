"""Timing comparison: compiled geo kernels vs the pure-numpy fallback.

Run: python3 benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from argonaut.geo import kernels


def timeit(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def make_workloads(rng: np.random.Generator):
    t = np.sort(rng.uniform(0, 2000, size=365))
    z = np.sort(rng.uniform(0, 500, size=31))
    y = np.sort(rng.uniform(-80, 80, size=68))
    x = np.sort(rng.uniform(-180, 180, size=128))
    values = rng.normal(size=(365, 31, 68, 128))
    m = 135_678  # matchup-scale query count
    qt = rng.uniform(0, 2000, size=m)
    qz = rng.uniform(0, 500, size=m)
    qy = rng.uniform(-80, 80, size=m)
    qx = rng.uniform(-180, 180, size=m)

    axis = np.sort(rng.uniform(0, 5000, size=31))
    nearest_queries = rng.uniform(0, 5000, size=m)

    dirs = rng.uniform(0, 360, size=120_616)
    speeds = rng.uniform(0, 30, size=120_616)
    edges = np.array([0, 0.5, 1.6, 3.4, 5.5, 8.0, 10.8, 13.9, 17.2, 20.8, 24.5, 28.5,
                      np.inf])

    cl = rng.uniform(-80, 80, size=8000)
    cn = rng.uniform(-180, 180, size=8000)

    return {
        "interp4d (135k queries, 365x31x68x128 grid)": lambda impl: impl.interp4d(
            t, z, y, x, values, qt, qz, qy, qx),
        "nearest_index (135k queries, 31-level axis)": lambda impl: impl.nearest_index(
            axis, nearest_queries),
        "windrose_count (120k rows, 12 bins)": lambda impl: impl.windrose_count(
            dirs, speeds, edges, 12),
        "haversine_nearest (500 probes x 8k candidates)": lambda impl: [
            impl.haversine_nearest(0.0, float(i), cl, cn) for i in range(500)
        ],
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    impls = kernels.available_implementations()
    if len(impls) < 2:
        print("note: compiled extension not built; timing the fallback only")
    workloads = make_workloads(np.random.default_rng(0))

    width = max(len(name) for name in workloads) + 2
    header = f"{'workload':<{width}}" + "".join(f"{name:>12}" for name, _ in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads.items():
        times = [timeit(lambda m=module: fn(m), args.repeats) for _, module in impls]
        row = f"{name:<{width}}" + "".join(f"{t * 1000:>10.1f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
