#!/usr/bin/env python3
"""Benchmark the split-scan kernels: compiled extension vs NumPy fallback.

The scan is the hot loop of training (every node of every tree sweeps every
feature boundary), so this is the comparison that justifies shipping the
extension. Outputs confirm bit-identical results before timing.

Usage: python benchmarks/bench_split.py [--rows N] [--features D] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mpoxtriage._split_c import best_split as compiled_split
from mpoxtriage._split_py import best_split as python_split
from mpoxtriage.booster import TrainConfig, train
from mpoxtriage.ingest import Dataset, Vocabulary
from mpoxtriage import kernels


def make_node(rng: np.random.Generator, rows: int, features: int):
    X = rng.random((rows, features))
    binary = rng.random(features) < 0.5
    X[:, binary] = (X[:, binary] < 0.5).astype(np.float64)
    X = np.ascontiguousarray(X)
    margins = rng.normal(scale=1.5, size=rows)
    labels = rng.integers(0, 2, size=rows).astype(np.float64)
    p = 1.0 / (1.0 + np.exp(-margins))
    g = np.ascontiguousarray(p - labels)
    h = np.ascontiguousarray(p * (1.0 - p))
    g_total = float(np.cumsum(g)[-1])
    h_total = float(np.cumsum(h)[-1])
    parent = g_total * g_total / (h_total + 1.0)
    order = np.argsort(X, axis=0, kind="stable")
    return (X, order, g, h, g_total, h_total, parent, 1.0, 0.0, 1.0)


def time_kernel(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def bench_kernels(rows: int, features: int, repeats: int) -> None:
    rng = np.random.default_rng(0)
    args = make_node(rng, rows, features)
    assert python_split(*args) == compiled_split(*args), "backends disagree"

    t_py = time_kernel(python_split, args, repeats)
    t_c = time_kernel(compiled_split, args, repeats)
    print(f"split scan, {rows} rows x {features} features (best of {repeats}):")
    print(f"  python   {t_py * 1e3:9.3f} ms")
    print(f"  compiled {t_c * 1e3:9.3f} ms")
    print(f"  speedup  {t_py / t_c:9.2f}x")


def bench_training(rows: int, features: int, repeats: int) -> None:
    rng = np.random.default_rng(1)
    X = (rng.random((rows, features)) < 0.4).astype(np.float64)
    y = rng.integers(0, 2, size=rows).astype(np.int64)
    if y.min() == y.max():
        y[0] = 1 - y[0]
    data = Dataset(Vocabulary(tuple(f"tok{i:03d}" for i in range(features))), X, y)
    config = TrainConfig(n_trees=40)

    original = kernels.active_backend()
    results = {}
    try:
        for backend in kernels.available_backends():
            kernels.set_backend(backend)
            best = float("inf")
            for _ in range(repeats):
                started = time.perf_counter()
                train(data, config)
                best = min(best, time.perf_counter() - started)
            results[backend] = best
    finally:
        kernels.set_backend(original)

    print(f"\nfull training, {rows} rows x {features} features, {config.n_trees} trees (best of {repeats}):")
    for backend, elapsed in sorted(results.items()):
        print(f"  {backend:8s} {elapsed * 1e3:9.1f} ms")
    print(f"  speedup  {results['python'] / results['compiled']:9.2f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=2000)
    parser.add_argument("--features", type=int, default=45)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    bench_kernels(args.rows, args.features, args.repeats)
    bench_training(min(args.rows, 600), args.features, max(2, args.repeats // 2))


if __name__ == "__main__":
    main()
