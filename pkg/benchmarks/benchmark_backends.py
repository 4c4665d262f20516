#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-python kernels.

Measures single-point evaluate calls (the harness access pattern) per
backend on a spread of functions and dimensions.

Usage: python benchmarks/benchmark_backends.py [--evals N]
"""

import argparse
import time

import numpy as np

from blackbench import backend
from blackbench.transforms import make_transform


def bench_one(module_name: str, function_id: int, n: int, evals: int) -> float:
    transform = make_transform("bbob-lite", function_id, n, 1)
    evaluator = backend.make_evaluator(
        function_id, transform.shift, transform.rotation,
        module=backend.kernel_module(module_name),
    )
    rng = np.random.default_rng(0)
    points = [np.ascontiguousarray(rng.uniform(-5, 5, n)) for _ in range(256)]
    # warm up
    for x in points[:16]:
        evaluator(x)
    start = time.perf_counter()
    for k in range(evals):
        evaluator(points[k & 255])
    elapsed = time.perf_counter() - start
    return evals / elapsed


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--evals", type=int, default=200_000,
                        help="evaluations per (backend, function, dimension) cell")
    args = parser.parse_args()

    backends = backend.available_backends()
    cases = [(1, 2), (3, 10), (8, 10), (2, 40)]

    print(f"active backend: {backend.BACKEND_NAME}")
    print(f"{'function':>10} {'dim':>4}", end="")
    for name in backends:
        print(f" {name + ' evals/s':>18}", end="")
    if len(backends) == 2:
        print(f" {'speedup':>9}", end="")
    print()

    for fid, n in cases:
        rates = [bench_one(name, fid, n, args.evals) for name in backends]
        print(f"{'f' + str(fid):>10} {n:>4}", end="")
        for rate in rates:
            print(f" {rate:>18,.0f}", end="")
        if len(rates) == 2:
            print(f" {rates[0] / rates[1]:>8.1f}x", end="")
        print()


if __name__ == "__main__":
    main()
