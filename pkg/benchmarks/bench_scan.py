#!/usr/bin/env python3
"""Benchmark the box-scan kernel: compiled extension vs numpy fallback.

Runs the same destabilizer searches through both backends and reports
wall-clock times and the speedup.  The workload mirrors the acceptance
sweep (random rank-3 problems with small entries) at a configurable bound.

Usage: python3 benchmarks/bench_scan.py [--bound B] [--cases N]
"""

from __future__ import annotations

import argparse
import random
import sys
import time

import numpy as np


def load_backends():
    from gitwin._scan import _fallback

    try:
        from gitwin._scan import _kernel
    except ImportError:
        _kernel = None
    return _kernel, _fallback


def make_cases(count: int, rng: random.Random):
    cases = []
    for _ in range(count):
        k = 3
        m = rng.randint(0, 4)
        rows = np.array(
            [[rng.randint(-3, 3) for _ in range(k)] for _ in range(m)],
            dtype=np.int64,
        ).reshape(m, k)
        chi = np.array([rng.randint(-3, 3) for _ in range(k)], dtype=np.int64)
        cases.append((rows, chi))
    return cases


def run(scan_box, cases, bound: int):
    start = time.perf_counter()
    results = [scan_box(rows, chi, bound) for rows, chi in cases]
    return time.perf_counter() - start, results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=24, help="box radius")
    parser.add_argument("--cases", type=int, default=40, help="search count")
    parser.add_argument("--seed", type=int, default=20260817)
    args = parser.parse_args()

    kernel, fallback = load_backends()
    cases = make_cases(args.cases, random.Random(args.seed))

    fallback_time, fallback_results = run(fallback.scan_box, cases, args.bound)
    print(f"fallback (numpy):   {fallback_time:8.3f}s for {args.cases} scans")

    if kernel is None:
        print("compiled kernel not built; nothing to compare")
        return 1

    kernel_time, kernel_results = run(kernel.scan_box, cases, args.bound)
    print(f"compiled (cython):  {kernel_time:8.3f}s for {args.cases} scans")

    if kernel_results != fallback_results:
        print("BACKEND MISMATCH: results differ", file=sys.stderr)
        return 2
    print(f"results identical; speedup x{fallback_time / kernel_time:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
