#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Runs each hot kernel on a representative workload under both backends and
prints a speedup table.  The numpy path is what you get with
``SPHERECODES_NO_NUMBA=1``; this script calls both implementations directly,
so the env flag is not needed here.

    python benchmarks/bench_kernels.py [--size {small,medium,large}]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spherecodes import codes, kernels
from spherecodes.euclid import constellation


def _time(fn, *args, repeats: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_pairwise_real(size: str):
    m = {"small": 500, "medium": 2000, "large": 6000}[size]
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(m, 48))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return f"pairwise min sq dist ({m} points, dim 48)", (pts,), "min_sq_dist_real"


def bench_pairwise_words(size: str):
    m = {"small": 500, "medium": 2000, "large": 6000}[size]
    rng = np.random.default_rng(1)
    words = rng.integers(0, 7, size=(m, 48))
    table = constellation(7).euclid_table
    return f"pairwise word distance ({m} words, n=48)", (words, table, 7), "min_dist_words"


def bench_greedy(size: str):
    q, n, d = {"small": (5, 5, 8), "medium": (5, 6, 8), "large": (7, 6, 12)}[size]
    table = constellation(q).euclid_table
    return f"greedy selection (q={q}, n={n}, d={d})", (q, n, d, table), "greedy_lex"


def bench_weight_scan(size: str):
    p, t = {"small": (7, 2), "medium": (11, 4), "large": (11, 2)}[size]
    code = codes.lee_bch(p, t)
    c = constellation(p)
    args = (
        np.asarray(code.g, dtype=np.int64),
        code.k,
        code.n,
        p,
        c.lee_table,
        c.euclid_table,
    )
    return f"exhaustive weight scan (p={p}, t={t}, {code.size} codewords)", args, "cyclic_min_weights"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", choices=("small", "medium", "large"), default="medium")
    args = parser.parse_args()

    if not kernels.HAS_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1

    benches = [
        bench_pairwise_real(args.size),
        bench_pairwise_words(args.size),
        bench_greedy(args.size),
        bench_weight_scan(args.size),
    ]

    print(f"{'kernel':<55} {'numba':>9} {'numpy':>9} {'speedup':>8}  match")
    for label, call_args, name in benches:
        jit = kernels.IMPLEMENTATIONS["numba"][name]
        plain = kernels.IMPLEMENTATIONS["numpy"][name]
        jit(*call_args)  # warm the JIT cache before timing
        t_jit, r_jit = _time(jit, *call_args)
        t_np, r_np = _time(plain, *call_args)
        if isinstance(r_jit, np.ndarray):
            match = bool(np.array_equal(r_jit, r_np))
        elif isinstance(r_jit, float):
            # summation order differs between the paths: allow 1-ulp drift
            match = abs(r_jit - r_np) <= 1e-12 * max(abs(r_jit), 1.0)
        else:
            match = r_jit == r_np
        print(
            f"{label:<55} {t_jit:>8.3f}s {t_np:>8.3f}s {t_np / t_jit:>7.1f}x  {match}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
