#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Times the two batch kernels behind the float lane:
  quadratic_form_scan   all 2^k subset quadratic forms of a k x k Gramian
  solve_supports        restricted solves over every candidate support

The numpy lane is what runs with FRAMESCALE_JIT=0; the numba lane is the
default whenever numba imports.  Results are medians over --repeats runs,
after one warmup call that also absorbs jit compilation.

Usage:
    python3 benchmarks/bench_backends.py [--scan-k 18] [--solve-k 40]
                                         [--repeats 5]
"""

from __future__ import annotations

import argparse
import itertools
import statistics
import time

import numpy as np

from framescale import _kernels_numpy

try:
    from framescale import _kernels_numba
except ImportError:
    _kernels_numba = None


def _random_gram(rng, k):
    a = rng.standard_normal((k, k))
    return (a + a.T) / 2


def _scaling_system(rng, n, k):
    """System, rhs, Gramian, and all 3-element supports for a random frame."""
    vecs = rng.standard_normal((n, k))
    vecs /= np.linalg.norm(vecs, axis=0)
    kk = vecs.T @ vecs
    gram = (n * kk ** 2 - 1.0) / (n - 1.0)
    system = np.vstack([gram[: n, :], np.ones((1, k))])
    rhs = np.concatenate([np.zeros(n), [float(n)]])
    supports = np.array(list(itertools.combinations(range(k), 3)), dtype=np.int64)
    return system, rhs, gram, supports


def _time(fn, repeats):
    fn()  # warmup; first numba call compiles
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scan-k", type=int, default=18,
                        help="Gramian size for the subset scan (default 18)")
    parser.add_argument("--solve-k", type=int, default=40,
                        help="frame size for the support solver (default 40)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timed runs per kernel (default 5)")
    args = parser.parse_args()

    if _kernels_numba is None:
        raise SystemExit("numba is not importable; nothing to compare "
                         "(the package still works via FRAMESCALE_JIT=0)")

    rng = np.random.default_rng(0)
    rows = []

    gram = _random_gram(rng, args.scan_k)
    t_np = _time(lambda: _kernels_numpy.quadratic_form_scan(gram), args.repeats)
    t_nb = _time(lambda: _kernels_numba.quadratic_form_scan(gram), args.repeats)
    assert np.allclose(_kernels_numpy.quadratic_form_scan(gram),
                       _kernels_numba.quadratic_form_scan(gram), atol=1e-8)
    rows.append((f"quadratic_form_scan k={args.scan_k} "
                 f"({1 << args.scan_k} subsets)", t_np, t_nb))

    system, rhs, g, supports = _scaling_system(rng, 3, args.solve_k)
    t_np = _time(lambda: _kernels_numpy.solve_supports(
        system, rhs, g, supports, 1e-9, 1e-9), args.repeats)
    t_nb = _time(lambda: _kernels_numba.solve_supports(
        system, rhs, g, supports, 1e-9, 1e-9), args.repeats)
    ok_np, sol_np = _kernels_numpy.solve_supports(system, rhs, g, supports,
                                                  1e-9, 1e-9)
    ok_nb, sol_nb = _kernels_numba.solve_supports(system, rhs, g, supports,
                                                  1e-9, 1e-9)
    assert np.array_equal(ok_np, ok_nb)
    assert np.allclose(sol_np[ok_np], sol_nb[ok_np], atol=1e-8)
    rows.append((f"solve_supports k={args.solve_k} "
                 f"({len(supports)} supports)", t_np, t_nb))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for label, t_np, t_nb in rows:
        print(f"{label:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms"
              f"  {t_np / t_nb:>7.1f}x")
    print("\nagreement checks passed; medians of "
          f"{args.repeats} runs after warmup")


if __name__ == "__main__":
    main()
