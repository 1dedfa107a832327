"""Compare the compiled and numpy kernel backends on realistic sizes.

Usage: python benchmarks/bench_kernels.py [--rows 2000] [--vocab 5000]
       [--labels 28] [--epochs 50] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from textaug import _speedups_py, kernels


def build_problem(rng: np.random.Generator, n_rows: int, n_cols: int,
                  n_labels: int, density: float = 0.01):
    n_nnz_per_row = max(1, int(n_cols * density))
    indptr = np.arange(0, (n_rows + 1) * n_nnz_per_row, n_nnz_per_row, dtype=np.int32)
    indices = np.concatenate(
        [np.sort(rng.choice(n_cols, size=n_nnz_per_row, replace=False))
         for _ in range(n_rows)]
    ).astype(np.int32)
    data = rng.random(n_rows * n_nnz_per_row)
    Y = (rng.random((n_rows, n_labels)) < 0.1).astype(np.float64)
    return data, indices, indptr, n_cols, Y


def time_call(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=2000)
    parser.add_argument("--vocab", type=int, default=5000)
    parser.add_argument("--labels", type=int, default=28)
    parser.add_argument("--epochs", type=int, default=50)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _speedups_py)]
    try:
        from textaug import _speedups

        backends.insert(0, ("compiled", _speedups))
    except ImportError:
        print("compiled backend not built; benchmarking the numpy fallback only")

    rng = np.random.default_rng(0)
    problem = build_problem(rng, args.rows, args.vocab, args.labels)
    print(f"logreg_fit: rows={args.rows} vocab={args.vocab} labels={args.labels} "
          f"epochs={args.epochs}")
    timings = {}
    for name, module in backends:
        timings[name] = time_call(
            module.logreg_fit, *problem, 0.5, 1e-4, args.epochs, repeat=args.repeat
        )
        print(f"  {name:>8}: {timings[name] * 1000:8.1f} ms")
    if len(timings) == 2:
        print(f"  speedup: {timings['python'] / timings['compiled']:.2f}x")

    # short sentences dominate real workloads; the large case shows the
    # crossover where BLAS-backed numpy matmuls win over plain C loops
    for n_tokens, dim, calls in [(12, 64, 5000), (64, 384, 200)]:
        ref = rng.normal(size=(n_tokens, dim))
        gen = rng.normal(size=(n_tokens + 2, dim))
        print(f"bertscore_scores: {n_tokens}x{n_tokens + 2} tokens, dim {dim}, "
              f"{calls} calls")
        timings = {}
        for name, module in backends:
            def run(module=module):
                for _ in range(calls):
                    module.bertscore_scores(ref, gen, 1e-12)

            timings[name] = time_call(run, repeat=args.repeat)
            print(f"  {name:>8}: {timings[name] * 1000:8.1f} ms")
        if len(timings) == 2:
            print(f"  speedup: {timings['python'] / timings['compiled']:.2f}x")

    # parity spot check so the comparison is honest
    if len(backends) == 2:
        w_c, b_c, losses_c = backends[0][1].logreg_fit(*problem, 0.5, 1e-4, 5)
        w_p, b_p, losses_p = backends[1][1].logreg_fit(*problem, 0.5, 1e-4, 5)
        assert np.allclose(w_c, w_p, atol=1e-10) and np.allclose(losses_c, losses_p)
        print("parity: identical results from both backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
