"""Timing comparison of the prime-field kernel lanes.

Runs each kernel on identical inputs through every available backend
(compiled loops when numba imported cleanly, plus the pure-numpy fallback)
and prints a table of wall times and speedups. The first numba call pays
one-off compilation, so every backend gets an untimed warmup pass.

Usage:
    python benchmarks/bench_kernels.py [--p 65521] [--seed 0] [--repeat 5]
"""

import argparse
import time

import numpy as np

from veronese_kit._kernels import BACKEND, IMPLS
from veronese_kit.fields import DEFAULT_PRIME


def _cases(rng, p):
    return {
        "det 12x12": ("det", rng.integers(0, p, size=(12, 12), dtype=np.int64)),
        "batch_det 3000x6x6": ("batch_det", rng.integers(0, p, size=(3000, 6, 6), dtype=np.int64)),
        "batch_det 20000x4x4": ("batch_det", rng.integers(0, p, size=(20000, 4, 4), dtype=np.int64)),
        "rref 60x120": ("rref", rng.integers(0, p, size=(60, 120), dtype=np.int64)),
        "rank 150x150": ("rank", rng.integers(0, p, size=(150, 150), dtype=np.int64)),
    }


def _time(fn, arg, p, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(arg, p)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=DEFAULT_PRIME)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cases = _cases(rng, args.p)
    backends = list(IMPLS)
    print(f"active backend: {BACKEND}   (p = {args.p}, repeat = {args.repeat}, best-of timing)")
    print()
    header = f"{'case':24}" + "".join(f"{b:>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, (kind, arg) in cases.items():
        times = []
        results = []
        for b in backends:
            fn = IMPLS[b][kind]
            out = fn(arg, args.p)  # warmup (and result capture for agreement check)
            results.append(out)
            times.append(_time(fn, arg, args.p, args.repeat))
        row = f"{label:24}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times)
        if len(backends) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)
        if len(results) == 2 and kind in ("det", "rank"):
            assert int(np.asarray(results[0]).ravel()[0]) == int(np.asarray(results[1]).ravel()[0])
        elif len(results) == 2 and kind == "batch_det":
            assert np.array_equal(np.asarray(results[0]), np.asarray(results[1]))
    print()
    print("speedup = numpy time / numba time (higher favors the compiled lane)")


if __name__ == "__main__":
    main()
