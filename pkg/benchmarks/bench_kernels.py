"""Time the numba and numpy kernel backends on identical inputs.

Run with ``python3 benchmarks/bench_kernels.py [--horizon N] [--repeat R]``.
JIT compilation happens in a warm-up pass and is not timed.
"""

import argparse
import timeit

import numpy as np

from recforge._kernels import _numpy as numpy_impl

try:
    from recforge._kernels import _numba as numba_impl
except ImportError:  # pragma: no cover
    numba_impl = None


def cases(H, rng):
    x = rng.integers(0, 2, size=H).astype(np.uint8)
    a = x[1000:1012].copy()
    ids = rng.integers(-1, 2, size=H).astype(np.int64)
    offs = np.array([0, 3, 7, 11], dtype=np.int64)
    elems = np.unique(rng.integers(0, H, size=3000)).astype(np.int64)
    other = np.unique(rng.integers(0, H, size=3000)).astype(np.int64)
    return {
        "match_mask": lambda m: m.match_mask(x, a),
        "rolling_codes k=20": lambda m: m.rolling_codes(x, 20),
        "pattern_codes |J|=4": lambda m: m.pattern_codes(ids, offs, 2, H - 11),
        "pair_differences": lambda m: m.pair_differences(elems, H),
        "cross_differences": lambda m: m.cross_differences(elems, other, H),
        "prefix_lcp": lambda m: m.prefix_lcp(x),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizon", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    table = cases(args.horizon, rng)
    backends = [("numpy", numpy_impl)] + ([("numba", numba_impl)] if numba_impl else [])
    for _, impl in backends:
        for fn in table.values():
            fn(impl)  # warm-up, includes JIT compilation for numba

    print(f"horizon {args.horizon}, best of {args.repeat} runs (ms)")
    print(f"{'kernel':<22}" + "".join(f"{name:>10}" for name, _ in backends) + "   speedup")
    for label, fn in table.items():
        times = []
        for _, impl in backends:
            times.append(min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat)) * 1e3)
        if len(backends) == 2:
            assert np.array_equal(fn(numpy_impl), fn(numba_impl)), label
        speed = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
        print(f"{label:<22}" + "".join(f"{t:10.2f}" for t in times) + "  " + speed)


if __name__ == "__main__":
    main()
