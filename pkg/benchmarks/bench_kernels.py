"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 10] [--repeat 3]

Both modules expose the same functions, so each workload runs on each and the
results are checked for equality before timings are reported.
"""

import argparse
import importlib
import math
import timeit

WORKLOADS = [
    ("count_by_blocks", lambda m, n: m.count_by_blocks(n)),
    ("histogram los", lambda m, n: m.histogram(n, -1, 0, (), math.comb(n, 2))),
    ("histogram crol", lambda m, n: m.histogram(n, -1, 2, (), math.comb(n, 2))),
    ("histogram ov", lambda m, n: m.histogram(n, -1, 5, (), math.comb(n, 2))),
    ("histogram occ 1212", lambda m, n: m.histogram(n, -1, 8, (1, 2, 1, 2), math.comb(n, 4))),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    py = importlib.import_module("partstat._kernels_py")
    try:
        cy = importlib.import_module("partstat._kernels")
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return 1

    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'workload':<20} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, fn in WORKLOADS:
        if fn(py, args.n) != fn(cy, args.n):
            raise SystemExit(f"{label}: backends disagree")
        tp = min(timeit.repeat(lambda: fn(py, args.n), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(cy, args.n), number=1, repeat=args.repeat))
        print(f"{label:<20} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
