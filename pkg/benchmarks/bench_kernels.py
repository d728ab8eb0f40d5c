"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends must return identical results; a mismatch exits 1.
"""
from __future__ import annotations

import argparse
import sys
import timeit

from horotile import _kernels_py

try:
    from horotile import _kernels
except ImportError:
    _kernels = None

L2 = ((1, 2), (0, 1))
R2 = ((1, 0), (2, 1))
INV = (2, 3, 0, 1)
WEIGHTS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # exponent sums of L and R


def _gens():
    inv = lambda m: ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))  # noqa: E731
    return [L2, R2, inv(L2), inv(R2)]


CASES = {
    "orbit_tri N=6 w=1": lambda k: k.orbit_tri(6, 1),
    "orbit_tri N=8 w=1": lambda k: k.orbit_tri(8, 1),
    "orbit_pent N=2 k=1": lambda k: k.orbit_pent(2, 5, 1),
    "orbit_pent N=3 k=1": lambda k: k.orbit_pent(3, 5, 1),
    "walk_reduced_words len=10": lambda k: k.walk_reduced_words(_gens(), INV, WEIGHTS, 10, 0, True),
}


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    try:
        return bytes(a) == bytes(b)
    except TypeError:
        return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not built; only the fallback is available", file=sys.stderr)
        return 2
    print(f"{'case':30s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    status = 0
    for name, fn in CASES.items():
        if not _same(fn(_kernels), fn(_kernels_py)):
            print(f"{name}: backends disagree", file=sys.stderr)
            status = 1
        tc = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        tp = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        print(f"{name:30s} {tc:10.4f} {tp:10.4f} {tp / tc:7.1f}x")
    return status


if __name__ == "__main__":
    sys.exit(main())
