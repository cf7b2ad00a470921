"""Recompute the pinned truncation constants with the function-pair brute force.

    python scripts/pin_regressions.py

Prints a dict literal suitable for ``finitegh.verify.PINNED``.
"""

from __future__ import annotations

import time
from fractions import Fraction

from finitegh.bruteforce import brute_force_gh
from finitegh.constructions import gapped_segment, integers, rtilde_grid, segment_grid
from finitegh.rationals import format_rational

CASES = [
    ("rtilde", 2, Fraction(1)),
    ("rtilde", 2, Fraction(1, 2)),
    ("rtilde", 3, Fraction(1)),
    ("gapped", 2, Fraction(1)),
    ("gapped", 2, Fraction(1, 2)),
    ("gapped", 3, Fraction(1)),
]


def spaces_for(kind: str, N: int, h: Fraction):
    if kind == "rtilde":
        return integers(N), rtilde_grid(N, h)
    return segment_grid(N, h), gapped_segment(N, 0, 1, h)


def main() -> None:
    print("PINNED = {")
    for kind, N, h in CASES:
        X, Y = spaces_for(kind, N, h)
        t0 = time.perf_counter()
        value, _ = brute_force_gh(X, Y)
        took = time.perf_counter() - t0
        print(f'    ("{kind}", {N}, "{format_rational(h)}"): Fraction({value.numerator}, {value.denominator}),'
              f"  # {X.n}x{Y.n} points, {took:.1f}s")
    print("}")


if __name__ == "__main__":
    main()
