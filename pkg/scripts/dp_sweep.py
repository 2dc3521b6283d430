#!/usr/bin/env python3
"""Sweep the recursive lower-bound table across K and compare with the
closed-form bound (1/8)Kn(1 - n^(-1/K^2)).

Prints one block per K: the first disagreement-free prefix is expected to
be the whole table, so any VIOLATION line is a bug in the recursion.
"""

import argparse
from fractions import Fraction

from contractionlab import cmp_union_bound, dp_table, threshold_n

SYMBOL = {-1: "<", 0: "=", 1: ">"}


def sweep(k: Fraction, max_n: int) -> None:
    table = dp_table(k, max_n)
    thresh = threshold_n(k, max_bits=4096)
    print(f"K = {k}   (provable-growth threshold: {thresh})")
    step = max(1, max_n // 16)
    for n in range(0, max_n + 1, step):
        cmp = cmp_union_bound(table.values[n], n, k) if n else 1
        tag = "" if cmp >= 0 else "   VIOLATION"
        print(f"  G({n:5d}) = {str(table.values[n]):>10s}   "
              f"vs bound: {SYMBOL[cmp]}{tag}")
    branch2 = sum(1 for b in table.branches if b == "branch2")
    print(f"  split branch taken {branch2}/{max_n} times")
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=512)
    ap.add_argument("--k", default="2,3,10,15/2",
                    help="comma-separated list of K values")
    args = ap.parse_args()
    for part in args.k.split(","):
        sweep(Fraction(part), args.max_n)


if __name__ == "__main__":
    main()

# At N=512 the split branch dominates for small K and never fires for
# K=100; the crossover tracks 6n/K against the +n branch as expected.
