"""Sample normalized base sets and tabulate the oracle's minimum union
size against the canonical construction and the closed-form bound.

The sampled minimum per (size, K) cell is an upper bound on the true
extremal value over all sets of that size; bump SAMPLES to tighten it.
"""

import random
from fractions import Fraction

from contractionlab import (
    RealSet,
    SearchBudget,
    canonical_dilate_system,
    cmp_union_bound,
    image_union,
    min_union,
    normalize,
)

SEED = 20260823
SAMPLES = 12
SIZES = (2, 3, 4, 5)
KS = (Fraction(2), Fraction(5, 2), Fraction(3))


def random_base(rng, size):
    pts = {Fraction(0), Fraction(1)}
    while len(pts) < size:
        pts.add(Fraction(rng.randint(1, 47), 48))
    return normalize(RealSet(tuple(sorted(pts))))


def main():
    rng = random.Random(SEED)
    budget = SearchBudget(node_limit=200000)
    print(f"{'size':>4} {'K':>4} {'sampled min':>11} "
          f"{'canonical':>9} {'vs bound':>8}")
    for size in SIZES:
        for k in KS:
            best = None
            exhausted = 0
            for _ in range(SAMPLES):
                base = random_base(rng, size)
                res = min_union(base, k, budget=budget, max_size=size)
                if not res.optimal:
                    exhausted += 1
                    continue
                if best is None or res.min_union_size < best:
                    best = res.min_union_size
            canon = len(image_union(canonical_dilate_system(
                normalize(RealSet.of(range(size))), k)))
            cmp = cmp_union_bound(Fraction(best), size, k)
            note = f"  ({exhausted} exhausted)" if exhausted else ""
            print(f"{size:>4} {str(k):>4} {best:>11} {canon:>9} "
                  f"{'<=>'[cmp + 1]:>8}{note}")


if __name__ == "__main__":
    main()
