"""Build the tree-automorphism family whose image union stays at twice
the base size, and watch which axiom gives way as the depth grows.

Usage: python3 scripts/small_image_family.py [max_depth]
"""

import sys
from fractions import Fraction

from contractionlab import (
    betweenness_violations,
    build_counterexample_system,
    image_union,
    validate,
)

K = Fraction(10001)


def main(max_depth: int) -> None:
    for n in range(1, max_depth + 1):
        system = build_counterexample_system(n, K)
        base_size = len(system.base)
        union = image_union(system)
        report = validate(system, axioms=(1, 2, 3))
        bad = betweenness_violations(system)
        ratio = Fraction(len(union), base_size)
        print(f"depth {n}: |A| = {base_size:4d}  |union| = {len(union):4d}"
              f"  ratio = {ratio}  axioms(i-iii) clean = "
              f"{report.all_passed()}  betweenness failures = {len(bad)}")
        if n == 1:
            a, b = bad[0]
            print(f"  first failure pins the pair ({a}, {b}):"
                  f" the image of {b} under the map at {a} overshoots")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 6)
