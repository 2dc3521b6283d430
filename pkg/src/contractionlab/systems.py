"""Families of pointwise contraction maps on a finite rational set.

A system assigns to every base point ``a`` an injective self-labelled map on
the base set that fixes ``a``, moves every other point at least a factor
``k`` closer to ``a``, and never moves a point past ``a`` or away from it.
The canonical instance pulls every point an exact ``1/(k+1)`` of the way
toward ``a``; its image union is an affine copy of the sumset ``A + k*A``,
which is what ties these systems to the sumset bounds in `bounds`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .intervals import Interval
from .rationals import as_fraction, format_rational, parse_rational
from .sets import RealSet, sum_of_dilates

AXIOM_NAMES = {
    1: "injectivity",
    2: "fixes base point",
    3: "contraction by factor k",
    4: "betweenness",
}


@dataclass(frozen=True)
class ContractionSystem:
    """One map per base point, stored as nested point-to-point tables."""

    base: RealSet
    k: Fraction
    table: Mapping[Fraction, Mapping[Fraction, Fraction]]

    @classmethod
    def create(cls, base: RealSet, k: Fraction,
               table: Mapping) -> "ContractionSystem":
        """Validate table shape (not the axioms) and freeze the system."""
        k = as_fraction(k)
        if k < 1:
            raise ValueError("contraction factor must be at least 1")
        if len(base) == 0:
            raise ValueError("base set must be nonempty")
        points = set(base.points)
        if set(table) != points:
            raise ValueError("malformed table: one map per base point required")
        frozen: dict[Fraction, dict[Fraction, Fraction]] = {}
        for a in base:
            row = table[a]
            if set(row) != points:
                raise ValueError(
                    "malformed table: each map needs exactly one entry per point")
            frozen[a] = {x: as_fraction(row[x]) for x in base}
        return cls(base=base, k=k, table=frozen)

    def apply(self, a: Fraction, x: Fraction) -> Fraction:
        return self.table[a][x]

    def image_of(self, a: Fraction) -> RealSet:
        return RealSet.of(self.table[a].values())


def validate(system: ContractionSystem,
             axioms: Iterable[int] = (1, 2, 3, 4)) -> "AxiomReport":
    """Check the requested axioms and report every violating triple."""
    axioms = sorted(set(axioms))
    unknown = [i for i in axioms if i not in AXIOM_NAMES]
    if unknown:
        raise ValueError(f"unknown axioms {unknown}")
    violations: dict[int, list[tuple[Fraction, Fraction, Fraction]]] = \
        {i: [] for i in axioms}
    k = system.k
    for a in system.base:
        row = system.table[a]
        if 1 in violations:
            seen: dict[Fraction, Fraction] = {}
            for x in system.base:
                y = row[x]
                if y in seen:
                    violations[1].append((a, x, y))
                else:
                    seen[y] = x
        if 2 in violations and row[a] != a:
            violations[2].append((a, a, row[a]))
        for x in system.base:
            if x == a:
                continue
            y = row[x]
            if 3 in violations and k * abs(y - a) > abs(x - a):
                violations[3].append((a, x, y))
            if 4 in violations and not (min(a, x) <= y <= max(a, x)):
                violations[4].append((a, x, y))
    return AxiomReport(violations={i: tuple(v) for i, v in violations.items()})


@dataclass(frozen=True)
class AxiomReport:
    """Violating (base point, argument, image) triples keyed by axiom number."""

    violations: Mapping[int, tuple[tuple[Fraction, Fraction, Fraction], ...]]

    def checked(self) -> tuple[int, ...]:
        return tuple(sorted(self.violations))

    def passed(self, axiom: int) -> bool:
        return not self.violations[axiom]

    def all_passed(self) -> bool:
        return all(not v for v in self.violations.values())


def image_union(system: ContractionSystem) -> RealSet:
    """Union of the images of all maps in the system."""
    values = set()
    for a in system.base:
        values.update(system.table[a].values())
    return RealSet.of(values)


def canonical_dilate_system(base: RealSet, k: Fraction) -> ContractionSystem:
    """The system pulling x to (x + k*a) / (k + 1), exact in rationals.

    Its image union is the sumset A + k*A scaled by 1/(k+1), so the two have
    the same size; `bijection_with_sumset` checks that correspondence.
    """
    k = as_fraction(k)
    table = {a: {x: (x + k * a) / (k + 1) for x in base} for a in base}
    return ContractionSystem.create(base, k, table)


def bijection_with_sumset(system: ContractionSystem) -> bool:
    """True when (k+1) * image_union equals the sumset base + k*base."""
    scaled = RealSet.of((system.k + 1) * y for y in image_union(system))
    return scaled == sum_of_dilates(system.base, system.k)


def random_valid_system(base: RealSet, k: Fraction, seed: int,
                        max_redraws: int = 8) -> ContractionSystem:
    """A seeded random system satisfying all four axioms by construction.

    Arguments of each map are visited nearest-to-a first.  Each non-fixed
    image is a + (x - a) * t / k with t drawn uniformly from the dyadic
    rationals in (0, 1]; a draw colliding with an image already chosen for
    the same map is redrawn a bounded number of times, then replaced by a
    deterministic fallback multiplier j / (n + 1).  The n + 1 fallback
    candidates for a given x are pairwise distinct while at most n values
    are already taken, so one is always free.
    """
    k = as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    rng = random.Random(seed)
    n = len(base)
    table: dict[Fraction, dict[Fraction, Fraction]] = {}
    for a in base:
        row: dict[Fraction, Fraction] = {a: a}
        used = {a}
        others = sorted((p for p in base if p != a),
                        key=lambda p: (abs(p - a), p))
        for x in others:
            y = None
            for _ in range(max_redraws):
                t = Fraction(rng.getrandbits(32) + 1, 2 ** 32)
                cand = a + (x - a) * t / k
                if cand not in used:
                    y = cand
                    break
            if y is None:
                for j in range(1, n + 2):
                    cand = a + (x - a) * Fraction(j, n + 1) / k
                    if cand not in used:
                        y = cand
                        break
            if y is None:
                raise AssertionError("fallback multipliers exhausted")
            row[x] = y
            used.add(y)
        table[a] = row
    return ContractionSystem.create(base, k, table)


def convexity_check(system: ContractionSystem, first_only: bool = False) \
        -> tuple[tuple[Fraction, Interval, Fraction], ...]:
    """Triples (a, window, x) where phi_a maps a point of the window outside it.

    Windows are the closed intervals between two base points that contain a.
    The canonical system maps every such window into itself; general systems
    need not, and the tree-relabelling counterexample never does.  With
    first_only the scan stops at the first failure (tight windows are tried
    first, so a failure near a base point is found quickly).
    """
    failures: list[tuple[Fraction, Interval, Fraction]] = []
    pts = system.base.points
    for ai, a in enumerate(pts):
        row = system.table[a]
        for u in pts[ai::-1]:
            for v in pts[ai:]:
                for x in pts:
                    if u <= x <= v and not (u <= row[x] <= v):
                        failures.append((a, Interval(u, v), x))
                        if first_only:
                            return tuple(failures)
    return tuple(failures)


def extreme_disjointness_check(system: ContractionSystem) -> bool:
    """True when the maps at the least and greatest base points share no image."""
    if len(system.base) < 2:
        raise ValueError("need at least two base points")
    lo_img = set(system.table[system.base.inf].values())
    hi_img = set(system.table[system.base.sup].values())
    return not (lo_img & hi_img)


def betweenness_violations(system: ContractionSystem) \
        -> tuple[tuple[Fraction, Fraction], ...]:
    """Pairs (a, x) whose image leaves the closed interval spanned by a and x."""
    pairs: list[tuple[Fraction, Fraction]] = []
    for a in system.base:
        row = system.table[a]
        for x in system.base:
            if x == a:
                continue
            y = row[x]
            if not (min(a, x) <= y <= max(a, x)):
                pairs.append((a, x))
    return tuple(pairs)


def system_to_jsonable(system: ContractionSystem) -> dict:
    """Plain-dict form with every scalar rendered as an exact string."""
    return {
        "k": format_rational(system.k),
        "base": system.base.to_strings(),
        "table": {
            format_rational(a): {
                format_rational(x): format_rational(y)
                for x, y in system.table[a].items()
            }
            for a in system.base
        },
    }


def system_from_jsonable(data: Mapping) -> ContractionSystem:
    """Inverse of `system_to_jsonable`; revalidates the table shape."""
    base = RealSet.from_strings(data["base"])
    k = parse_rational(data["k"])
    table = {
        parse_rational(a): {
            parse_rational(x): parse_rational(y) for x, y in row.items()
        }
        for a, row in data["table"].items()
    }
    return ContractionSystem.create(base, k, table)
