"""Intervals with exact rational endpoints and the two-subfamily cover split.

The split takes a finite family of closed intervals and partitions a minimal
covering chain of it into two subfamilies, each pairwise disjoint, whose
union still covers the union of the whole family.  Greedy chain selection
walks each connected component left to right; alternating chain members
between the two output families makes each family pairwise disjoint, because
consecutive chain members overlap but members two apart do not (the second
extends strictly past the first's right endpoint).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rationals import as_fraction


@dataclass(frozen=True)
class Interval:
    """An interval with rational endpoints; either end may be open."""

    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise ValueError("a single point cannot have an open end")

    @property
    def is_closed(self) -> bool:
        return not (self.lo_open or self.hi_open)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        x = as_fraction(value)
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and self.lo_open:
            return False
        if x == self.hi and self.hi_open:
            return False
        return True

    def __contains__(self, value) -> bool:
        return self.contains(value)


@dataclass(frozen=True)
class SubcoverSplit:
    """Two pairwise-disjoint interval families whose union covers the input."""

    first: tuple[Interval, ...]
    second: tuple[Interval, ...]


def _components(order: list[int], family: Sequence[Interval]) -> list[list[int]]:
    """Indices grouped into connected components, in left-to-right order."""
    groups: list[list[int]] = []
    current: list[int] = []
    reach: Fraction | None = None
    for idx in order:
        iv = family[idx]
        if reach is None or iv.lo > reach:
            current = [idx]
            groups.append(current)
            reach = iv.hi
        else:
            current.append(idx)
            if iv.hi > reach:
                reach = iv.hi
    return groups


def two_disjoint_subcovers(family: Sequence[Interval]) -> SubcoverSplit:
    """Split a family of closed intervals into two disjoint subcovers.

    Ties during greedy selection prefer the larger right endpoint, then the
    smaller left endpoint, then the earlier input position, so the result is
    deterministic for a fixed input order.
    """
    family = list(family)
    if not family:
        raise ValueError("empty interval family")
    if any(not iv.is_closed for iv in family):
        raise ValueError("subcover split requires closed intervals")

    order = sorted(range(len(family)),
                   key=lambda i: (family[i].lo, family[i].hi, i))
    first: list[Interval] = []
    second: list[Interval] = []
    for comp in _components(order, family):
        right_edge = max(family[i].hi for i in comp)
        chain: list[int] = []
        covered: Fraction | None = None  # right end of the covered prefix
        while covered is None or covered < right_edge:
            frontier = family[comp[0]].lo if covered is None else covered
            best: int | None = None
            for i in comp:
                iv = family[i]
                if iv.lo > frontier:
                    break  # comp is sorted by lo
                if covered is not None and iv.hi <= covered:
                    continue
                if best is None:
                    best = i
                    continue
                bv = family[best]
                if (iv.hi, -iv.lo) > (bv.hi, -bv.lo):
                    best = i
            if best is None:
                raise AssertionError("component walk lost coverage")
            chain.append(best)
            covered = family[best].hi
        for pos, i in enumerate(chain):
            (first if pos % 2 == 0 else second).append(family[i])
    return SubcoverSplit(first=tuple(first), second=tuple(second))
