"""Finite sets of exact rational points and the sumset operations on them."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .rationals import as_fraction, format_rational, parse_rational


@dataclass(frozen=True)
class RealSet:
    """A finite set of rationals stored as a strictly increasing tuple."""

    points: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        for p in self.points:
            if not isinstance(p, Fraction):
                raise TypeError("points must be Fractions; use RealSet.of")
        if any(a >= b for a, b in zip(self.points, self.points[1:])):
            raise ValueError("points must be strictly increasing")

    @classmethod
    def of(cls, values: Iterable) -> "RealSet":
        """Build from any iterable of ints, Fractions or rational strings."""
        return cls(tuple(sorted({as_fraction(v) for v in values})))

    @classmethod
    def from_strings(cls, texts: Iterable[str]) -> "RealSet":
        return cls.of(parse_rational(t) for t in texts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Fraction:
        return self.points[i]

    def __contains__(self, value) -> bool:
        x = as_fraction(value)
        i = bisect_left(self.points, x)
        return i < len(self.points) and self.points[i] == x

    @property
    def inf(self) -> Fraction:
        if not self.points:
            raise ValueError("empty set has no minimum")
        return self.points[0]

    @property
    def sup(self) -> Fraction:
        if not self.points:
            raise ValueError("empty set has no maximum")
        return self.points[-1]

    @property
    def span(self) -> Fraction:
        return self.sup - self.inf

    def to_strings(self) -> list[str]:
        return [format_rational(p) for p in self.points]


def sumset(first: RealSet, second: RealSet) -> RealSet:
    """Pairwise sums {x + y : x in first, y in second}."""
    return RealSet.of(x + y for x in first for y in second)


def dilate(factor: Fraction, points: RealSet) -> RealSet:
    """Pointwise scaling {factor * x}; collapses to {0} when factor is 0."""
    factor = as_fraction(factor)
    return RealSet.of(factor * x for x in points)


def sum_of_dilates(points: RealSet, factor: Fraction) -> RealSet:
    """The set A + factor*A whose size the bounds in this package control."""
    return sumset(points, dilate(factor, points))


def normalize(points: RealSet) -> RealSet:
    """Affine image with minimum 0 and maximum 1; needs two distinct points."""
    if len(points) < 2:
        raise ValueError("degenerate set")
    lo, width = points.inf, points.span
    return RealSet.of((x - lo) / width for x in points)
