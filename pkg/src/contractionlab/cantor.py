"""Cantor-type counterexample sets, tree relabelling maps, and digit boxes.

Points are addressed by binary words: a word of depth m has value
sum(bits[i] * (4k)**-(i+1)).  Because 4k > 2, the tail of the series can
never climb back past an earlier digit, so distinct equal-depth words have
distinct values and the first index where two words differ determines their
distance up to a relative error of 1/(4k-1).

The counterexample system conjugates the scale-down-by-4k map by the XOR
relabelling of the address tree.  Each conjugated map satisfies injectivity,
fixed point, and k-contraction, yet the union of all images is the full
depth-(n+1) set: twice the base set, independent of k.  This is what rules
out dropping the betweenness requirement from the union lower bound.

Digit boxes {sum(digit_i * k**i)} are the standard example of slow
sumset growth; `plan_subpolynomial_example` picks their shape for a target
growth factor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .rationals import as_fraction
from .sets import RealSet, sum_of_dilates
from .systems import ContractionSystem

MIN_SCALE = 26  # smallest k with branch-factor error 1/(4k-1) <= 1/100


@dataclass(frozen=True, eq=False)
class TreeWord:
    """A binary address of fixed depth; value determined by bits and scale k.

    Equality and hashing are by (k, value): appending zero bits deepens the
    address without moving the point, and such paddings compare equal.
    """

    k: Fraction
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", as_fraction(self.k))
        if self.k < 1:
            raise ValueError("scale must be at least 1")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @property
    def depth(self) -> int:
        return len(self.bits)

    @cached_property
    def value(self) -> Fraction:
        beta = 1 / (4 * self.k)
        acc = Fraction(0)
        for b in reversed(self.bits):
            acc = (acc + b) * beta
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeWord):
            return NotImplemented
        return self.k == other.k and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.k, self.value))

    def __repr__(self) -> str:
        word = "".join(str(b) for b in self.bits)
        return f"TreeWord(k={self.k}, bits={word!r})"


def all_words(k: Fraction, depth: int) -> tuple[TreeWord, ...]:
    """Every depth-`depth` word, in lexicographic (= value) order."""
    k = as_fraction(k)
    return tuple(TreeWord(k, bits)
                 for bits in itertools.product((0, 1), repeat=depth))


def scale_down(t: TreeWord) -> TreeWord:
    """Prefix a zero bit: the word one level deeper with value t.value/(4k)."""
    return TreeWord(t.k, (0,) + t.bits)


def xor_automorphism(x: TreeWord, t: TreeWord) -> TreeWord:
    """Relabel t by XOR with x on levels 1..depth(x), keeping the last level.

    An involutive bijection of the depth-(n+1) words for x of depth n; it
    sends 0 to (x padded) and maps the depth-n subset onto itself.
    """
    if x.k != t.k:
        raise ValueError("scale mismatch")
    if t.depth != x.depth + 1:
        raise ValueError("depth mismatch: relabelling wants depth(x)+1")
    bits = tuple(b ^ c for b, c in zip(t.bits, x.bits)) + (t.bits[-1],)
    return TreeWord(t.k, bits)


@dataclass(frozen=True)
class CantorPair:
    """All depth-n values (coarse) and all depth-(n+1) values (fine)."""

    depth: int
    k: Fraction
    coarse: RealSet
    fine: RealSet


def _require_scale(k) -> Fraction:
    k = as_fraction(k)
    if k < MIN_SCALE:
        raise ValueError("branch factor guarantee unavailable")
    return k


def build_cantor(n: int, k: Fraction) -> CantorPair:
    """The 2**n coarse and 2**(n+1) fine point sets at scale k >= 26."""
    if n < 1:
        raise ValueError("depth must be positive")
    k = _require_scale(k)
    coarse = RealSet.of(w.value for w in all_words(k, n))
    fine = RealSet.of(w.value for w in all_words(k, n + 1))
    return CantorPair(depth=n, k=k, coarse=coarse, fine=fine)


def build_counterexample_system(n: int, k: Fraction) -> ContractionSystem:
    """The conjugated scale-down system on the depth-n set.

    The map at base point x sends y to relabel(scale_down(relabel(y))),
    relabelling by XOR with x; its image is the half of the fine set whose
    first bit matches x, so the union over all x is the whole fine set.
    """
    if n < 1:
        raise ValueError("depth must be positive")
    k = _require_scale(k)
    words = all_words(k, n)
    base = RealSet.of(w.value for w in words)
    table: dict[Fraction, dict[Fraction, Fraction]] = {}
    for x in words:
        row: dict[Fraction, Fraction] = {}
        for y in words:
            mixed = TreeWord(k, tuple(b ^ c for b, c in zip(y.bits, x.bits)))
            image = xor_automorphism(x, scale_down(mixed))
            row[y.value] = image.value
        table[x.value] = row
    return ContractionSystem.create(base, k, table)


def _scaled_beta(k: Fraction):
    """4k as an int when possible (pure-integer arithmetic downstream)."""
    beta = 4 * k
    return beta.numerator if beta.denominator == 1 else beta


def _scaled_word_values(words, beta):
    """Word values times (4k)**depth: integers whenever 4k is an integer."""
    out = []
    for w in words:
        acc = beta - beta  # zero of the right type
        for b in w.bits:
            acc = acc * beta + b
        out.append(acc)
    return out


def _ratio_extremes(nums_dens):
    """Exact (min, max) of a stream of positive num/den pairs."""
    min_n = min_d = max_n = max_d = None
    for num, den in nums_dens:
        if min_n is None or num * min_d < min_n * den:
            min_n, min_d = num, den
        if max_n is None or num * max_d > max_n * den:
            max_n, max_d = num, den
    return Fraction(min_n, min_d), Fraction(max_n, max_d)


def verify_bilipschitz(n: int, k: Fraction, x: TreeWord) \
        -> tuple[Fraction, Fraction]:
    """Exact extremes of |relabel(t)-relabel(t')| / |t-t'| over fine pairs.

    Distances are compared in values scaled by (4k)**(n+1), which clears
    denominators; the extremes must land in [1/2, 2].
    """
    k = _require_scale(k)
    if x.depth != n or x.k != k:
        raise ValueError("x must be a depth-n word at scale k")
    beta = _scaled_beta(k)
    fine = all_words(k, n + 1)
    values = _scaled_word_values(fine, beta)
    images = _scaled_word_values((xor_automorphism(x, t) for t in fine), beta)

    def ratios():
        m = len(fine)
        for i in range(m):
            vi, wi = values[i], images[i]
            for j in range(i + 1, m):
                yield abs(wi - images[j]), abs(vi - values[j])

    return _ratio_extremes(ratios())


def bilipschitz_extremes(n: int, k: Fraction) -> tuple[Fraction, Fraction]:
    """Extremes of verify_bilipschitz aggregated over every depth-n word."""
    k = _require_scale(k)
    lo = hi = None
    for x in all_words(k, n):
        a, b = verify_bilipschitz(n, k, x)
        lo = a if lo is None or a < lo else lo
        hi = b if hi is None or b > hi else hi
    return lo, hi


def branch_factor_check(n: int, k: Fraction) -> Fraction:
    """Max of |(4k)**m * |t-t'| - 1| over fine pairs first differing at m.

    Zero happens when the differing bit is the last one; the maximum stays
    at or below 1/(4k-1) because the tail series beyond the first split is
    geometric with ratio 1/(4k).
    """
    k = _require_scale(k)
    if n < 1:
        raise ValueError("depth must be positive")
    beta = _scaled_beta(k)
    fine = all_words(k, n + 1)
    values = _scaled_word_values(fine, beta)
    tail_pow = [beta ** t for t in range(n + 2)]
    best_n, best_d = 0, 1
    m_words = len(fine)
    for i in range(m_words):
        bi, vi = fine[i].bits, values[i]
        for j in range(i + 1, m_words):
            bj = fine[j].bits
            first = next(t for t in range(n + 1) if bi[t] != bj[t])
            den = tail_pow[n - first]  # (4k)**(n+1-m) with m = first+1
            num = abs(abs(vi - values[j]) - den)
            if num * best_d > best_n * den:
                best_n, best_d = num, den
    return Fraction(best_n, best_d)


@dataclass(frozen=True)
class DigitBoxSet:
    """Base-k digit box: all d-digit numbers with digits below digit_range."""

    base: int
    digit_count: int
    digit_range: int
    points: RealSet


def digit_box_set(k: int, d: int, n_digits: int) -> DigitBoxSet:
    """The set {sum(digit_i * k**i, i < d) : digits in 0..n_digits-1}.

    Digit uniqueness (n_digits <= k) makes the size exactly n_digits**d.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("base must be a positive integer")
    if not isinstance(d, int) or d < 1:
        raise ValueError("digit count must be a positive integer")
    if not isinstance(n_digits, int) or n_digits < 1:
        raise ValueError("digit range must be a positive integer")
    if n_digits > k:
        raise ValueError("digit collision possible")
    weights = [k ** i for i in range(d)]
    points = RealSet.of(
        sum(dig * w for dig, w in zip(digits, weights))
        for digits in itertools.product(range(n_digits), repeat=d)
    )
    return DigitBoxSet(base=k, digit_count=d, digit_range=n_digits,
                       points=points)


def plan_subpolynomial_example(span: Fraction, k: int | None = None,
                               max_points: int = 4096) \
        -> tuple[int, int, bool]:
    """Digit-box shape for growth factor span: d ~ half the bits of span.

    Returns (d, n_digits, feasible) with d = max(1, round(log2(span)/2))
    (ties to even, decided exactly) and n_digits = max(1, floor(span/2**d)).
    feasible is True only when n_digits >= 2 and an exact brute-force check
    at scale k (defaulting to n_digits) confirms |A + k*A| <= span * |A|;
    boxes bigger than max_points are not brute-forced and report False.
    """
    span = as_fraction(span)
    if span <= 1:
        raise ValueError("span must exceed 1")
    # smallest dd with span <= 2**(2dd+1); then 2**(2dd-1) < span
    dd = 0
    while span > 2 ** (2 * dd + 1):
        dd += 1
    if span == 2 ** (2 * dd + 1) and dd % 2 == 1:
        dd += 1  # midpoint rounds to the even neighbor
    d = max(1, dd)
    n_digits = max(1, math.floor(span / 2 ** d))
    if n_digits < 2:
        return d, n_digits, False
    if k is None:
        k = n_digits
    if not isinstance(k, int) or k < n_digits:
        raise ValueError("digit collision possible")
    if n_digits ** d > max_points:
        return d, n_digits, False
    box = digit_box_set(k, d, n_digits)
    grown = sum_of_dilates(box.points, Fraction(k))
    feasible = len(grown) <= span * len(box.points)
    return d, n_digits, feasible
