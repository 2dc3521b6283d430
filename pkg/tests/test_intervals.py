"""Interval arithmetic and the two-subfamily cover split.

The split invariants (each subfamily pairwise disjoint, union preserved)
are checked pointwise at every endpoint and every midpoint between
consecutive endpoints; membership there determines membership everywhere
because the family's endpoints cut the line into constant pieces.
"""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contractionlab.intervals import (
    Interval,
    SubcoverSplit,
    two_disjoint_subcovers,
)


def closed(lo, hi):
    return Interval(F(lo), F(hi))


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(F(2), F(1))
    with pytest.raises(ValueError):
        Interval(F(1), F(1), lo_open=True)
    assert closed(1, 1).is_point


def test_contains_respects_open_ends():
    iv = Interval(F(0), F(1), lo_open=True)
    assert not iv.contains(F(0))
    assert iv.contains(F(1))
    assert iv.contains(F(1, 2))
    iv2 = Interval(F(0), F(1), hi_open=True)
    assert iv2.contains(F(0))
    assert not iv2.contains(F(1))


def test_split_rejects_empty_and_open_families():
    with pytest.raises(ValueError):
        two_disjoint_subcovers([])
    with pytest.raises(ValueError):
        two_disjoint_subcovers([Interval(F(0), F(1), lo_open=True)])


def test_split_single_interval():
    split = two_disjoint_subcovers([closed(0, 1)])
    assert isinstance(split, SubcoverSplit)
    assert len(split.first) + len(split.second) == 1


def test_split_chain_alternates():
    family = [closed(0, 2), closed(1, 3), closed(2, 4)]
    split = two_disjoint_subcovers(family)
    # the middle interval is redundant: [0,2] and [2,4] already cover [0,4]
    assert list(split.first) == [closed(0, 2)]
    assert list(split.second) == [closed(2, 4)]
    _assert_union_preserved(family, split)


def _pairwise_disjoint(ivs):
    for i, a in enumerate(ivs):
        for b in ivs[i + 1:]:
            if a.lo <= b.hi and b.lo <= a.hi:
                return False
    return True


def _sample_points(family):
    ends = sorted({e for iv in family for e in (iv.lo, iv.hi)})
    pts = list(ends)
    for a, b in zip(ends, ends[1:]):
        pts.append((a + b) / 2)
    return pts


def _assert_union_preserved(family, split):
    chosen = list(split.first) + list(split.second)
    for p in _sample_points(family):
        covered = any(iv.contains(p) for iv in family)
        kept = any(iv.contains(p) for iv in chosen)
        assert covered == kept, f"coverage changed at {p}"


def _random_family(rng, max_len=50):
    count = rng.randint(1, max_len)
    out = []
    for _ in range(count):
        lo = F(rng.randint(-60, 60), rng.randint(1, 4))
        hi = lo + F(rng.randint(0, 30), rng.randint(1, 4))
        out.append(Interval(lo, hi))
    return out


def test_split_200_seeded_families():
    rng = random.Random(20260823)
    for _ in range(200):
        family = _random_family(rng)
        split = two_disjoint_subcovers(family)
        assert _pairwise_disjoint(split.first)
        assert _pairwise_disjoint(split.second)
        _assert_union_preserved(family, split)


def test_split_on_disjoint_components_keeps_each():
    family = [closed(0, 1), closed(5, 6), closed(10, 12)]
    split = two_disjoint_subcovers(family)
    _assert_union_preserved(family, split)


def test_split_disjoint_pair_lands_in_first_family():
    # alternation restarts per connected component
    split = two_disjoint_subcovers([closed(0, 1), closed(5, 6)])
    assert list(split.first) == [closed(0, 1), closed(5, 6)]
    assert list(split.second) == []


def test_split_with_many_duplicates():
    family = [closed(0, 3)] * 6 + [closed(1, 2)] * 4
    split = two_disjoint_subcovers(family)
    _assert_union_preserved(family, split)
    assert len(split.first) + len(split.second) <= 2


short = st.integers(-20, 20)


@settings(max_examples=80)
@given(st.lists(st.tuples(short, st.integers(0, 12)), min_size=1,
                max_size=18))
def test_split_invariants_hold_generically(spans):
    family = [Interval(F(lo), F(lo) + F(width)) for lo, width in spans]
    split = two_disjoint_subcovers(family)
    assert _pairwise_disjoint(split.first)
    assert _pairwise_disjoint(split.second)
    _assert_union_preserved(family, split)
    # the split never invents intervals
    pool = list(family)
    for iv in list(split.first) + list(split.second):
        assert iv in pool
        pool.remove(iv)
