from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contractionlab.sets import RealSet, sum_of_dilates
from contractionlab.systems import (
    ContractionSystem,
    betweenness_violations,
    bijection_with_sumset,
    canonical_dilate_system,
    convexity_check,
    extreme_disjointness_check,
    image_union,
    random_valid_system,
    system_from_jsonable,
    system_to_jsonable,
    validate,
)


def identity_system(base, k):
    return ContractionSystem.create(
        base, k, {a: {x: x for x in base} for a in base})


def test_create_rejects_bad_shapes():
    base = RealSet.of([0, 1])
    with pytest.raises(ValueError):
        ContractionSystem.create(base, F(1, 2), {})
    with pytest.raises(ValueError):
        ContractionSystem.create(RealSet(()), F(2), {})
    with pytest.raises(ValueError):
        ContractionSystem.create(base, F(2), {F(0): {F(0): F(0), F(1): F(0)}})
    with pytest.raises(ValueError):
        ContractionSystem.create(
            base, F(2),
            {F(0): {F(0): F(0)}, F(1): {F(0): F(0), F(1): F(1)}})


def test_identity_system_valid_exactly_at_k_equal_1():
    base = RealSet.of([0, 1, 5])
    assert validate(identity_system(base, F(1))).all_passed()
    report = validate(identity_system(base, F(2)))
    assert report.passed(1) and report.passed(2) and report.passed(4)
    # at k=2 the identity moves nothing, violating contraction everywhere
    assert len(report.violations[3]) == 6


def test_validate_rejects_unknown_axiom():
    with pytest.raises(ValueError):
        validate(identity_system(RealSet.of([0, 1]), F(1)), axioms=(5,))


def test_validate_subset_of_axioms():
    report = validate(identity_system(RealSet.of([0, 1]), F(2)), axioms=(1, 2))
    assert report.checked() == (1, 2)
    assert report.all_passed()


def test_canonical_system_on_unit_pair():
    system = canonical_dilate_system(RealSet.of([0, 1]), F(3))
    assert system.apply(F(0), F(1)) == F(1, 4)
    assert system.apply(F(1), F(0)) == F(3, 4)
    assert image_union(system).to_strings() == ["0", "1/4", "3/4", "1"]
    assert validate(system).all_passed()


def test_canonical_system_fractional_k():
    system = canonical_dilate_system(RealSet.of([0, 2]), F(5, 2))
    # (x + k a)/(k+1) with a=0, x=2 gives 4/7
    assert system.apply(F(0), F(2)) == F(4, 7)
    assert validate(system).all_passed()


def test_canonical_bijection_with_sumset():
    base = RealSet.of([0, 1, 3, 9])
    system = canonical_dilate_system(base, F(3))
    assert bijection_with_sumset(system)
    assert len(image_union(system)) == len(sum_of_dilates(base, F(3)))


def test_image_union_of_identity_is_base():
    base = RealSet.of([0, 4, 11])
    assert image_union(identity_system(base, F(1))) == base


def test_random_system_is_deterministic_and_valid():
    base = RealSet.of([0, 1, 4])
    s1 = random_valid_system(base, F(2), seed=42)
    s2 = random_valid_system(base, F(2), seed=42)
    assert s1.table == s2.table
    s3 = random_valid_system(base, F(2), seed=43)
    assert s1.table != s3.table  # astronomically unlikely to collide
    assert validate(s1).all_passed()


def test_random_system_respects_half_open_regions():
    base = RealSet.of([0, 1])
    for seed in range(30):
        s = random_valid_system(base, F(2), seed)
        y = s.apply(F(0), F(1))
        assert F(0) < y <= F(1, 2)
        z = s.apply(F(1), F(0))
        assert F(1, 2) <= z < F(1)


def test_random_system_valid_at_k_1_and_many_seeds():
    base = RealSet.of([-3, "1/2", 2, 7])
    for k in (F(1), F(3, 2), F(10)):
        for seed in range(12):
            assert validate(random_valid_system(base, k, seed)).all_passed()


def test_convexity_holds_for_axiom_valid_systems():
    base = RealSet.of([0, 1, 4, 6])
    assert convexity_check(canonical_dilate_system(base, F(3))) == ()
    assert convexity_check(random_valid_system(base, F(2), 7)) == ()


def test_convexity_flags_escaping_image():
    base = RealSet.of([0, 1, 2])
    table = {a: {x: x for x in base} for a in base}
    table[F(1)] = {F(0): F(2), F(1): F(1), F(2): F(0)}  # swap ends
    system = ContractionSystem.create(base, F(1), table)
    failures = convexity_check(system)
    assert failures
    first_only = convexity_check(system, first_only=True)
    assert len(first_only) == 1


def test_extreme_disjointness_canonical():
    base = RealSet.of([0, 1])
    assert extreme_disjointness_check(canonical_dilate_system(base, F(3)))
    assert not extreme_disjointness_check(identity_system(base, F(1)))
    with pytest.raises(ValueError):
        extreme_disjointness_check(identity_system(RealSet.of([5]), F(1)))


def test_shared_midpoint_is_legal_at_k_2():
    # both extreme maps sending the far point to 1/2 passes all axioms
    base = RealSet.of([0, 1])
    table = {
        F(0): {F(0): F(0), F(1): F(1, 2)},
        F(1): {F(0): F(1, 2), F(1): F(1)},
    }
    system = ContractionSystem.create(base, F(2), table)
    assert validate(system).all_passed()
    assert not extreme_disjointness_check(system)
    assert len(image_union(system)) == 3


def test_betweenness_violations_empty_for_canonical():
    system = canonical_dilate_system(RealSet.of([0, 2, 5]), F(2))
    assert betweenness_violations(system) == ()


def test_betweenness_violations_found_when_maps_overshoot():
    base = RealSet.of([0, 1])
    table = {
        F(0): {F(0): F(0), F(1): F(-1, 4)},  # leaves [0,1]
        F(1): {F(0): F(3, 4), F(1): F(1)},
    }
    system = ContractionSystem.create(base, F(4), table)
    assert betweenness_violations(system) == ((F(0), F(1)),)
    report = validate(system)
    assert report.passed(3) and not report.passed(4)


def test_serialization_round_trip():
    system = random_valid_system(RealSet.of([0, "1/3", 2]), F(5, 2), seed=9)
    data = system_to_jsonable(system)
    clone = system_from_jsonable(data)
    assert clone.base == system.base
    assert clone.k == system.k
    assert clone.table == system.table


sizes = st.integers(2, 7)


@settings(max_examples=40, deadline=None)
@given(
    size=sizes, seed=st.integers(0, 2 ** 32),
    k=st.sampled_from([F(1), F(2), F(5, 2), F(3), F(10)]),
    lo=st.integers(-30, 30),
)
def test_random_systems_never_violate_axioms(size, seed, k, lo):
    pts = [F(lo + 3 * i, 2) for i in range(size)]
    base = RealSet.of(pts)
    system = random_valid_system(base, k, seed)
    assert validate(system).all_passed()
    # the union can never be smaller than the base (axiom 2 pins each a)
    assert len(image_union(system)) >= len(base)


@settings(max_examples=40, deadline=None)
@given(size=sizes, k=st.sampled_from([F(1), F(2), F(3), F(7, 2)]),
       shift=st.integers(-10, 10))
def test_canonical_system_passes_axioms_generically(size, k, shift):
    base = RealSet.of([shift + i * i for i in range(size)])
    system = canonical_dilate_system(base, k)
    assert validate(system).all_passed()
    assert bijection_with_sumset(system)
