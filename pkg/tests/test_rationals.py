"""Certified comparison core: parsing, cmp_pow, and power-sum signs.

Expected values were frozen from independent computation (mpmath at 60
digits, plus hand algebra for the perfect-power cases) before being
asserted against the implementation.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contractionlab.rationals import (
    as_fraction,
    cmp_pow,
    format_rational,
    parse_rational,
    sign,
    sign_of_power_sum,
)


def test_parse_fraction_and_decimal_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7/2") == F(-7, 2)
    assert parse_rational("0.25") == F(1, 4)
    assert parse_rational("10") == F(10)
    assert parse_rational("-0.5") == F(-1, 2)


def test_format_round_trips_and_integers_drop_denominator():
    assert format_rational(F(3, 4)) == "3/4"
    assert format_rational(F(8, 4)) == "2"
    assert format_rational(F(-5, 10)) == "-1/2"
    assert format_rational(F(0)) == "0"
    for q in (F(22, 7), F(-3), F(0), F(1, 999983)):
        assert parse_rational(format_rational(q)) == q


def test_float_inputs_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(1.0)


def test_as_fraction_accepts_ints_strings_fractions():
    assert as_fraction(3) == F(3)
    assert as_fraction("3/7") == F(3, 7)
    assert as_fraction(F(1, 2)) == F(1, 2)


def test_sign():
    assert sign(F(3, 7)) == 1
    assert sign(F(-1, 9)) == -1
    assert sign(F(0)) == 0


# --- cmp_pow -----------------------------------------------------------

def test_cmp_pow_integer_exponents_are_exact():
    assert cmp_pow(F(2), F(10), F(1024)) == 0
    assert cmp_pow(F(2), F(10), F(1025)) == -1
    assert cmp_pow(F(3, 2), F(3), F(27, 8)) == 0
    assert cmp_pow(F(3, 2), F(-2), F(4, 9)) == 0


def test_cmp_pow_rational_exponent_perfect_powers():
    # 4^(1/2) = 2 and 8^(2/3) = 4 are exactly representable
    assert cmp_pow(F(4), F(1, 2), F(2)) == 0
    assert cmp_pow(F(8), F(2, 3), F(4)) == 0
    assert cmp_pow(F(27, 8), F(1, 3), F(3, 2)) == 0
    assert cmp_pow(F(4), F(1, 2), F(201, 100)) == -1


def test_cmp_pow_irrational_values_need_interval_refinement():
    # 2^(1/2) = 1.41421356... frozen against mpmath
    assert cmp_pow(F(2), F(1, 2), F(141421356, 100000000)) == 1
    assert cmp_pow(F(2), F(1, 2), F(141421357, 100000000)) == -1
    # 5^(1/100) = 1.01622459... (threshold-style comparison)
    assert cmp_pow(F(5), F(1, 100), F(101622459, 100000000)) == 1
    assert cmp_pow(F(5), F(1, 100), F(10163, 10000)) == -1


def test_cmp_pow_negative_exponent_and_small_base():
    # 2^(-1/100) = 0.993092... > 0.99
    assert cmp_pow(F(2), F(-1, 100), F(99, 100)) == 1
    assert cmp_pow(F(1, 2), F(1, 2), F(1)) == -1
    assert cmp_pow(F(1), F(12345, 677), F(1)) == 0


def test_cmp_pow_nonpositive_target_is_immediate():
    assert cmp_pow(F(2), F(1, 3), F(0)) == 1
    assert cmp_pow(F(2), F(1, 3), F(-5)) == 1


def test_cmp_pow_rejects_bad_inputs():
    with pytest.raises(ValueError):
        cmp_pow(F(0), F(1, 2), F(1))
    with pytest.raises(ValueError):
        cmp_pow(F(-2), F(2), F(4))
    with pytest.raises(ValueError):
        cmp_pow(F(2), F(1, 2), F(2), method="guess")


def test_cmp_pow_methods_agree():
    cases = [
        (F(2), F(1, 2), F(3, 2)),
        (F(9, 7), F(5, 3), F(3, 2)),
        (F(10), F(-2, 5), F(2, 5)),
        (F(7, 5), F(7), F(21, 2)),
    ]
    for base, e, t in cases:
        assert cmp_pow(base, e, t, method="interval") == \
            cmp_pow(base, e, t, method="auto")


@settings(max_examples=60)
@given(
    num=st.integers(1, 40), den=st.integers(1, 40),
    e_num=st.integers(-6, 6), e_den=st.integers(1, 4),
    t_num=st.integers(1, 50), t_den=st.integers(1, 50),
)
def test_cmp_pow_matches_float_when_far_from_tie(num, den, e_num, e_den,
                                                 t_num, t_den):
    base, e, t = F(num, den), F(e_num, e_den), F(t_num, t_den)
    approx = float(base) ** float(e) - float(t)
    if abs(approx) < 1e-6:
        return  # too close for float arithmetic to referee
    assert cmp_pow(base, e, t) == (1 if approx > 0 else -1)


# --- sign_of_power_sum -------------------------------------------------

def test_power_sum_plain_cases():
    # 1 + 2*4^(1/2) - 5 = 0
    assert sign_of_power_sum(F(1), [(F(2), F(4), F(1, 2)), (F(-5), F(1), F(1))]) == 0
    # sqrt(2) + sqrt(3) vs 3.14626437: below about 3.146264369941
    both = [(F(1), F(2), F(1, 2)), (F(1), F(3), F(1, 2))]
    assert sign_of_power_sum(F(-314626436, 100000000), both) == 1
    assert sign_of_power_sum(F(-314626438, 100000000), both) == -1


def test_power_sum_cancels_duplicate_terms():
    # n^e - n^e + 1 must not trigger endless refinement
    terms = [(F(1), F(7), F(99, 100)), (F(-1), F(7), F(99, 100))]
    assert sign_of_power_sum(F(1), terms) == 1
    assert sign_of_power_sum(F(0), terms) == 0
    assert sign_of_power_sum(F(-1, 3), terms) == -1


def test_power_sum_zero_via_symbolic_fallback():
    # sqrt(8) - 2*sqrt(2) = 0, not decidable by intervals alone
    terms = [(F(1), F(8), F(1, 2)), (F(-2), F(2), F(1, 2))]
    assert sign_of_power_sum(F(0), terms) == 0


def test_power_sum_rejects_nonpositive_bases():
    with pytest.raises(ValueError):
        sign_of_power_sum(F(0), [(F(1), F(0), F(1, 2))])


@settings(max_examples=40)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(-8, 8))
def test_power_sum_of_integer_powers_matches_fraction_arithmetic(a, b, c):
    # with integer exponents everything is rational; compare directly
    terms = [(F(1), F(a), F(2)), (F(-1), F(b), F(2))]
    expected = sign(F(c) + F(a) ** 2 - F(b) ** 2)
    assert sign_of_power_sum(F(c), terms) == expected
