"""Exact rational scalars and certified comparisons against power expressions.

Every scalar in this package is a `fractions.Fraction`; no floating point
value ever participates in a decision.  The only irrational quantities that
arise are fractional powers such as ``n**(u/v)``, and those are never
materialized: comparisons against rationals are *certified*, either by exact
integer cross-multiplication (when the integers involved stay small) or by
outward-rounded MPFR interval evaluation refined until the sign of the
difference is provable.  Exact perfect-power detection decides the equality
case up front, so refinement always terminates on strict comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import gmpy2

# Cross-multiplied integer comparison is used when the operands stay below
# this many bits; beyond it, powers like base**(p*p) explode and the interval
# path takes over.
EXACT_BITS_BUDGET = 1 << 16

# Interval refinement schedule: start precision, stall point at which a
# rational-valued power falls back to exact big-integer comparison, and a
# hard cap that only a bug can reach (strict comparisons have a nonzero
# margin once equality has been excluded).
_START_PREC = 128
_STALL_PREC = 1 << 13
_MAX_PREC = 1 << 20


def as_fraction(value) -> Fraction:
    """Coerce an int, string ("p/q" or terminating decimal) or Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("refusing float input; pass a string or Fraction")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a terminating decimal string, exactly."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    """Decimal string when the denominator is 1, else "p/q" in lowest terms."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(q) -> int:
    return (q > 0) - (q < 0)


def _nth_root_exact(a: int, v: int) -> int | None:
    """The integer v-th root of a >= 1, or None when a is not a perfect power."""
    root, exact = gmpy2.iroot(a, v)
    return int(root) if exact else None


def _pow_enclosure(base: Fraction, exponent: Fraction, prec: int):
    """Outward-rounded enclosure of base**exponent, or None on overflow.

    Computed as exp(exponent * log(base)) with every operation performed
    once rounding down and once rounding up, so the returned pair of exact
    rationals is a true enclosure.
    """
    bq = gmpy2.mpq(base.numerator, base.denominator)
    eq = gmpy2.mpq(exponent.numerator, exponent.denominator)
    down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    with down:
        log_lo = gmpy2.log(gmpy2.mpfr(bq))
    with up:
        log_hi = gmpy2.log(gmpy2.mpfr(bq))
    with down:
        x_lo = min(eq * log_lo, eq * log_hi)
    with up:
        x_hi = max(eq * log_lo, eq * log_hi)
    with down:
        v_lo = gmpy2.exp(x_lo)
    with up:
        v_hi = gmpy2.exp(x_hi)
    if not (gmpy2.is_finite(v_lo) and gmpy2.is_finite(v_hi)):
        return None
    return Fraction(*v_lo.as_integer_ratio()), Fraction(*v_hi.as_integer_ratio())


def cmp_pow(base: Fraction, exponent: Fraction, target: Fraction,
            method: str = "auto") -> int:
    """Certified sign of base**exponent - target, for base > 0.

    method:
      "auto"      exact integer comparison when cheap, else interval refinement
      "exact"     force cross-multiplied integer powers (may be large)
      "interval"  force interval refinement (rational-valued powers still
                  resolve exactly, since intervals cannot certify equality)
    """
    base = as_fraction(base)
    exponent = as_fraction(exponent)
    target = as_fraction(target)
    if base <= 0:
        raise ValueError("base must be positive")
    if method not in ("auto", "exact", "interval"):
        raise ValueError(f"unknown method {method!r}")
    if target <= 0:
        return 1
    if base == 1 or exponent == 0:
        return sign(Fraction(1) - target)

    u = abs(exponent.numerator)
    v = exponent.denominator
    # base**exponent == (a/b)**(u/v) once a negative exponent flips the base.
    a, b = (base.numerator, base.denominator)
    if exponent < 0:
        a, b = b, a
    c, d = target.numerator, target.denominator

    if method != "interval":
        est = u * max(a.bit_length(), b.bit_length()) \
            + v * max(c.bit_length(), d.bit_length())
        if method == "exact" or est <= EXACT_BITS_BUDGET:
            # (a/b)**(u/v) vs c/d  <=>  a**u * d**v vs b**u * c**v
            return sign(a ** u * d ** v - b ** u * c ** v)

    if v > 1:
        ra = _nth_root_exact(a, v)
        rb = _nth_root_exact(b, v) if ra is not None else None
        if ra is not None and rb is not None:
            return sign(Fraction(ra, rb) ** u - target)
        # Not a perfect v-th power: the value is irrational, the comparison
        # strict, and interval refinement terminates.

    prec = _START_PREC
    while prec <= _MAX_PREC:
        enc = _pow_enclosure(Fraction(a, b), Fraction(u, v), prec)
        if enc is not None:
            lo, hi = enc
            if lo > target:
                return 1
            if hi < target:
                return -1
        if v == 1 and prec >= _STALL_PREC:
            # Rational value, equality plausible: settle it exactly.
            return sign(a ** u * d - b ** u * c)
        prec *= 2
    raise RuntimeError("certified comparison did not converge")


def sign_of_power_sum(constant: Fraction,
                      terms: Sequence[tuple[Fraction, Fraction, Fraction]],
                      max_prec: int = _MAX_PREC) -> int:
    """Certified sign of constant + sum(coeff * base**exponent).

    Each term is (coeff, base, exponent) with base > 0.  Terms whose power is
    exactly rational (integer exponents, unit bases, perfect-power bases) are
    folded into the constant; the rest are enclosed by outward-rounded
    intervals refined until the sign separates.  If refinement stalls, the sum
    is almost certainly exactly zero and a symbolic zero test confirms it.
    """
    total = as_fraction(constant)
    folded: dict[tuple[Fraction, Fraction], Fraction] = {}
    for coeff, base, exponent in terms:
        coeff = as_fraction(coeff)
        base = as_fraction(base)
        exponent = as_fraction(exponent)
        if coeff == 0:
            continue
        if base <= 0:
            raise ValueError("term bases must be positive")
        key = (base, exponent)
        folded[key] = folded.get(key, Fraction(0)) + coeff

    pending: list[tuple[Fraction, Fraction, Fraction]] = []
    for (base, exponent), coeff in folded.items():
        if coeff == 0:
            continue
        if base == 1 or exponent == 0:
            total += coeff
            continue
        u = abs(exponent.numerator)
        v = exponent.denominator
        a, b = (base.numerator, base.denominator)
        if exponent < 0:
            a, b = b, a
        if v == 1:
            if u * max(a.bit_length(), b.bit_length()) > EXACT_BITS_BUDGET:
                pending.append((coeff, Fraction(a, b), Fraction(u)))
            else:
                total += coeff * Fraction(a ** u, b ** u)
            continue
        ra = _nth_root_exact(a, v)
        rb = _nth_root_exact(b, v) if ra is not None else None
        if ra is not None and rb is not None:
            total += coeff * Fraction(ra, rb) ** u
        else:
            pending.append((coeff, Fraction(a, b), Fraction(u, v)))

    if not pending:
        return sign(total)

    def symbolic_is_zero() -> bool:
        import sympy

        expr = sympy.Rational(total.numerator, total.denominator)
        for coeff, pbase, pexp in pending:
            expr += sympy.Rational(coeff.numerator, coeff.denominator) * \
                sympy.Rational(pbase.numerator, pbase.denominator) ** \
                sympy.Rational(pexp.numerator, pexp.denominator)
        return bool(expr.equals(0))

    prec = _START_PREC
    tried_symbolic = False
    while prec <= max_prec:
        lo_sum = total
        hi_sum = total
        complete = True
        for coeff, pbase, pexp in pending:
            enc = _pow_enclosure(pbase, pexp, prec)
            if enc is None:
                complete = False
                break
            lo, hi = enc
            if coeff > 0:
                lo_sum += coeff * lo
                hi_sum += coeff * hi
            else:
                lo_sum += coeff * hi
                hi_sum += coeff * lo
        if complete:
            if lo_sum > 0:
                return 1
            if hi_sum < 0:
                return -1
            # a stall this deep usually means the sum is exactly zero;
            # settle that symbolically instead of refining to the cap
            if prec >= _STALL_PREC and not tried_symbolic:
                tried_symbolic = True
                if symbolic_is_zero():
                    return 0
        prec *= 2

    if not tried_symbolic and symbolic_is_zero():
        return 0
    raise RuntimeError("certified sum comparison did not converge")
