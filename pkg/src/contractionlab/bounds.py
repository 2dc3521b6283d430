"""Lower bounds on |A + k*A| and the recursion that dominates them.

The headline bound for a set of n points is (1/8) * k * n * (1 - n**(-1/k^2)).
It is irrational for most inputs, so it is never evaluated; instead
`cmp_union_bound` certifies which side of it a candidate value lies on by
reducing the question to a single certified power comparison:

    m >= B(n,k)  <=>  n**(-1/k^2) >= 1 - 8*m/(k*n)

(both sides decrease together, and the right side going nonpositive settles
the question immediately).

`dp_table` evaluates the two-branch splitting recursion

    T(0) = 0,  T(1) = 1,
    T(n) = min( min_{n1+n2=n, ni<n}          T(n1) + T(n2) + 6n/k,
                min_{n1+n2>=n(1-6/k), ni<n}  T(n1) + T(n2) + n )

exactly: for k = p/q every value is an integer multiple of 1/p, so the table
is computed in scaled integers with suffix minima making it O(max_n^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rationals import as_fraction, cmp_pow, format_rational, sign_of_power_sum

CMP_WORDS = {1: "greater", 0: "equal", -1: "less"}


def cmp_union_bound(value: Fraction, n: int, k: Fraction,
                    method: str = "auto") -> int:
    """Certified sign of value - (1/8)*k*n*(1 - n**(-1/k^2)), for n >= 1."""
    value = as_fraction(value)
    k = as_fraction(k)
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    rest = 1 - 8 * value / (k * n)
    return cmp_pow(Fraction(n), Fraction(-1) / (k * k), rest, method=method)


@dataclass(frozen=True)
class DpTable:
    """Exact recursion values T(0..max_n) with the branch chosen at each n."""

    k: Fraction
    values: tuple[Fraction, ...]
    branches: tuple[str, ...]

    @property
    def max_n(self) -> int:
        return len(self.values) - 1


def dp_table(k: Fraction, max_n: int) -> DpTable:
    """Evaluate the splitting recursion exactly up to max_n.

    Ties between the two branches are tagged "branch1".  Scaled integers:
    with k = p/q, branch one adds 6nq and branch two adds np to a table of
    values p * T(n).
    """
    k = as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    p, q = k.numerator, k.denominator
    scaled = [0, p]
    branches = ["base", "base"]
    for n in range(2, max_n + 1):
        # branch one: parts sum to exactly n
        best1 = min(scaled[n1] + scaled[n - n1] for n1 in range(1, n // 2 + 1))
        best1 += 6 * n * q
        # branch two: parts sum to at least n(1 - 6/k); suffix minima over
        # the table so each n1 needs a single lookup
        suffix = [0] * n + [None]
        running = None
        for i in range(n - 1, -1, -1):
            running = scaled[i] if running is None else min(running, scaled[i])
            suffix[i] = running
        need = n * (p - 6 * q)
        best2 = None
        for n1 in range(n):
            low = -((n1 * p - need) // p)  # ceil((need - n1*p) / p)
            if low < 0:
                low = 0
            elif low > n - 1:
                continue
            cand = scaled[n1] + suffix[low]
            if best2 is None or cand < best2:
                best2 = cand
        best2 += n * p
        if best1 <= best2:
            scaled.append(best1)
            branches.append("branch1")
        else:
            scaled.append(best2)
            branches.append("branch2")
    values = tuple(Fraction(s, p) for s in scaled[:max_n + 1])
    return DpTable(k=k, values=values, branches=tuple(branches[:max_n + 1]))


def dp_bound_violations(table: DpTable) -> tuple[int, ...]:
    """Indices n >= 1 where the recursion value falls below the bound."""
    return tuple(
        n for n in range(1, table.max_n + 1)
        if cmp_union_bound(table.values[n], n, table.k) < 0
    )


def dp_nonmonotone_indices(table: DpTable) -> tuple[int, ...]:
    """Indices n where T(n) < T(n-1); reported, not asserted."""
    return tuple(
        n for n in range(1, table.max_n + 1)
        if table.values[n] < table.values[n - 1]
    )


def dp_table_rows(table: DpTable) -> list[tuple[str, str, str, str]]:
    """Per-n rows (n, value, branch, comparison word) for reports."""
    rows = []
    for n in range(table.max_n + 1):
        if n == 0:
            word = "greater" if table.values[0] > 0 else "equal"
        else:
            word = CMP_WORDS[cmp_union_bound(table.values[n], n, table.k)]
        rows.append((str(n), format_rational(table.values[n]),
                     table.branches[n], word))
    return rows


def induction_inequality_1(k: Fraction) -> bool:
    """Certified check of (1 + 48/k^2)**(k^2) >= 2 for k >= 1."""
    k = as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    return cmp_pow(1 + 48 / k ** 2, k ** 2, Fraction(2)) >= 0


def induction_inequality_2(k: Fraction, n: int, n1: int, n2: int) -> bool:
    """Certified check of 2n/k >= n1**e + n2**e - n**e with e = 1 - 1/k^2.

    Parts of size zero contribute zero (also when k = 1 makes e = 0).
    """
    k = as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    if n < 1 or n1 < 0 or n2 < 0 or n1 + n2 > n:
        raise ValueError("need 0 <= n1, n2 and n1 + n2 <= n with n >= 1")
    e = 1 - 1 / k ** 2
    terms = [(Fraction(1), Fraction(n), e)]
    terms += [(Fraction(-1), Fraction(m), e) for m in (n1, n2) if m > 0]
    return sign_of_power_sum(Fraction(2 * n) / k, terms) >= 0


def threshold_n(k: Fraction, max_bits: int = 128) -> int | None:
    """Smallest integer n with n**(1/k^2) >= 5, i.e. ceil(5**(k^2)).

    Returns None (a "too large" marker, rendered symbolically as 5**(k^2)
    in reports) when the result would exceed max_bits bits; the default
    keeps materialized values to a few dozen digits, so k = 10 already
    reports symbolically.  Raise max_bits to force bigger thresholds.
    """
    k = as_fraction(k)
    if k < 1:
        raise ValueError("contraction factor must be at least 1")
    p, q = k.numerator, k.denominator
    # bits(5**(p^2/q^2)) ~= (p^2/q^2) * log2(5); 2322/1000 over-approximates
    # log2(5) slightly, erring toward refusal near the limit
    if p * p * 2322 > max_bits * q * q * 1000:
        return None
    power = 5 ** (p * p)
    if q == 1:
        return power
    import gmpy2

    root, exact = gmpy2.iroot(power, q * q)
    return int(root) if exact else int(root) + 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def bukh_reference_bound(size: int, k: int) -> Fraction:
    """The classical integer-dilate lower bound (k+1)*size for comparison."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    if size < 1:
        raise ValueError("size must be positive")
    return Fraction((k + 1) * size)


def chs_reference_bound(size: int, k: int,
                        prime_claim: bool = True) -> tuple[Fraction, bool]:
    """Sharper prime-dilate reference (k+1)*size - ceil(k(k+2)/4).

    Returns (value, validity); validity records whether size clears the
    regime size >= 3(k-1)^2 * (k-1)! in which the bound is established.
    The bound is only stated for primes: the caller asserts primality via
    prime_claim and the claim is re-checked by trial division either way.
    """
    if not prime_claim or not isinstance(k, int) or not _is_prime(k):
        raise ValueError("k must be prime")
    if size < 1:
        raise ValueError("size must be positive")
    value = Fraction((k + 1) * size + ((-k * (k + 2)) // 4))
    valid = size >= 3 * (k - 1) ** 2 * math.factorial(k - 1)
    return value, valid
