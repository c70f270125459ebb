"""Exact summation of signed square roots of rationals, for property tests.

A finite sum of terms sign_i * sqrt(q_i) with rational q_i vanishes iff the
rational coefficients cancel within each squarefree-radicand class: write
|q_i| = (a_i/b_i)^2 * d_i with d_i a squarefree integer, then group by d_i.
The radicands produced by angular-momentum coefficients are smooth (their
odd-exponent primes come from small factorials), so trial division suffices.
"""

from __future__ import annotations

import math
from fractions import Fraction

_TRIAL_LIMIT = 100_000


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (a, d) with n = a^2 * d and d squarefree."""
    if n <= 0:
        raise ValueError("n must be positive")
    a, d = 1, 1
    m = n
    p = 2
    while p * p <= m and p <= _TRIAL_LIMIT:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            a *= p ** (k // 2)
            if k % 2:
                d *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            a *= r
        else:
            d *= m
    return a, d


def radical_terms_sum(terms) -> dict:
    """Collapse SqrtRational terms into {squarefree radicand: Fraction coeff}."""
    classes: dict[int, Fraction] = {}
    for term in terms:
        q = term.signed_square
        if q == 0:
            continue
        sign = 1 if q > 0 else -1
        mag = abs(q)
        # sqrt(n/m) = sqrt(n*m)/m
        a, d = squarefree_split(mag.numerator * mag.denominator)
        coeff = Fraction(sign * a, mag.denominator)
        classes[d] = classes.get(d, Fraction(0)) + coeff
    return {d: c for d, c in classes.items() if c != 0}


def radical_sum_equals(terms, expected) -> bool:
    """Exact check that sum(terms) == expected for rational expected."""
    classes = radical_terms_sum(terms)
    expected = Fraction(expected)
    if expected == 0:
        return not classes
    return classes == {1: expected}
