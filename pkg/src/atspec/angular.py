"""Exact angular-momentum algebra.

Clebsch-Gordan coefficients (Condon-Shortley convention, built on Wigner 3-J),
Wigner 6-J symbols via the Racah closed-form sum, and the line-strength weight
functions for circular and linear pump coupling of the
5P_{3/2}(F'=4) -> 44D_{3/2,5/2} probe transition.

All coefficients are computed in exact integer-rational arithmetic and
returned as :class:`SqrtRational` (signed square roots of rationals), so
quantities like the 16.5 circular weight ratio come out exact rather than
approximate.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, InputError
from .halfint import HalfInt, SqrtRational, as_half_int

#: Largest supported quantum number. Factorials are precomputed at import up
#: to the largest argument any 3-J/6-J with j <= J_MAX can request, so the
#: table is read-only afterwards and safe for concurrent use.
J_MAX = HalfInt(20)

_FACTORIALS: list[int] = [1]
for _n in range(1, 4 * J_MAX.twice // 2 + 3):
    _FACTORIALS.append(_FACTORIALS[-1] * _n)


def _fact(n: int) -> int:
    if n < 0:
        raise InputError(f"factorial of negative value {n}")
    return _FACTORIALS[n]


def _check_magnitude(j: HalfInt, name: str) -> None:
    if j.twice < 0:
        raise InputError(f"{name} must be nonnegative, got {j!r}")
    if j > J_MAX:
        raise DomainError(f"{name}={j!r} exceeds supported range j <= {J_MAX!r}")


def _check_projection(j: HalfInt, m: HalfInt, jname: str) -> None:
    if (j.twice - m.twice) % 2 != 0:
        raise InputError(
            f"projection parity mismatch: 2m={m.twice} with 2{jname}={j.twice}"
        )


def _triangle_ok(a: HalfInt, b: HalfInt, c: HalfInt) -> bool:
    if (a.twice + b.twice + c.twice) % 2 != 0:
        return False
    return abs(a.twice - b.twice) <= c.twice <= a.twice + b.twice


def _delta_square(a: HalfInt, b: HalfInt, c: HalfInt) -> Fraction:
    """Triangle coefficient (a+b-c)!(a-b+c)!(-a+b+c)! / (a+b+c+1)!."""
    return Fraction(
        _fact((a.twice + b.twice - c.twice) // 2)
        * _fact((a.twice - b.twice + c.twice) // 2)
        * _fact((-a.twice + b.twice + c.twice) // 2),
        _fact((a.twice + b.twice + c.twice) // 2 + 1),
    )


def three_j(j1, j2, j3, m1, m2, m3) -> SqrtRational:
    """Wigner 3-J symbol (j1 j2 j3; m1 m2 m3) via the Racah sum, exact.

    Returns an exact zero for any selection-rule violation (m1+m2+m3 != 0,
    triangle failure, |m| > j). Projection parity mismatches raise InputError.
    """
    j1, j2, j3 = as_half_int(j1), as_half_int(j2), as_half_int(j3)
    m1, m2, m3 = as_half_int(m1), as_half_int(m2), as_half_int(m3)
    for j, m, name in ((j1, m1, "j1"), (j2, m2, "j2"), (j3, m3, "j3")):
        _check_magnitude(j, name)
        _check_projection(j, m, name)
    if m1.twice + m2.twice + m3.twice != 0:
        return SqrtRational.ZERO
    if not _triangle_ok(j1, j2, j3):
        return SqrtRational.ZERO
    if abs(m1.twice) > j1.twice or abs(m2.twice) > j2.twice or abs(m3.twice) > j3.twice:
        return SqrtRational.ZERO

    # All of these are integers once the selection rules above hold.
    t1 = (j2.twice - m1.twice - j3.twice) // 2
    t2 = (j1.twice + m2.twice - j3.twice) // 2
    t3 = (j1.twice + j2.twice - j3.twice) // 2
    t4 = (j1.twice - m1.twice) // 2
    t5 = (j2.twice + m2.twice) // 2
    tmin = max(0, t1, t2)
    tmax = min(t3, t4, t5)
    if tmin > tmax:
        return SqrtRational.ZERO

    total = Fraction(0)
    for t in range(tmin, tmax + 1):
        total += Fraction(
            (-1) ** t,
            _fact(t) * _fact(t - t1) * _fact(t - t2)
            * _fact(t3 - t) * _fact(t4 - t) * _fact(t5 - t),
        )
    if total == 0:
        return SqrtRational.ZERO

    radicand = _delta_square(j1, j2, j3)
    radicand *= (
        _fact((j1.twice + m1.twice) // 2) * _fact((j1.twice - m1.twice) // 2)
        * _fact((j2.twice + m2.twice) // 2) * _fact((j2.twice - m2.twice) // 2)
        * _fact((j3.twice + m3.twice) // 2) * _fact((j3.twice - m3.twice) // 2)
    )
    phase = -1 if ((j1.twice - j2.twice - m3.twice) // 2) % 2 else 1
    return (SqrtRational.ONE.scaled_by_sqrt(radicand) * total) * phase


def clebsch_gordan(j1, m1, j2, m2, J, M) -> SqrtRational:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>, exact.

    Condon-Shortley phase convention, via the 3-J relation
    <j1 m1; j2 m2|J M> = (-1)^(j1-j2+M) sqrt(2J+1) (j1 j2 J; m1 m2 -M).
    Exact zero when M != m1+m2 or the triangle rule fails.
    """
    j1, j2, J = as_half_int(j1), as_half_int(j2), as_half_int(J)
    m1, m2, M = as_half_int(m1), as_half_int(m2), as_half_int(M)
    tj = three_j(j1, j2, J, m1, m2, -M)
    if not tj:
        return SqrtRational.ZERO
    phase = -1 if ((j1.twice - j2.twice + M.twice) // 2) % 2 else 1
    return tj.scaled_by_sqrt(J.twice + 1) * phase


def six_j(j1, j2, j3, j4, j5, j6) -> SqrtRational:
    """Wigner 6-J symbol {j1 j2 j3; j4 j5 j6} via the Racah formula, exact.

    Exact zero when any of the four triads (j1 j2 j3), (j1 j5 j6),
    (j4 j2 j6), (j4 j5 j3) violates the triangle rule.
    """
    js = [as_half_int(j) for j in (j1, j2, j3, j4, j5, j6)]
    for i, j in enumerate(js, start=1):
        _check_magnitude(j, f"j{i}")
    j1, j2, j3, j4, j5, j6 = js
    triads = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    for triad in triads:
        if not _triangle_ok(*triad):
            return SqrtRational.ZERO

    t_lo = [(a.twice + b.twice + c.twice) // 2 for a, b, c in triads]
    q_hi = [
        (j1.twice + j2.twice + j4.twice + j5.twice) // 2,
        (j2.twice + j3.twice + j5.twice + j6.twice) // 2,
        (j3.twice + j1.twice + j6.twice + j4.twice) // 2,
    ]
    total = Fraction(0)
    for t in range(max(t_lo), min(q_hi) + 1):
        num = (-1) ** t * _fact(t + 1)
        den = 1
        for lo in t_lo:
            den *= _fact(t - lo)
        for hi in q_hi:
            den *= _fact(hi - t)
        total += Fraction(num, den)
    if total == 0:
        return SqrtRational.ZERO

    radicand = Fraction(1)
    for triad in triads:
        radicand *= _delta_square(*triad)
    return SqrtRational.ONE.scaled_by_sqrt(radicand) * total


# Quantum numbers of the probe branch: the intermediate 5P_{3/2}(F'=4) level
# couples to the 44D fine-structure doublet; the F sum runs over the hyperfine
# levels allowed by both the photon coupling (triangle with F'=4 and 1) and
# the 6-J recoupling (triangle with J and 5/2).
_F_PRIME = HalfInt(4)
_J_ALLOWED = (HalfInt(Fraction(3, 2)), HalfInt(Fraction(5, 2)))


def _check_fine_structure_j(J: HalfInt) -> None:
    if J not in _J_ALLOWED:
        raise DomainError(f"J must be 3/2 or 5/2, got {J!r}")


def _f_sum_range(J: HalfInt):
    f_lo = max(_F_PRIME.twice - 2, abs(J.twice - 5))
    f_hi = min(_F_PRIME.twice + 2, J.twice + 5)
    return [HalfInt.from_twice(t) for t in range(f_lo, f_hi + 1, 2)]


def _weight_prefactor(J: HalfInt) -> Fraction:
    half = Fraction(1, 2)
    sj = six_j(2, 1, 1, Fraction(3, 2), half, J)
    return 18 * sj.square * (J.twice + 1)


def weight_circular_exact(J) -> Fraction:
    """Exact line-strength weight of fine-structure component J for a
    sigma+ pump, with the atom pumped into the stretched F=3, m_F=3 state."""
    J = as_half_int(J)
    _check_fine_structure_j(J)
    total = Fraction(0)
    for F in _f_sum_range(J):
        cg_minus = clebsch_gordan(4, 4, 1, -1, F, 3).square
        cg_plus = clebsch_gordan(4, 4, 1, 1, F, 5).square
        sj = six_j(J, 1, Fraction(3, 2), 4, Fraction(5, 2), F).square
        total += (cg_minus + cg_plus) * sj
    return _weight_prefactor(J) * total


def weight_circular(J) -> float:
    """Float version of :func:`weight_circular_exact`."""
    return float(weight_circular_exact(J))


def weight_linear_exact(J, m) -> Fraction:
    """Exact line-strength weight of fine-structure component J for a
    pi-polarized probe out of excited sublevel m' = m (linear pump).

    Symmetric under m -> -m since only a pi (q=0) coupling enters.
    """
    J = as_half_int(J)
    m = as_half_int(m)
    _check_fine_structure_j(J)
    if not m.is_integer or abs(m.twice) > 6:
        raise DomainError(f"m must be an integer with |m| <= 3, got {m!r}")
    total = Fraction(0)
    for F in _f_sum_range(J):
        cg = clebsch_gordan(4, m, 1, 0, F, m).square
        sj = six_j(J, 1, Fraction(3, 2), 4, Fraction(5, 2), F).square
        total += cg * sj
    return _weight_prefactor(J) * total


def weight_linear(J, m) -> float:
    """Float version of :func:`weight_linear_exact`."""
    return float(weight_linear_exact(J, m))
