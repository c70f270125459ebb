"""Exact Wigner algebra: frozen oracle values and algebraic properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atspec import (
    DomainError,
    HalfInt,
    InputError,
    SqrtRational,
    clebsch_gordan,
    six_j,
    three_j,
    weight_circular,
    weight_circular_exact,
    weight_linear,
    weight_linear_exact,
)
from exactcheck import radical_sum_equals

# Spot values computed beforehand with an independent implementation
# (sympy.physics.wigner); keys are twice the quantum numbers, values the
# signed squares of the coefficients.
CG_ORACLE = {
    (6, 6, 2, 2, 8, 8): Fraction(1, 1),
    (6, 0, 2, 0, 8, 0): Fraction(4, 7),
    (6, 6, 2, 0, 8, 6): Fraction(1, 4),
    (6, 2, 2, 0, 8, 2): Fraction(15, 28),
    (6, 4, 2, 0, 8, 4): Fraction(3, 7),
    (4, 2, 2, 2, 8, 4): Fraction(0, 1),
    (2, 2, 2, -2, 2, 0): Fraction(1, 2),
    (2, 0, 2, 0, 2, 0): Fraction(0, 1),
    (2, 2, 2, 0, 2, 2): Fraction(1, 2),
    (1, 1, 1, -1, 2, 0): Fraction(1, 2),
    (1, 1, 1, -1, 0, 0): Fraction(1, 2),
    (3, 1, 2, 0, 5, 1): Fraction(3, 5),
    (4, 0, 4, 0, 4, 0): Fraction(-2, 7),
    (8, 8, 2, -2, 6, 6): Fraction(7, 9),
    (8, 8, 2, -2, 8, 6): Fraction(1, 5),
    (8, 8, 2, -2, 10, 6): Fraction(1, 45),
    (8, 8, 2, 2, 10, 10): Fraction(1, 1),
    (6, -4, 2, 2, 8, -2): Fraction(3, 28),
    (6, 4, 2, -2, 8, 2): Fraction(3, 28),
}

SIX_J_ORACLE = {
    (4, 2, 2, 3, 1, 5): Fraction(-1, 20),
    (4, 2, 2, 3, 1, 3): Fraction(1, 120),
    (2, 2, 2, 2, 2, 2): Fraction(1, 36),
    (5, 2, 3, 8, 5, 6): Fraction(1, 1512),
    (5, 2, 3, 8, 5, 8): Fraction(-1, 216),
    (5, 2, 3, 8, 5, 10): Fraction(1, 54),
    (3, 2, 3, 8, 5, 6): Fraction(1, 112),
    (3, 2, 3, 8, 5, 8): Fraction(-1, 48),
    (4, 4, 4, 4, 4, 4): Fraction(-9, 4900),
    (1, 1, 2, 1, 1, 2): Fraction(1, 36),
    (2, 4, 6, 8, 10, 12): Fraction(2, 6435),
    (6, 6, 6, 6, 6, 6): Fraction(-1, 196),
}

# Exact weights, same oracle.
WC_ORACLE = {Fraction(3, 2): Fraction(1, 150), Fraction(5, 2): Fraction(11, 100)}
WL_ORACLE = {
    (Fraction(3, 2), 0): Fraction(1, 420),
    (Fraction(3, 2), 1): Fraction(1, 350),
    (Fraction(3, 2), 2): Fraction(3, 700),
    (Fraction(3, 2), 3): Fraction(1, 150),
    (Fraction(5, 2), 0): Fraction(2, 35),
    (Fraction(5, 2), 1): Fraction(157, 2800),
    (Fraction(5, 2), 2): Fraction(37, 700),
    (Fraction(5, 2), 3): Fraction(19, 400),
}


def half(t):
    return HalfInt.from_twice(t)


class TestHalfInt:
    def test_construction(self):
        assert HalfInt(3).twice == 6
        assert HalfInt(1.5).twice == 3
        assert HalfInt(Fraction(5, 2)).twice == 5
        assert HalfInt(HalfInt(2)) == HalfInt(2)

    def test_rejects_non_half_integers(self):
        with pytest.raises(InputError):
            HalfInt(0.3)
        with pytest.raises(InputError):
            HalfInt(Fraction(1, 3))
        with pytest.raises(InputError):
            HalfInt("2")

    def test_arithmetic_and_order(self):
        assert HalfInt(1.5) + HalfInt(0.5) == HalfInt(2)
        assert HalfInt(2) - 3 == HalfInt(-1)
        assert -HalfInt(1.5) == HalfInt(-1.5)
        assert abs(HalfInt(-2)) == HalfInt(2)
        assert HalfInt(0.5) < HalfInt(1)
        assert float(HalfInt(2.5)) == 2.5
        assert HalfInt(2).is_integer and not HalfInt(2.5).is_integer

    def test_immutable(self):
        j = HalfInt(1)
        with pytest.raises(AttributeError):
            j.twice = 4


class TestSqrtRational:
    def test_float_and_sign(self):
        x = SqrtRational(Fraction(-9, 4))
        assert float(x) == -1.5
        assert x.sign == -1
        assert x.square == Fraction(9, 4)

    def test_product(self):
        a = SqrtRational(Fraction(1, 2))
        b = SqrtRational(Fraction(-2, 9))
        assert (a * b).signed_square == Fraction(-1, 9)
        assert (a * 3).signed_square == Fraction(9, 2)
        assert (a * Fraction(-1, 2)).signed_square == Fraction(-1, 8)

    def test_square_matches_float_square(self):
        # the exactness carrier must agree with float evaluation
        for q in (Fraction(7, 13), Fraction(-16, 28), Fraction(157, 2800)):
            x = SqrtRational(q)
            assert float(x) ** 2 == pytest.approx(float(x.square), rel=1e-12)


class TestClebschGordan:
    @pytest.mark.parametrize("key, expected", sorted(CG_ORACLE.items()))
    def test_oracle_values(self, key, expected):
        tj1, tm1, tj2, tm2, tj, tm = key
        cg = clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm2), half(tj), half(tm))
        assert cg.signed_square == expected

    def test_projection_sum_rule(self):
        assert clebsch_gordan(3, 1, 1, 0, 4, 2) == SqrtRational.ZERO

    def test_triangle_violation(self):
        assert clebsch_gordan(2, 1, 1, 1, 4, 2) == SqrtRational.ZERO

    def test_parity_mismatch_raises(self):
        with pytest.raises(InputError):
            clebsch_gordan(3, 0.5, 1, 0, 4, 0.5)

    def test_out_of_range_projection_is_zero(self):
        assert clebsch_gordan(1, 2, 1, -2, 2, 0) == SqrtRational.ZERO

    def test_j_max_guard(self):
        with pytest.raises(DomainError):
            clebsch_gordan(21, 0, 1, 0, 21, 0)

    @pytest.mark.parametrize("m", range(0, 4))
    def test_pi_coupling_law(self, m):
        # <3,m;1,0|4,m>^2 = (16 - m^2)/28
        cg = clebsch_gordan(3, m, 1, 0, 4, m)
        assert cg.signed_square == Fraction(16 - m * m, 28)
        minus = clebsch_gordan(3, -m, 1, 0, 4, -m)
        assert minus.square == cg.square


class TestThreeJ:
    def test_relation_to_cg(self):
        # <j1 m1; j2 m2|J M> = (-1)^(j1-j2+M) sqrt(2J+1) (j1 j2 J; m1 m2 -M)
        tj = three_j(3, 1, 4, 2, 0, -2)
        cg = clebsch_gordan(3, 2, 1, 0, 4, 2)
        assert cg.signed_square == 9 * tj.signed_square  # phase even, 2J+1 = 9

    def test_nonzero_m_sum_is_zero(self):
        assert three_j(1, 1, 1, 1, 1, 1) == SqrtRational.ZERO


class TestSixJ:
    @pytest.mark.parametrize("key, expected", sorted(SIX_J_ORACLE.items()))
    def test_oracle_values(self, key, expected):
        sj = six_j(*(half(t) for t in key))
        assert sj.signed_square == expected

    @pytest.mark.parametrize("tj", range(0, 13))
    def test_zero_argument_closed_form(self, tj):
        # {0 j j; 0 j j} = (-1)^(2j) / (2j+1)
        j = half(tj)
        sj = six_j(0, j, j, 0, j, j)
        expected = Fraction((-1) ** tj, (tj + 1) ** 2)
        assert sj.signed_square == expected

    def test_triad_violation_is_zero(self):
        assert six_j(1, 1, 3, 1, 1, 1) == SqrtRational.ZERO


def _projections(tj):
    return list(range(-tj, tj + 1, 2))


@st.composite
def coupled_pair(draw, tj_max=12):
    tj1 = draw(st.integers(0, tj_max))
    tj2 = draw(st.integers(0, tj_max))
    return tj1, tj2


class TestCGProperties:
    @given(coupled_pair(), st.data())
    @settings(max_examples=60, deadline=None)
    def test_orthogonality_in_m(self, pair, data):
        # fixed j1, j2, M: sum_J <m1 m2|J M><m1' m2'|J M> = delta_{m1 m1'}
        tj1, tj2 = pair
        m1 = data.draw(st.sampled_from(_projections(tj1)), label="2m1")
        m1p = data.draw(st.sampled_from(_projections(tj1)), label="2m1'")
        tm_lo = max(-tj1 - tj2, min(m1, m1p) - tj2)
        tm_hi = min(tj1 + tj2, max(m1, m1p) + tj2)
        parity = (tj1 + tj2) % 2
        choices = [t for t in range(tm_lo, tm_hi + 1) if t % 2 == parity]
        if not choices:
            return
        tm = data.draw(st.sampled_from(choices), label="2M")
        m2, m2p = tm - m1, tm - m1p
        if abs(m2) > tj2 or abs(m2p) > tj2:
            return
        terms = []
        for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
            a = clebsch_gordan(half(tj1), half(m1), half(tj2), half(m2), half(tj), half(tm))
            b = clebsch_gordan(half(tj1), half(m1p), half(tj2), half(m2p), half(tj), half(tm))
            terms.append(a * b)
        assert radical_sum_equals(terms, 1 if m1 == m1p else 0)

    @given(coupled_pair(), st.data())
    @settings(max_examples=60, deadline=None)
    def test_completeness(self, pair, data):
        # fixed (J, M): sum_{m1} <j1 m1; j2 M-m1|J M>^2 = 1
        tj1, tj2 = pair
        tj = data.draw(
            st.sampled_from(list(range(abs(tj1 - tj2), tj1 + tj2 + 1, 2))), label="2J"
        )
        tm = data.draw(st.sampled_from(_projections(tj)), label="2M")
        total = Fraction(0)
        for m1 in _projections(tj1):
            m2 = tm - m1
            if abs(m2) > tj2:
                continue
            total += clebsch_gordan(
                half(tj1), half(m1), half(tj2), half(m2), half(tj), half(tm)
            ).square
        assert total == 1


@st.composite
def six_j_frame(draw, tj_max=12):
    """(j1 j2 j4 j5) plus two valid j6 values sharing the triads."""
    tj1 = draw(st.integers(0, tj_max))
    tj2 = draw(st.integers(0, tj_max))
    tj4 = draw(st.integers(0, tj_max))
    # j5 must have the parity that lets (j4 j5 j3) close with (j1 j2 j3)
    lo, hi = abs(tj1 - tj2), tj1 + tj2
    tj5_choices = [t for t in range(0, tj_max + 1) if (t + tj4) % 2 == (tj1 + tj2) % 2]
    tj5 = draw(st.sampled_from(tj5_choices))
    j6_range = [
        t for t in range(max(abs(tj1 - tj5), abs(tj4 - tj2)), min(tj1 + tj5, tj4 + tj2) + 1, 2)
    ]
    if not j6_range:
        return None
    tj6 = draw(st.sampled_from(j6_range))
    tj6p = draw(st.sampled_from(j6_range))
    return tj1, tj2, tj4, tj5, tj6, tj6p


class TestSixJProperties:
    @given(six_j_frame())
    @settings(max_examples=60, deadline=None)
    def test_orthogonality(self, frame):
        # sum_{j3} (2j3+1)(2j6+1) {j1 j2 j3; j4 j5 j6}{j1 j2 j3; j4 j5 j6'}
        #   = delta_{j6 j6'}
        if frame is None:
            return
        tj1, tj2, tj4, tj5, tj6, tj6p = frame
        terms = []
        lo = max(abs(tj1 - tj2), abs(tj4 - tj5))
        hi = min(tj1 + tj2, tj4 + tj5)
        for tj3 in range(lo, hi + 1, 2):
            a = six_j(half(tj1), half(tj2), half(tj3), half(tj4), half(tj5), half(tj6))
            b = six_j(half(tj1), half(tj2), half(tj3), half(tj4), half(tj5), half(tj6p))
            terms.append((a * b) * ((tj3 + 1) * (tj6 + 1)))
        assert radical_sum_equals(terms, 1 if tj6 == tj6p else 0)


class TestWeights:
    @pytest.mark.parametrize("j, expected", sorted(WC_ORACLE.items()))
    def test_circular_oracle(self, j, expected):
        assert weight_circular_exact(HalfInt(j)) == expected

    def test_circular_ratio_exact(self):
        ratio = weight_circular_exact(2.5) / weight_circular_exact(1.5)
        assert ratio == Fraction(33, 2)
        assert weight_circular(2.5) / weight_circular(1.5) == pytest.approx(16.5, rel=1e-12)

    def test_circular_positive(self):
        assert weight_circular(2.5) > 0
        assert weight_circular(1.5) > 0

    @pytest.mark.parametrize("key, expected", sorted(WL_ORACLE.items()))
    def test_linear_oracle(self, key, expected):
        j, m = key
        assert weight_linear_exact(HalfInt(j), m) == expected

    @pytest.mark.parametrize("j", [1.5, 2.5])
    @pytest.mark.parametrize("m", range(-3, 4))
    def test_linear_symmetry(self, j, m):
        assert weight_linear_exact(j, m) == weight_linear_exact(j, -m)

    @pytest.mark.parametrize("m", range(0, 4))
    def test_d52_dominates(self, m):
        assert weight_linear(2.5, m) > weight_linear(1.5, m)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            weight_circular(0.5)
        with pytest.raises(DomainError):
            weight_linear(2.5, 4)
        with pytest.raises(DomainError):
            weight_linear(2.5, 0.5)
