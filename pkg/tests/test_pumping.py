"""Optical pumping steady states against an independent time-evolution oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from atspec import (
    AtomParams,
    DomainError,
    InputError,
    PumpConfig,
    circular_steady_state,
    rabi_from_intensity,
    steady_state_populations,
    sublevel_rabi,
)

PARAMS = AtomParams()


def oracle_rate_matrix(s, delta_mhz, params=PARAMS):
    """Independent rate-matrix construction with hardcoded CG^2 values.

    pi couplings (16 - m^2)/28; decay branchings (3+m')(4+m')/56 down to
    m'-1, (16-m'^2)/28 to m', (3-m')(4-m')/56 up to m'+1.
    """
    delta = 2 * math.pi * delta_mhz
    omega0_sq = params.gamma2**2 * s / 2
    a = np.zeros((14, 14))
    for i, m in enumerate(range(-3, 4)):
        rate = ((16 - m * m) / 28) * omega0_sq * params.gamma2 / 4 / (
            delta**2 + params.gamma2**2 / 4
        )
        g, e = i, 7 + i
        a[g, g] -= rate
        a[e, g] += rate
        a[e, e] -= rate - 0.0
        a[g, e] += rate
        a[e, e] -= params.gamma2
        branches = {
            m - 1: (3 + m) * (4 + m) / 56,
            m: (16 - m * m) / 28,
            m + 1: (3 - m) * (4 - m) / 56,
        }
        for mg, frac in branches.items():
            if abs(mg) <= 3:
                a[3 + mg, e] += params.gamma2 * frac
    return a


def oracle_steady_state(s, delta_mhz, params=PARAMS):
    """Long-time evolution from the unpolarized ground state."""
    a = oracle_rate_matrix(s, delta_mhz, params)
    p0 = np.zeros(14)
    p0[:7] = 1 / 7
    p = expm(a * 3e4) @ p0
    return p / p.sum()


def ground_vector(pops):
    return np.array([pops.ground[m] for m in range(-3, 4)])


def excited_vector(pops):
    return np.array([pops.excited[m] for m in range(-3, 4)])


class TestRabi:
    def test_s_two_gives_gamma2(self):
        assert rabi_from_intensity(2.0, PARAMS) == pytest.approx(PARAMS.gamma2, rel=1e-15)

    def test_s_zero(self):
        assert rabi_from_intensity(0.0, PARAMS) == 0.0

    def test_s_260(self):
        # Omega_0/2pi = 5.98 * sqrt(130) MHz
        omega = rabi_from_intensity(260.0, PARAMS)
        assert omega / (2 * math.pi) == pytest.approx(5.98 * math.sqrt(130), rel=1e-12)

    def test_negative_s_rejected(self):
        with pytest.raises(InputError):
            rabi_from_intensity(-1.0, PARAMS)

    @pytest.mark.parametrize("m, num", [(0, 16), (1, 15), (2, 12), (3, 7)])
    def test_sublevel_table(self, m, num):
        assert sublevel_rabi(m, 1.0) == pytest.approx(math.sqrt(num / 28), rel=1e-15)

    def test_sublevel_symmetry(self):
        assert sublevel_rabi(3, 2.0) == sublevel_rabi(-3, 2.0)

    def test_sublevel_domain(self):
        with pytest.raises(DomainError):
            sublevel_rabi(4, 1.0)


class TestCircularSteadyState:
    def test_no_pump(self):
        pops = circular_steady_state(PumpConfig.make("circular", 0.0), PARAMS)
        assert pops.ground[3] == 1.0
        assert pops.total_excited == 0.0

    def test_resonant_s2(self):
        pops = circular_steady_state(PumpConfig.make("circular", 2.0), PARAMS)
        assert pops.excited[4] == pytest.approx(1 / 3, rel=1e-12)

    def test_saturation_limit(self):
        pops = circular_steady_state(PumpConfig.make("circular", 1e9), PARAMS)
        assert pops.excited[4] == pytest.approx(0.5, rel=1e-6)

    @given(st.floats(0.01, 300), st.floats(-50, 50))
    @settings(max_examples=40, deadline=None)
    def test_matches_two_level_rate_oracle(self, s, delta_mhz):
        # excited fraction R/(2R + gamma2) with R the two-level pump rate
        pump = PumpConfig.make("circular", s, delta_mhz)
        pops = circular_steady_state(pump, PARAMS)
        omega_sq = PARAMS.gamma2**2 * s / 2
        rate = omega_sq * PARAMS.gamma2 / 4 / (pump.delta**2 + PARAMS.gamma2**2 / 4)
        assert pops.excited[4] == pytest.approx(rate / (2 * rate + PARAMS.gamma2), rel=1e-10)
        assert pops.total == pytest.approx(1.0, abs=1e-12)


class TestLinearSteadyState:
    def test_unpumped_is_uniform(self):
        pops = steady_state_populations(PumpConfig.make("linear", 0.0), PARAMS)
        assert ground_vector(pops) == pytest.approx(np.full(7, 1 / 7), abs=1e-15)
        assert pops.total_excited == 0.0

    def test_polarization_guard(self):
        with pytest.raises(InputError):
            steady_state_populations(PumpConfig.make("circular", 1.0), PARAMS)

    @pytest.mark.parametrize("s, delta", [(0.4, 0), (4.4, 0), (36, 0), (260, 0),
                                          (4.5, 30), (110, 30), (290, 30)])
    def test_matches_evolution_oracle(self, s, delta):
        pops = steady_state_populations(PumpConfig.make("linear", s, delta), PARAMS)
        oracle = oracle_steady_state(s, delta)
        got = np.concatenate([ground_vector(pops), excited_vector(pops)])
        assert got == pytest.approx(oracle, abs=1e-9)

    @given(st.floats(1e-3, 300), st.floats(-50, 50))
    @settings(max_examples=30, deadline=None)
    def test_conservation_and_symmetry(self, s, delta_mhz):
        pops = steady_state_populations(PumpConfig.make("linear", s, delta_mhz), PARAMS)
        assert pops.total == pytest.approx(1.0, abs=1e-10)
        g = ground_vector(pops)
        assert g == pytest.approx(g[::-1], abs=1e-10)
        e = excited_vector(pops)
        assert e == pytest.approx(e[::-1], abs=1e-10)
        assert pops.excited[4] == 0.0 and pops.excited[-4] == 0.0

    def test_monotone_polarization(self):
        s_grid = np.linspace(0.0, 300.0, 31)
        rho0_prev, rho3_prev = -1.0, 2.0
        for s in s_grid:
            pops = steady_state_populations(PumpConfig.make("linear", s), PARAMS)
            assert pops.ground[0] >= rho0_prev - 1e-12
            assert pops.ground[3] <= rho3_prev + 1e-12
            rho0_prev, rho3_prev = pops.ground[0], pops.ground[3]

    @pytest.mark.parametrize("s", [0.2, 1.0, 10.0, 100.0, 290.0])
    def test_dominance_ordering(self, s):
        pops = steady_state_populations(PumpConfig.make("linear", s), PARAMS)
        assert pops.ground[0] > pops.ground[1] > pops.ground[2] > pops.ground[3]

    def test_strong_pump_leaves_ground_deficit(self):
        pops = steady_state_populations(PumpConfig.make("linear", 290.0), PARAMS)
        assert pops.total_ground < 1.0
        assert pops.total_excited > 0.4  # near half at saturation

    def test_span_endpoints_frozen(self):
        # frozen from the evolution oracle: weak-pump and saturated limits
        weak = steady_state_populations(PumpConfig.make("linear", 0.4, 30.0), PARAMS)
        assert weak.ground[0] == pytest.approx(0.38042, abs=2e-4)
        assert weak.ground[2] == pytest.approx(0.06085, abs=2e-5)
        saturated = steady_state_populations(PumpConfig.make("linear", 290.0, 0.0), PARAMS)
        assert saturated.ground[0] == pytest.approx(0.20510, abs=2e-4)
        assert saturated.ground[3] == pytest.approx(0.00119, abs=2e-5)
