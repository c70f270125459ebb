"""Steady-state Zeeman sublevel populations under the strong pump.

A pi-polarized pump on F=3 -> F'=4 couples each ground sublevel m to exactly
one excited sublevel m' = m, and spontaneous decay redistributes population
with CG^2 branching ratios. Because the pump Hamiltonian is diagonal in m and
repopulation feeds only populations, the optical coherences can be eliminated
exactly in steady state, leaving sublevel rate equations whose stationary
point is the null space of a 14x14 rate matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import angular
from .errors import DomainError, InputError, NumericalError
from .halfint import as_half_int
from .params import AtomParams, Polarization, PumpConfig

_GROUND_MS = tuple(range(-3, 4))
_EXCITED_MS = tuple(range(-4, 5))


@dataclass(frozen=True)
class SublevelPopulations:
    """Steady-state populations: ground m in -3..3, excited m' in -4..4.

    The excited m' = +-4 entries are nonzero only for circular pumping
    (stretched-state cycling); a pi pump cannot reach them.
    """

    ground: dict
    excited: dict

    def __post_init__(self):
        if tuple(sorted(self.ground)) != _GROUND_MS:
            raise InputError("ground populations must cover m = -3..3")
        if tuple(sorted(self.excited)) != _EXCITED_MS:
            raise InputError("excited populations must cover m' = -4..4")
        for pops in (self.ground, self.excited):
            for m, p in pops.items():
                if not (-1e-12 <= p <= 1 + 1e-12):
                    raise InputError(f"population out of [0, 1] at m={m}: {p}")
        total = self.total
        if abs(total - 1.0) > 1e-10:
            raise InputError(f"populations must sum to 1, got {total!r}")

    @property
    def total(self) -> float:
        return math.fsum(self.ground.values()) + math.fsum(self.excited.values())

    @property
    def total_ground(self) -> float:
        return math.fsum(self.ground.values())

    @property
    def total_excited(self) -> float:
        return math.fsum(self.excited.values())

    def ground_array(self) -> np.ndarray:
        return np.array([self.ground[m] for m in _GROUND_MS])


def rabi_from_intensity(s: float, params: AtomParams) -> float:
    """Stretched-transition Rabi frequency Omega_0 = gamma2 sqrt(s/2), rad/us."""
    if s < 0:
        raise InputError(f"pump.s: must be >= 0, got {s}")
    return params.gamma2 * math.sqrt(s / 2.0)


def sublevel_rabi(m, omega0: float) -> float:
    """Rabi frequency of the pi-coupled pair (F=3, m) <-> (F'=4, m).

    Equals <3,m;1,0|4,m> * Omega_0 = sqrt((16 - m^2)/28) * Omega_0.
    """
    m = as_half_int(m)
    if not m.is_integer or abs(m.twice) > 6:
        raise DomainError(f"m must be an integer with |m| <= 3, got {m!r}")
    cg = angular.clebsch_gordan(3, m, 1, 0, 4, m)
    return float(cg) * omega0


def _branching(m_excited: int, m_ground: int) -> float:
    """CG^2 branching ratio for decay (F'=4, m') -> (F=3, m)."""
    q = m_excited - m_ground
    if abs(q) > 1 or abs(m_ground) > 3:
        return 0.0
    return float(angular.clebsch_gordan(3, m_ground, 1, q, 4, m_excited).square)


def _pump_rate(s: float, delta: float, m: int, params: AtomParams) -> float:
    """Incoherent pump rate of the pair (g, m) <-> (e, m).

    Chosen so the closed pair reproduces the exact two-level steady state
    rho_ee = (Omega^2/4) / (delta^2 + gamma2^2/4 + Omega^2/2).
    """
    omega_m = sublevel_rabi(m, rabi_from_intensity(s, params))
    return (omega_m**2 * params.gamma2 / 4.0) / (delta**2 + params.gamma2**2 / 4.0)


def _rate_matrix(pump: PumpConfig, params: AtomParams) -> np.ndarray:
    """dP/dt = A P over [ground(-3..3), excited(-3..3)]; m' = +-4 stay empty."""
    a = np.zeros((14, 14))
    for i, m in enumerate(_GROUND_MS):
        g, e = i, 7 + i
        rate = _pump_rate(pump.s, pump.delta, m, params)
        a[g, g] -= rate
        a[e, g] += rate
        a[e, e] -= rate
        a[g, e] += rate
        a[e, e] -= params.gamma2
        for mg in (m - 1, m, m + 1):
            if abs(mg) <= 3:
                a[3 + mg, e] += params.gamma2 * _branching(m, mg)
    return a


def _populations_from_vectors(ground_vec, excited_vec) -> SublevelPopulations:
    ground = {m: float(max(p, 0.0)) for m, p in zip(_GROUND_MS, ground_vec)}
    excited = {m: 0.0 for m in _EXCITED_MS}
    for m, p in zip(_GROUND_MS, excited_vec):
        excited[m] = float(max(p, 0.0))
    total = math.fsum(ground.values()) + math.fsum(excited.values())
    ground = {m: p / total for m, p in ground.items()}
    excited = {m: p / total for m, p in excited.items()}
    return SublevelPopulations(ground=ground, excited=excited)


def steady_state_populations(pump: PumpConfig, params: AtomParams) -> SublevelPopulations:
    """Stationary sublevel populations under a linear (pi) pump.

    Solves the homogeneous rate-equation system A P = 0 by SVD null space
    and normalizes to unit total. The s = 0 rate matrix is degenerate (any
    ground distribution is stationary); the prepared unpolarized state, a
    uniform 1/7 over the ground sublevels, is returned in that case.
    """
    if pump.polarization is not Polarization.LINEAR:
        raise InputError("steady_state_populations requires linear polarization")
    if pump.s == 0:
        return _populations_from_vectors([1.0 / 7.0] * 7, [0.0] * 7)

    a = _rate_matrix(pump, params)
    _, svals, vh = np.linalg.svd(a)
    # a one-dimensional kernel is expected; a wider one means the pump rates
    # collapsed numerically and no unique steady state exists
    if svals[-2] < 1e-9 * svals[0]:
        raise NumericalError(
            "rate matrix null space is degenerate; smallest singular values "
            f"{svals[-2]:.3e}, {svals[-1]:.3e} (of max {svals[0]:.3e})"
        )
    null = vh[-1]
    if null.sum() < 0:
        null = -null
    residual = float(np.max(np.abs(a @ null)))
    if residual > 1e-8 * svals[0]:
        raise NumericalError(f"null-space solve residual too large: {residual:.3e}")
    return _populations_from_vectors(null[:7], null[7:])


def circular_steady_state(pump: PumpConfig, params: AtomParams) -> SublevelPopulations:
    """Stationary populations for a sigma+ pump.

    Optical pumping puts everything into the stretched pair
    (F=3, m=3) <-> (F'=4, m'=4), which then cycles as a closed two-level
    system with Rabi frequency Omega_0 and detuning delta:
    rho_ee = (s/2) / (1 + s + (2 delta/gamma2)^2).
    """
    s, delta = pump.s, pump.delta
    excited_frac = (s / 2.0) / (1.0 + s + (2.0 * delta / params.gamma2) ** 2)
    ground = {m: 0.0 for m in _GROUND_MS}
    excited = {m: 0.0 for m in _EXCITED_MS}
    ground[3] = 1.0 - excited_frac
    excited[4] = excited_frac
    return SublevelPopulations(ground=ground, excited=excited)
