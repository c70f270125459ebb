"""Physical parameters of the ladder system and the pump field.

Unit convention: user-facing frequencies are ordinary frequencies in MHz;
everything stored on these dataclasses and used in the math is angular
frequency in rad/us (1 rad/us = 1e6 rad/s). The two helpers below are the
single conversion point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import InputError
from .halfint import HalfInt

TWO_PI = 2.0 * math.pi


def angular_from_mhz(f_mhz):
    """Ordinary frequency in MHz -> angular frequency in rad/us."""
    return TWO_PI * f_mhz


def mhz_from_angular(omega):
    """Angular frequency in rad/us -> ordinary frequency in MHz."""
    return omega / TWO_PI


class Polarization(str, Enum):
    CIRCULAR_PLUS = "circular"
    LINEAR = "linear"


@dataclass(frozen=True)
class AtomParams:
    """Fixed constants of the 5S_{1/2}(F=3) - 5P_{3/2}(F'=4) - 44D ladder.

    gamma2, gamma3 are angular decay rates in rad/us; gamma2/2pi = 5.98 MHz
    is the intermediate-state linewidth and gamma3 ~ 1.6e4 s^-1 the Rydberg
    decay rate. fs_sign = +1 places the D_{3/2} line above the D_{5/2} line
    (inverted nD fine structure), so the D_{3/2} resonance appears at
    +fs_separation_mhz on the probe axis referenced to the D_{5/2} line.
    """

    gamma2: float = TWO_PI * 5.98
    gamma3: float = 16e3 * 1e-6
    i_sat_mw_cm2: float = 1.64
    fs_separation_mhz: float = 140.0
    fs_sign: int = 1
    f_ground: HalfInt = field(default_factory=lambda: HalfInt(3))
    f_excited: HalfInt = field(default_factory=lambda: HalfInt(4))

    def __post_init__(self):
        if self.gamma2 <= 0 or self.gamma3 < 0:
            raise InputError("atom.gamma2 must be > 0 and atom.gamma3 >= 0")
        if self.fs_separation_mhz <= 0:
            raise InputError("atom.fs_separation_mhz: must be > 0")
        if self.fs_sign not in (-1, 1):
            raise InputError("atom.fs_sign: must be +1 or -1")
        if self.i_sat_mw_cm2 <= 0:
            raise InputError("atom.i_sat_mw_cm2: must be > 0")

    @property
    def gamma(self) -> float:
        """Coherence decay rate gamma = gamma2/2 of the pump transition."""
        return self.gamma2 / 2.0

    @property
    def gamma2_mhz(self) -> float:
        return mhz_from_angular(self.gamma2)

    def d32_offset_mhz(self) -> float:
        """Position of the D_{3/2} line on the probe axis (D_{5/2} at 0)."""
        return self.fs_sign * self.fs_separation_mhz


@dataclass(frozen=True)
class PumpConfig:
    """Pump polarization, intensity ratio s = I/I_sat, and detuning.

    ``delta`` is the angular pump detuning in rad/us; use :meth:`make` to
    construct from a detuning in MHz.
    """

    polarization: Polarization
    s: float
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "polarization", Polarization(self.polarization))
        if self.s < 0:
            raise InputError(f"pump.s: must be >= 0, got {self.s}")

    @classmethod
    def make(cls, polarization, s, delta_mhz=0.0) -> "PumpConfig":
        return cls(Polarization(polarization), s, angular_from_mhz(delta_mhz))

    @property
    def delta_mhz(self) -> float:
        return mhz_from_angular(self.delta)
