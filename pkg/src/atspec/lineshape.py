"""Autler-Townes probe lineshapes and instrument convolution.

Exact weak-probe lineshapes for a strongly driven lower transition, their
dressed-state (two-Lorentzian) limits, and Gaussian laser-profile
convolution. The probe-detuning axis is an ordinary frequency in MHz
referenced to the D_{5/2} line center at zero pump; the D_{3/2} component
sits at ``fs_sign * fs_separation_mhz``. Signal values carry units of one
over angular frequency (rad/us), normalized so the integral of the sigma+
D_{5/2} component over its angular detuning axis is unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import angular
from .errors import DomainError, InputError
from .halfint import HalfInt, as_half_int
from .params import (
    AtomParams,
    Polarization,
    PumpConfig,
    angular_from_mhz,
    mhz_from_angular,
)
from .pumping import SublevelPopulations, rabi_from_intensity, sublevel_rabi

J32 = HalfInt(Fraction(3, 2))
J52 = HalfInt(Fraction(5, 2))
_COMPONENTS = (J52, J32)

#: Maximum probe grid spacing (MHz); coarser grids undersample the natural
#: linewidth and are rejected.
MAX_GRID_STEP_MHZ = 0.2

_GAUSS_SIGMA_PER_FWHM = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))
_KERNEL_CUTOFF_SIGMAS = 5.0

# Relative line-strength weights, exact rationals evaluated once at import.
_WC52 = angular.weight_circular_exact(J52)
_WC_REL = {J: float(angular.weight_circular_exact(J) / _WC52) for J in _COMPONENTS}
_WL_REL = {
    J: {m: float(angular.weight_linear_exact(J, m) / _WC52) for m in range(0, 4)}
    for J in _COMPONENTS
}
# Squared pi-coupling CG <3,m;1,0|4,m>^2 = (16 - m^2)/28.
_CG_PI_SQ = {m: float(angular.clebsch_gordan(3, m, 1, 0, 4, m).square) for m in range(0, 4)}


@dataclass(frozen=True)
class Spectrum:
    """A probe spectrum on a uniform detuning grid.

    grid: probe detunings in MHz (strictly increasing, uniform spacing);
    values: nonnegative dimensionless signal per grid point;
    meta: generating pump/atom configuration and convolution FWHM.
    """

    grid: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or values.shape != grid.shape or grid.size < 2:
            raise InputError("spectrum grid/values must be equal-length 1-D arrays")
        if not np.all(np.isfinite(grid)) or not np.all(np.isfinite(values)):
            raise InputError("spectrum grid/values must be finite")
        diffs = np.diff(grid)
        if np.any(diffs <= 0):
            raise InputError("spectrum grid must be strictly increasing")
        step = diffs.mean()
        if np.max(np.abs(diffs - step)) > 1e-9 * abs(step):
            raise InputError("spectrum grid must be uniformly spaced (1e-9 relative)")
        if np.any(values < 0):
            raise InputError("spectrum values must be nonnegative")

    @property
    def step(self) -> float:
        return float((self.grid[-1] - self.grid[0]) / (self.grid.size - 1))

    def integral(self) -> float:
        """Trapezoidal integral over the MHz grid (multiply by 2*pi for the
        integral over the angular detuning axis)."""
        return float(np.trapezoid(self.values, self.grid))

    def windowed(self, lo_mhz: float, hi_mhz: float) -> "Spectrum":
        mask = (self.grid >= lo_mhz) & (self.grid <= hi_mhz)
        if mask.sum() < 2:
            raise InputError(f"window [{lo_mhz}, {hi_mhz}] MHz selects no data")
        return Spectrum(self.grid[mask], self.values[mask], dict(self.meta))


@dataclass(frozen=True)
class DressedParams:
    """Dressed-state parameters of one driven transition.

    omega_gen is the generalized Rabi frequency sqrt(drive^2 + delta^2);
    theta the mixing angle with cos^2(theta) = (1 + delta/omega_gen)/2;
    gamma1/gamma2_d the dressed component widths (HWHM, angular). Their sum
    is (gamma2 + 2*gamma3)/2 identically. ``degenerate`` marks the
    undriven, resonant case omega_gen = 0 where theta is undefined and equal
    mixing is used by convention.
    """

    omega_gen: float
    theta: float
    gamma1: float
    gamma2_d: float
    degenerate: bool = False

    @property
    def cos2(self) -> float:
        return math.cos(self.theta) ** 2

    @property
    def sin2(self) -> float:
        return math.sin(self.theta) ** 2

    @property
    def tan2(self) -> float:
        return math.tan(self.theta) ** 2


@dataclass(frozen=True)
class ComplexDenominators:
    """Resonance denominators of the two-photon ladder response.

    mu23 = (gamma2 + gamma3)/2 + i delta'; mu13 = gamma3/2 + i(delta + delta').
    Real parts depend only on the decay rates.
    """

    mu23: np.ndarray
    mu13: np.ndarray


def complex_denominators(delta_prime, delta, params: AtomParams) -> ComplexDenominators:
    """Build the complex denominators at angular probe detuning delta_prime."""
    dp = np.asarray(delta_prime, dtype=float)
    mu23 = (params.gamma2 + params.gamma3) / 2.0 + 1j * dp
    mu13 = params.gamma3 / 2.0 + 1j * (delta + dp)
    return ComplexDenominators(mu23=mu23, mu13=mu13)


def dressed_params(omega_drive: float, delta: float, params: AtomParams) -> DressedParams:
    """Dressed-state parameters for drive Rabi frequency omega_drive (rad/us)."""
    omega_gen = math.hypot(omega_drive, delta)
    if omega_gen == 0.0:
        theta = math.pi / 4.0
        degenerate = True
    else:
        cos2 = 0.5 * (1.0 + delta / omega_gen)
        cos2 = min(max(cos2, 0.0), 1.0)
        theta = math.acos(math.sqrt(cos2))
        degenerate = False
    c2 = math.cos(theta) ** 2
    s2 = 1.0 - c2
    gamma1 = params.gamma3 / 2.0 * c2 + (params.gamma2 + params.gamma3) / 2.0 * s2
    gamma2_d = params.gamma3 / 2.0 * s2 + (params.gamma2 + params.gamma3) / 2.0 * c2
    return DressedParams(omega_gen, theta, gamma1, gamma2_d, degenerate)


def line_center_mhz(j_component, params: AtomParams) -> float:
    """Zero-pump position of one fine-structure line on the probe axis."""
    j = as_half_int(j_component)
    if j == J52:
        return 0.0
    if j == J32:
        return params.d32_offset_mhz()
    raise DomainError(f"J must be 3/2 or 5/2, got {j!r}")


def _select_components(component):
    if component is None:
        return _COMPONENTS
    j = as_half_int(component)
    if j not in _COMPONENTS:
        raise DomainError(f"component must be 3/2 or 5/2, got {j!r}")
    return (j,)


def _exact_term(probe_mhz, j, delta, drive_sq, params):
    dp = angular_from_mhz(np.asarray(probe_mhz, dtype=float) - line_center_mhz(j, params))
    dens = complex_denominators(dp, delta, params)
    return np.real(dens.mu23 / (dens.mu23 * dens.mu13 + drive_sq / 4.0))


def _dressed_term(probe_mhz, j, delta, dp: DressedParams, params):
    x = angular_from_mhz(np.asarray(probe_mhz, dtype=float) - line_center_mhz(j, params))
    c2, s2 = dp.cos2, dp.sin2
    return (
        dp.gamma1 * c2 / (dp.gamma1**2 + (x + (delta + dp.omega_gen) / 2.0) ** 2)
        + dp.gamma2_d * s2 / (dp.gamma2_d**2 + (x + (delta - dp.omega_gen) / 2.0) ** 2)
    )


def circular_signal(probe_mhz, pump: PumpConfig, params: AtomParams, component=None):
    """Exact sigma+-pump signal at arbitrary probe detunings (MHz)."""
    omega0_sq = rabi_from_intensity(pump.s, params) ** 2
    out = 0.0
    for j in _select_components(component):
        out = out + _WC_REL[j] * _exact_term(probe_mhz, j, pump.delta, omega0_sq, params)
    return out / math.pi


def circular_dressed_signal(probe_mhz, pump: PumpConfig, params: AtomParams, component=None):
    """Dressed (two-Lorentzian) sigma+ signal; returns (values, degenerate)."""
    omega0 = rabi_from_intensity(pump.s, params)
    dp = dressed_params(omega0, pump.delta, params)
    out = 0.0
    for j in _select_components(component):
        out = out + _WC_REL[j] * _dressed_term(probe_mhz, j, pump.delta, dp, params)
    return out / math.pi, dp.degenerate


def _linear_coefficients(pump: PumpConfig, params: AtomParams, pops: SublevelPopulations):
    """Per-(J, m) prefactors of the linear-pump sum.

    The lineshape prefactor contains Omega_0^2 in its denominator and
    Omega_l(m)^2 = cg^2 * Omega_0^2 in its numerator; written with the CG^2
    ratio the expression stays finite at s = 0.
    """
    gam_sq = params.gamma**2
    d_sq = pump.delta**2
    common = (gam_sq * (1.0 + pump.s) + d_sq) / (gam_sq * (1.0 + pump.s / 2.0) + d_sq)
    coeffs = {}
    for m in range(-3, 4):
        cg_sq = _CG_PI_SQ[abs(m)]
        rho = pops.ground[m]
        coeffs[m] = {
            j: _WL_REL[j][abs(m)] * 4.0 * cg_sq * common * rho for j in _COMPONENTS
        }
    return coeffs


def linear_signal(probe_mhz, pump: PumpConfig, params: AtomParams,
                  pops: SublevelPopulations, component=None):
    """Exact linear-pump signal at arbitrary probe detunings (MHz)."""
    omega0_sq = rabi_from_intensity(pump.s, params) ** 2
    coeffs = _linear_coefficients(pump, params, pops)
    out = 0.0
    for j in _select_components(component):
        for m in range(-3, 4):
            drive_sq = _CG_PI_SQ[abs(m)] * omega0_sq
            out = out + coeffs[m][j] * _exact_term(probe_mhz, j, pump.delta, drive_sq, params)
    return out / math.pi


def linear_dressed_signal(probe_mhz, pump: PumpConfig, params: AtomParams,
                          pops: SublevelPopulations, component=None):
    """Dressed linear-pump signal; per-m dressed parameters use Omega_l(m).

    Returns (values, degenerate); degenerate is True when every driven
    sublevel has vanishing generalized Rabi frequency (s = 0 and delta = 0).
    """
    omega0 = rabi_from_intensity(pump.s, params)
    coeffs = _linear_coefficients(pump, params, pops)
    degenerate = True
    out = 0.0
    for m in range(-3, 4):
        dp = dressed_params(sublevel_rabi(m, omega0), pump.delta, params)
        degenerate = degenerate and dp.degenerate
        for j in _select_components(component):
            out = out + coeffs[m][j] * _dressed_term(probe_mhz, j, pump.delta, dp, params)
    return out / math.pi, degenerate


def default_grid(min_mhz: float = -250.0, max_mhz: float = 250.0,
                 step_mhz: float = 0.1) -> np.ndarray:
    """Uniform probe grid; defaults resolve the natural linewidth ~60x."""
    if step_mhz <= 0:
        raise InputError(f"grid.step_mhz: must be > 0, got {step_mhz}")
    if min_mhz >= max_mhz:
        raise InputError("grid.min_mhz must be below grid.max_mhz")
    n = round((max_mhz - min_mhz) / step_mhz) + 1
    return min_mhz + step_mhz * np.arange(n)


def _validate_grid(grid) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise InputError("grid must be a 1-D array with at least two points")
    diffs = np.diff(grid)
    if np.any(diffs <= 0):
        raise InputError("grid must be strictly increasing")
    step = diffs.mean()
    if np.max(np.abs(diffs - step)) > 1e-9 * step:
        raise InputError("grid must be uniformly spaced (1e-9 relative)")
    if step > MAX_GRID_STEP_MHZ * (1 + 1e-9):
        raise InputError(
            f"grid spacing {step:.4g} MHz exceeds the {MAX_GRID_STEP_MHZ} MHz resolution guard"
        )
    return grid


def _base_meta(pump, params, model, component, fwhm=0.0, **extra) -> dict:
    meta = {
        "polarization": pump.polarization.value,
        "s": float(pump.s),
        "detuning_mhz": mhz_from_angular(pump.delta),
        "model": model,
        "component": "both" if component is None else str(Fraction(as_half_int(component).as_fraction())),
        "convolution_fwhm_mhz": float(fwhm),
        "gamma2_mhz": params.gamma2_mhz,
        "gamma3_inv_s": params.gamma3 * 1e6,
        "i_sat_mw_cm2": params.i_sat_mw_cm2,
        "fs_separation_mhz": params.fs_separation_mhz,
        "fs_sign": params.fs_sign,
    }
    meta.update(extra)
    return meta


def _require_polarization(pump: PumpConfig, wanted: Polarization, name: str):
    if pump.polarization is not wanted:
        raise InputError(f"{name} requires {wanted.value} polarization, got {pump.polarization.value}")


def lineshape_circular(grid, pump: PumpConfig, params: AtomParams, component=None) -> Spectrum:
    """Exact sigma+-pump Autler-Townes spectrum on a uniform MHz grid."""
    _require_polarization(pump, Polarization.CIRCULAR_PLUS, "lineshape_circular")
    grid = _validate_grid(grid)
    values = circular_signal(grid, pump, params, component)
    return Spectrum(grid, values, _base_meta(pump, params, "exact", component))


def lineshape_circular_dressed(grid, pump: PumpConfig, params: AtomParams,
                               component=None) -> Spectrum:
    """Dressed-limit sigma+ spectrum (two Lorentzians per fine-structure line).

    Valid as an approximation when the generalized Rabi frequency is large
    compared to gamma2/2; computable everywhere. The degenerate s = 0,
    delta = 0 case collapses to a single Lorentzian and is flagged in meta.
    """
    _require_polarization(pump, Polarization.CIRCULAR_PLUS, "lineshape_circular_dressed")
    grid = _validate_grid(grid)
    values, degenerate = circular_dressed_signal(grid, pump, params, component)
    meta = _base_meta(pump, params, "dressed", component)
    if degenerate:
        meta["degenerate_dressed"] = True
    return Spectrum(grid, values, meta)


def lineshape_linear(grid, pump: PumpConfig, params: AtomParams,
                     pops: SublevelPopulations, component=None) -> Spectrum:
    """Exact linear-pump spectrum; pops are the steady-state sublevel
    populations for the same pump configuration."""
    _require_polarization(pump, Polarization.LINEAR, "lineshape_linear")
    grid = _validate_grid(grid)
    values = linear_signal(grid, pump, params, pops, component)
    return Spectrum(grid, values, _base_meta(pump, params, "exact", component))


def lineshape_linear_dressed(grid, pump: PumpConfig, params: AtomParams,
                             pops: SublevelPopulations, component=None) -> Spectrum:
    """Dressed linear-pump spectrum with per-sublevel dressed parameters."""
    _require_polarization(pump, Polarization.LINEAR, "lineshape_linear_dressed")
    grid = _validate_grid(grid)
    values, degenerate = linear_dressed_signal(grid, pump, params, pops, component)
    meta = _base_meta(pump, params, "dressed", component)
    if degenerate:
        meta["degenerate_dressed"] = True
    return Spectrum(grid, values, meta)


def synthesize_spectrum(grid, pump: PumpConfig, params: AtomParams,
                        model: str = "exact", component=None) -> Spectrum:
    """Dispatch on polarization and model; linear pumping computes its
    steady-state sublevel populations first."""
    if model not in ("exact", "dressed"):
        raise InputError(f"model: must be 'exact' or 'dressed', got {model!r}")
    if pump.polarization is Polarization.CIRCULAR_PLUS:
        if model == "exact":
            return lineshape_circular(grid, pump, params, component)
        return lineshape_circular_dressed(grid, pump, params, component)
    from .pumping import steady_state_populations

    pops = steady_state_populations(pump, params)
    if model == "exact":
        return lineshape_linear(grid, pump, params, pops, component)
    return lineshape_linear_dressed(grid, pump, params, pops, component)


def gaussian_kernel(step_mhz: float, fwhm_mhz: float) -> np.ndarray:
    """Unit-sum Gaussian kernel on a uniform grid, truncated at +-5 sigma."""
    if fwhm_mhz <= 0:
        raise InputError(f"convolution_fwhm_mhz: must be > 0, got {fwhm_mhz}")
    sigma = fwhm_mhz * _GAUSS_SIGMA_PER_FWHM
    half = int(math.ceil(_KERNEL_CUTOFF_SIGMAS * sigma / step_mhz))
    x = np.arange(-half, half + 1) * step_mhz
    kernel = np.exp(-0.5 * (x / sigma) ** 2)
    return kernel / kernel.sum()


def convolve_gaussian(spec: Spectrum, fwhm_mhz: float) -> Spectrum:
    """Convolve a spectrum with the laser's Gaussian spectral profile.

    Direct kernel summation on the uniform grid; the unit-sum kernel
    preserves the total integral. Signal outside the grid is taken as zero,
    so the grid must extend well past the features of interest.
    """
    if fwhm_mhz < 0:
        raise InputError(f"convolution_fwhm_mhz: must be >= 0, got {fwhm_mhz}")
    if fwhm_mhz == 0:
        return Spectrum(spec.grid, spec.values.copy(), dict(spec.meta))
    span = float(spec.grid[-1] - spec.grid[0])
    if fwhm_mhz > span / 2.0:
        raise InputError(
            f"convolution_fwhm_mhz: {fwhm_mhz} MHz exceeds half the grid span ({span / 2:.4g} MHz)"
        )
    kernel = gaussian_kernel(spec.step, fwhm_mhz)
    if kernel.size > spec.values.size:
        raise InputError("convolution kernel longer than the spectrum; widen the grid")
    values = np.convolve(spec.values, kernel, mode="same")
    meta = dict(spec.meta)
    prior = float(meta.get("convolution_fwhm_mhz", 0.0))
    # successive Gaussian kernels compose to one of quadrature-summed width
    meta["convolution_fwhm_mhz"] = math.hypot(prior, fwhm_mhz)
    return Spectrum(spec.grid, values, meta)
