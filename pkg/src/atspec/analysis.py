"""Observable extraction and model fitting.

Doublet splittings and component areas are measured by least-squares fits of
a two-Lorentzian doublet observed through the known Gaussian laser profile
(the profile width travels with each Spectrum in its meta), so extracted
centers, widths and areas refer to the underlying components. Analytic
splitting predictions and the measured-spectrum fitter live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from . import angular
from .errors import FitConvergenceError, InputError
from .lineshape import (
    Spectrum,
    default_grid,
    dressed_params,
    gaussian_kernel,
    line_center_mhz,
    synthesize_spectrum,
)
from .params import AtomParams, Polarization, PumpConfig, mhz_from_angular
from .pumping import rabi_from_intensity

#: Ratio of the effective linear-pump Rabi frequency to Omega_0: the mean of
#: the m = 0 and |m| = 1 couplings, (sqrt(16/28) + sqrt(15/28))/2 ~ 0.744.
EFFECTIVE_LINEAR_FACTOR = 0.5 * (
    float(angular.clebsch_gordan(3, 0, 1, 0, 4, 0))
    + float(angular.clebsch_gordan(3, 1, 1, 0, 4, 1))
)

#: Fitted peaks closer than this multiple of their mean FWHM are reported as
#: a merged (unresolved) doublet; below it the two-peak fit is degenerate.
MERGED_SEPARATION_FACTOR = 1.2

_FIT_MAXFEV = 20000
_FREE_PARAMS = ("s", "fwhm", "amplitude_scale")


@dataclass(frozen=True)
class DoubletReport:
    """Fitted doublet observables for one fine-structure line.

    Positions ascend in probe detuning; areas are the analytic Lorentzian
    areas pi * height * HWHM of the deconvolved components. For a merged
    doublet the tuples hold the single fitted peak and the ratios and
    splitting are None.
    """

    peak_positions: tuple
    amplitudes: tuple
    widths_fwhm: tuple
    areas: tuple
    merged: bool = False

    @property
    def splitting(self):
        if self.merged:
            return None
        return abs(self.peak_positions[1] - self.peak_positions[0])

    @property
    def amplitude_ratio(self):
        if self.merged:
            return None
        return min(self.amplitudes) / max(self.amplitudes)

    @property
    def area_ratio(self):
        if self.merged:
            return None
        return min(self.areas) / max(self.areas)


@dataclass(frozen=True)
class SplittingPoint:
    s: float
    sqrt_s: float
    predicted_mhz: float
    extracted_mhz: float  # NaN when the doublet is unresolved
    merged: bool


@dataclass(frozen=True)
class AreaRatioPoint:
    s: float
    detuning_mhz: float
    tan2_theta: float
    area_ratio: float  # NaN when the doublet is unresolved
    merged: bool


@dataclass(frozen=True)
class FitResult:
    fitted_s: float
    fitted_fwhm_mhz: float
    amplitude_scale: float
    residual_norm: float  # ||residual|| / ||measured||
    s_adjustment_fraction: float
    iterations: int


def predict_splitting(pump: PumpConfig, params: AtomParams) -> float:
    """Autler-Townes doublet splitting in MHz: the generalized Rabi frequency.

    sqrt(Omega_0^2 + delta^2) for a sigma+ pump; for a linear pump the drive
    is the effective Rabi frequency ~0.744 Omega_0 of the dominant sublevels.
    """
    omega0 = rabi_from_intensity(pump.s, params)
    if pump.polarization is Polarization.LINEAR:
        omega0 *= EFFECTIVE_LINEAR_FACTOR
    return mhz_from_angular(math.hypot(omega0, pump.delta))


def _lorentzian(x, height, center, hwhm):
    return height / (1.0 + ((x - center) / hwhm) ** 2)


def _make_models(x: np.ndarray, fwhm_mhz: float):
    """Single- and two-Lorentzian models observed through a Gaussian of known
    FWHM; the Lorentzians are evaluated on a padded grid so the convolution
    has no edge loss inside the fit window."""
    if fwhm_mhz > 0:
        step = float(x[1] - x[0])
        kernel = gaussian_kernel(step, fwhm_mhz)
        half = (kernel.size - 1) // 2
        x_full = np.concatenate(
            [x[0] - step * np.arange(half, 0, -1), x, x[-1] + step * np.arange(1, half + 1)]
        )

        def observe(y_full):
            return np.convolve(y_full, kernel, mode="valid")

    else:
        x_full = x

        def observe(y_full):
            return y_full

    def single(_x, height, center, hwhm):
        return observe(_lorentzian(x_full, height, center, hwhm))

    def double(_x, h1, c1, w1, h2, c2, w2):
        return observe(
            _lorentzian(x_full, h1, c1, w1) + _lorentzian(x_full, h2, c2, w2)
        )

    return single, double


def _local_maxima(y: np.ndarray):
    return [i for i in range(1, y.size - 1) if y[i] >= y[i - 1] and y[i] > y[i + 1]]


def _estimate_hwhm(x, y, i):
    half = y[i] / 2.0
    j = i
    while j < y.size - 1 and y[j] > half:
        j += 1
    right = x[j] - x[i]
    j = i
    while j > 0 and y[j] > half:
        j -= 1
    left = x[i] - x[j]
    return max(0.5 * (left + right), float(x[1] - x[0]))


def _pick_initial_peaks(x, y):
    """Two highest local maxima; equal-height ties resolve to the pair with
    the greatest mutual separation (the doublet prior)."""
    maxima = sorted(_local_maxima(y), key=lambda i: -y[i])
    if len(maxima) < 2:
        return maxima
    top = maxima[0]
    runner_height = y[maxima[1]]
    tied = [i for i in maxima[1:] if y[i] == runner_height]
    second = max(tied, key=lambda i: abs(x[i] - x[top]))
    return [top, second]


def _fit_single(x, y, model):
    i = int(np.argmax(y))
    p0 = [y[i], x[i], _estimate_hwhm(x, y, i)]
    lo = [0.0, x[0], 1e-4]
    hi = [np.inf, x[-1], float(x[-1] - x[0])]
    popt, _ = optimize.curve_fit(
        model, x, y, p0=np.clip(p0, lo, hi), bounds=(lo, hi), maxfev=_FIT_MAXFEV
    )
    return popt


def extract_doublet(spec: Spectrum, j_component, params: AtomParams | None = None) -> DoubletReport:
    """Fit the Autler-Townes doublet of one fine-structure line.

    The spectrum is windowed to half the fine-structure separation around
    the chosen line, and a two-Lorentzian model (two heights, two HWHMs, two
    centers, zero baseline) seen through the spectrum's recorded Gaussian
    convolution width is fitted by bounded least squares. When only one peak
    is resolvable the report is flagged merged and carries the single-peak
    fit instead.
    """
    params = params if params is not None else AtomParams()
    center = line_center_mhz(j_component, params)
    half_window = params.fs_separation_mhz / 2.0
    window = spec.windowed(center - half_window, center + half_window)
    x, y = window.grid, window.values
    if y.max() <= 0:
        raise InputError("no signal in the extraction window")
    fwhm_known = float(spec.meta.get("convolution_fwhm_mhz", 0.0))
    single_model, double_model = _make_models(x, fwhm_known)

    peaks = _pick_initial_peaks(x, y)
    if len(peaks) >= 2:
        i1, i2 = sorted(peaks)
        p0 = [
            y[i1], x[i1], _estimate_hwhm(x, y, i1),
            y[i2], x[i2], _estimate_hwhm(x, y, i2),
        ]
        single_fit = None
    else:
        # one apparent maximum: fit a single peak, then seed the second
        # component at the largest leftover residual
        single_fit = _fit_single(x, y, single_model)
        resid = y - single_model(x, *single_fit)
        i2 = int(np.argmax(resid))
        seed_height = max(resid[i2], 1e-9 * y.max())
        p0 = list(single_fit) + [seed_height, x[i2], max(single_fit[2], 1.0)]

    lo = [0.0, x[0], 1e-4] * 2
    hi = [np.inf, x[-1], float(x[-1] - x[0])] * 2
    try:
        popt, _ = optimize.curve_fit(
            double_model, x, y, p0=np.clip(p0, lo, hi), bounds=(lo, hi),
            maxfev=_FIT_MAXFEV,
        )
    except RuntimeError as exc:
        raise FitConvergenceError(
            f"doublet fit did not converge: {exc}", best_params=p0
        ) from exc

    h1, c1, w1, h2, c2, w2 = popt
    if c2 < c1:
        h1, c1, w1, h2, c2, w2 = h2, c2, w2, h1, c1, w1
    mean_fwhm = w1 + w2  # (2*w1 + 2*w2) / 2
    if (c2 - c1) < MERGED_SEPARATION_FACTOR * mean_fwhm:
        if single_fit is None:
            single_fit = _fit_single(x, y, single_model)
        h, c, w = single_fit
        return DoubletReport(
            peak_positions=(float(c),),
            amplitudes=(float(h),),
            widths_fwhm=(float(2 * w),),
            areas=(float(math.pi * h * w),),
            merged=True,
        )
    return DoubletReport(
        peak_positions=(float(c1), float(c2)),
        amplitudes=(float(h1), float(h2)),
        widths_fwhm=(float(2 * w1), float(2 * w2)),
        areas=(float(math.pi * h1 * w1), float(math.pi * h2 * w2)),
    )


def _synthesize_convolved(grid, pump, params, model, fwhm_mhz):
    from .lineshape import convolve_gaussian  # local import to keep namespace tidy

    spec = synthesize_spectrum(grid, pump, params, model=model)
    return convolve_gaussian(spec, fwhm_mhz)


def splitting_curve(s_values, pump_template: PumpConfig, params: AtomParams,
                    model: str = "dressed", convolution_fwhm_mhz: float = 4.5,
                    grid_mhz=None) -> list:
    """Doublet splitting of the D_{5/2} line versus pump intensity.

    For each s a convolved model spectrum is synthesized and its doublet
    extracted; each point pairs the extraction with the analytic generalized
    Rabi prediction. The dressed synthesis is the default since the
    generalized-Rabi splitting law is a dressed-state statement.
    """
    grid = default_grid() if grid_mhz is None else grid_mhz
    points = []
    for s in s_values:
        if s < 0:
            raise InputError(f"pump.s: must be >= 0, got {s}")
        pump = replace(pump_template, s=float(s))
        spec = _synthesize_convolved(grid, pump, params, model, convolution_fwhm_mhz)
        report = extract_doublet(spec, 2.5, params)
        points.append(SplittingPoint(
            s=float(s),
            sqrt_s=math.sqrt(s),
            predicted_mhz=predict_splitting(pump, params),
            extracted_mhz=float("nan") if report.merged else report.splitting,
            merged=report.merged,
        ))
    return points


def area_ratio_curve(pump_configs, params: AtomParams, model: str = "dressed",
                     convolution_fwhm_mhz: float = 4.5, grid_mhz=None) -> list:
    """Weak/strong component area ratio of the D_{5/2} doublet vs tan^2(theta).

    The identity line is the theory curve: the dressed component areas are in
    ratio tan^2(theta) = (Omega - delta)/(Omega + delta) exactly, and a
    Gaussian convolution preserves each component's area.
    """
    grid = default_grid() if grid_mhz is None else grid_mhz
    points = []
    for pump in pump_configs:
        if pump.polarization is not Polarization.CIRCULAR_PLUS:
            raise InputError("area_ratio_curve requires circular pump configs")
        omega0 = rabi_from_intensity(pump.s, params)
        dp = dressed_params(omega0, pump.delta, params)
        if dp.degenerate:
            raise InputError("area ratio undefined at s = 0, delta = 0")
        spec = _synthesize_convolved(grid, pump, params, model, convolution_fwhm_mhz)
        report = extract_doublet(spec, 2.5, params)
        points.append(AreaRatioPoint(
            s=pump.s,
            detuning_mhz=pump.delta_mhz,
            tan2_theta=dp.tan2,
            area_ratio=float("nan") if report.merged else report.area_ratio,
            merged=report.merged,
        ))
    return points


def fit_spectrum(measured: Spectrum, pump_nominal: PumpConfig, params: AtomParams,
                 free=_FREE_PARAMS, model: str = "exact",
                 fwhm_nominal_mhz: float = 4.5, max_iterations: int = 2000) -> FitResult:
    """Fit the convolved model to a measured spectrum.

    Minimizes the sum of squared residuals over the free parameters with a
    deterministic Nelder-Mead simplex (no randomness, fixed iteration budget).
    The amplitude scale is concentrated out analytically at each step. The
    intensity is constrained to [0.5, 2] times nominal and the convolution
    FWHM to [3, 12] MHz.
    """
    free = tuple(free)
    for name in free:
        if name not in _FREE_PARAMS:
            raise InputError(f"unknown free parameter {name!r}; expected {_FREE_PARAMS}")
    if pump_nominal.s <= 0:
        raise InputError("fit requires nominal pump.s > 0")
    y = measured.values
    y_norm = float(np.linalg.norm(y))
    if y_norm == 0:
        raise InputError("measured spectrum is identically zero")

    fwhm0 = min(max(fwhm_nominal_mhz, 3.0), 12.0)
    scale_free = "amplitude_scale" in free

    def model_values(s, fwhm):
        spec = _synthesize_convolved(
            measured.grid, replace(pump_nominal, s=s), params, model, fwhm
        )
        return spec.values

    def evaluate(s, fwhm):
        m = model_values(s, fwhm)
        if scale_free:
            mm = float(m @ m)
            scale = max(float(y @ m) / mm, 0.0) if mm > 0 else 0.0
        else:
            scale = 1.0
        resid = y - scale * m
        return float(resid @ resid), scale

    names, x0, bounds = [], [], []
    if "s" in free:
        names.append("s")
        x0.append(pump_nominal.s)
        bounds.append((0.5 * pump_nominal.s, 2.0 * pump_nominal.s))
    if "fwhm" in free:
        names.append("fwhm")
        x0.append(fwhm0)
        bounds.append((3.0, 12.0))

    def unpack(vec):
        vals = {"s": pump_nominal.s, "fwhm": fwhm0}
        for name, v in zip(names, vec):
            vals[name] = float(v)
        return vals["s"], vals["fwhm"]

    if names:
        def objective(vec):
            return evaluate(*unpack(vec))[0]

        result = optimize.minimize(
            objective, np.asarray(x0), method="Nelder-Mead", bounds=bounds,
            options={"maxiter": max_iterations, "xatol": 1e-8, "fatol": 1e-18 * y_norm**2},
        )
        if not result.success:
            ssr_best, scale_best = evaluate(*unpack(result.x))
            raise FitConvergenceError(
                f"fit did not converge within {max_iterations} iterations: {result.message}",
                best_params=dict(zip(names, result.x)),
                residual=math.sqrt(ssr_best) / y_norm,
            )
        fitted_s, fitted_fwhm = unpack(result.x)
        iterations = int(result.nit)
    else:
        fitted_s, fitted_fwhm = pump_nominal.s, fwhm0
        iterations = 0

    ssr, scale = evaluate(fitted_s, fitted_fwhm)
    return FitResult(
        fitted_s=fitted_s,
        fitted_fwhm_mhz=fitted_fwhm,
        amplitude_scale=scale,
        residual_norm=math.sqrt(ssr) / y_norm,
        s_adjustment_fraction=abs(fitted_s - pump_nominal.s) / pump_nominal.s,
        iterations=iterations,
    )
