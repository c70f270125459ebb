"""Run configuration: defaults, INI-style config files, CLI overrides.

The config file is flat key-value text with one section level::

    [atom]
    gamma2_mhz = 5.98
    [pump]
    polarization = circular
    s = 260
    detuning_mhz = 0
    [grid]
    min_mhz = -250
    [output]
    convolution_fwhm_mhz = 4.5
    model = exact
    path = spectrum.dat

Every key has a default matching the experimental constants; unknown
sections or keys are rejected by name.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InputError
from .lineshape import default_grid
from .params import AtomParams, Polarization, PumpConfig, angular_from_mhz

MODELS = ("exact", "dressed")


@dataclass(frozen=True)
class GridSpec:
    min_mhz: float = -250.0
    max_mhz: float = 250.0
    step_mhz: float = 0.1

    def __post_init__(self):
        if self.step_mhz <= 0:
            raise InputError(f"grid.step_mhz: must be > 0, got {self.step_mhz}")
        if self.min_mhz >= self.max_mhz:
            raise InputError("grid.min_mhz: must be below grid.max_mhz")

    def to_array(self) -> np.ndarray:
        return default_grid(self.min_mhz, self.max_mhz, self.step_mhz)


@dataclass(frozen=True)
class RunConfig:
    atom: AtomParams = field(default_factory=AtomParams)
    pump: PumpConfig = field(default_factory=lambda: PumpConfig(Polarization.CIRCULAR_PLUS, 260.0))
    grid: GridSpec = field(default_factory=GridSpec)
    convolution_fwhm_mhz: float = 4.5
    model: str = "exact"
    output_path: str | None = None

    def __post_init__(self):
        if self.convolution_fwhm_mhz < 0:
            raise InputError("output.convolution_fwhm_mhz: must be >= 0")
        if self.model not in MODELS:
            raise InputError(f"output.model: must be one of {MODELS}, got {self.model!r}")


_KNOWN_KEYS = {
    "atom": ("gamma2_mhz", "gamma3_inv_s", "i_sat_mw_cm2", "fs_separation_mhz", "fs_sign"),
    "pump": ("polarization", "s", "detuning_mhz"),
    "grid": ("min_mhz", "max_mhz", "step_mhz"),
    "output": ("convolution_fwhm_mhz", "model", "path"),
}


class _Section:
    """One config section with typed, error-reporting accessors."""

    def __init__(self, name, mapping):
        self.name = name
        self.mapping = mapping

    def text(self, key, fallback):
        return self.mapping.get(key, fallback)

    def number(self, key, fallback):
        raw = self.mapping.get(key)
        if raw is None:
            return fallback
        try:
            return float(raw)
        except ValueError:
            raise InputError(f"{self.name}.{key}: not a number: {raw!r}") from None


def _polarization(raw) -> Polarization:
    try:
        return Polarization(raw)
    except ValueError:
        raise InputError(
            f"pump.polarization: must be 'circular' or 'linear', got {raw!r}"
        ) from None


def load_config(path) -> RunConfig:
    """Parse a config file into a RunConfig; unknown keys are errors."""
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise InputError(f"config: cannot read {path}: {exc}") from None
    except configparser.Error as exc:
        raise InputError(f"config: {path}: {exc}") from None

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise InputError(f"config: unknown section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN_KEYS[section]:
                raise InputError(f"config: unknown key {section}.{key}")

    def section(name):
        return _Section(name, dict(parser[name]) if parser.has_section(name) else {})

    base = RunConfig()
    atom_sec = section("atom")
    atom = AtomParams(
        gamma2=angular_from_mhz(atom_sec.number("gamma2_mhz", base.atom.gamma2_mhz)),
        gamma3=atom_sec.number("gamma3_inv_s", base.atom.gamma3 * 1e6) * 1e-6,
        i_sat_mw_cm2=atom_sec.number("i_sat_mw_cm2", base.atom.i_sat_mw_cm2),
        fs_separation_mhz=atom_sec.number("fs_separation_mhz", base.atom.fs_separation_mhz),
        fs_sign=int(atom_sec.number("fs_sign", base.atom.fs_sign)),
    )
    pump_sec = section("pump")
    pump = PumpConfig.make(
        _polarization(pump_sec.text("polarization", base.pump.polarization.value)),
        pump_sec.number("s", base.pump.s),
        pump_sec.number("detuning_mhz", 0.0),
    )
    grid_sec = section("grid")
    grid = GridSpec(
        min_mhz=grid_sec.number("min_mhz", base.grid.min_mhz),
        max_mhz=grid_sec.number("max_mhz", base.grid.max_mhz),
        step_mhz=grid_sec.number("step_mhz", base.grid.step_mhz),
    )
    out_sec = section("output")
    return RunConfig(
        atom=atom,
        pump=pump,
        grid=grid,
        convolution_fwhm_mhz=out_sec.number("convolution_fwhm_mhz", base.convolution_fwhm_mhz),
        model=out_sec.text("model", base.model),
        output_path=out_sec.text("path", None),
    )


def apply_overrides(config: RunConfig, *, polarization=None, s=None, detuning_mhz=None,
                    grid_min=None, grid_max=None, grid_step=None, fwhm=None,
                    model=None, output=None, fs_sign=None) -> RunConfig:
    """Layer individual CLI flag values over a base config."""
    atom = config.atom
    if fs_sign is not None:
        atom = replace(atom, fs_sign=int(fs_sign))
    pump = config.pump
    if polarization is not None:
        pump = replace(pump, polarization=_polarization(polarization))
    if s is not None:
        pump = replace(pump, s=float(s))
    if detuning_mhz is not None:
        pump = replace(pump, delta=angular_from_mhz(float(detuning_mhz)))
    grid = GridSpec(
        min_mhz=config.grid.min_mhz if grid_min is None else float(grid_min),
        max_mhz=config.grid.max_mhz if grid_max is None else float(grid_max),
        step_mhz=config.grid.step_mhz if grid_step is None else float(grid_step),
    )
    return RunConfig(
        atom=atom,
        pump=pump,
        grid=grid,
        convolution_fwhm_mhz=config.convolution_fwhm_mhz if fwhm is None else float(fwhm),
        model=config.model if model is None else str(model),
        output_path=config.output_path if output is None else str(output),
    )
