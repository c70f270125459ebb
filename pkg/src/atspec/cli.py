"""Command-line frontend.

Subcommands: ``simulate`` (write a model spectrum), ``fit`` (fit a measured
spectrum file), ``figures`` (emit splitting / area-ratio curve data), and
``populations`` (print steady-state sublevel populations). All frequencies on
the command line are ordinary frequencies in MHz and intensities are in units
of the saturation intensity. Every error path exits nonzero after printing a
single ``error: ...`` line to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis
from .config import RunConfig, apply_overrides, load_config
from .errors import AtspecError
from .lineshape import Spectrum, convolve_gaussian, synthesize_spectrum
from .params import Polarization, PumpConfig
from .pumping import circular_steady_state, steady_state_populations
from .spectrum_io import FLOAT_FORMAT, read_spectrum, write_spectrum

FIG3_DEFAULT_S = (0.4, 1.0, 2.0, 4.4, 9.0, 18.0, 36.0, 72.0, 140.0, 260.0)
FIG6_DEFAULT_S = (1.0, 2.0, 4.5, 9.0, 18.0, 36.0, 72.0, 110.0, 200.0, 290.0)
FIG5_DEFAULT_S = (4.5, 18.0, 45.0, 110.0, 200.0, 290.0)
FIG5_DETUNINGS_MHZ = (10.0, 30.0)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: {message}\n")


def _add_common(parser):
    parser.add_argument("--config", help="config file (flat key-value sections)")
    parser.add_argument("--polarization", choices=["circular", "linear"])
    parser.add_argument("--s", type=float, help="pump intensity in units of I_sat")
    parser.add_argument("--detuning-mhz", type=float, help="pump detuning (MHz)")
    parser.add_argument("--grid-min", type=float, help="probe grid start (MHz)")
    parser.add_argument("--grid-max", type=float, help="probe grid end (MHz)")
    parser.add_argument("--grid-step", type=float, help="probe grid step (MHz)")
    parser.add_argument("--fwhm", type=float, help="laser Gaussian FWHM (MHz)")
    parser.add_argument("--model", choices=["exact", "dressed"])
    parser.add_argument("--fs-sign", type=int, choices=[-1, 1],
                        help="which side of the D5/2 line the D3/2 line sits on")
    parser.add_argument("--output", help="output file path")


def _resolve_config(args) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig()
    return apply_overrides(
        base,
        polarization=args.polarization,
        s=args.s,
        detuning_mhz=args.detuning_mhz,
        grid_min=args.grid_min,
        grid_max=args.grid_max,
        grid_step=args.grid_step,
        fwhm=args.fwhm,
        model=args.model,
        output=args.output,
        fs_sign=args.fs_sign,
    )


def _fmt(value) -> str:
    return FLOAT_FORMAT % value


def cmd_simulate(args) -> int:
    cfg = _resolve_config(args)
    spec = synthesize_spectrum(cfg.grid.to_array(), cfg.pump, cfg.atom, cfg.model)
    spec = convolve_gaussian(spec, cfg.convolution_fwhm_mhz)
    path = cfg.output_path or "spectrum.dat"
    write_spectrum(spec, path)
    print(f"wrote {path}")
    return 0


def cmd_populations(args) -> int:
    cfg = _resolve_config(args)
    if cfg.pump.polarization is Polarization.LINEAR:
        pops = steady_state_populations(cfg.pump, cfg.atom)
        print(f"# steady-state sublevel populations: linear pump, "
              f"s={_fmt(cfg.pump.s)}, detuning={_fmt(cfg.pump.delta_mhz)} MHz")
        print("# |m|  ground  excited   (per sublevel; m and -m are equal)")
        for m in range(0, 4):
            print(f"{m} {_fmt(pops.ground[m])} {_fmt(pops.excited[m])}")
    else:
        pops = circular_steady_state(cfg.pump, cfg.atom)
        print("# note: circular pump: population cycles on the stretched pair "
              "(F=3, m=3) <-> (F'=4, m'=4)")
        print(f"# s={_fmt(cfg.pump.s)}, detuning={_fmt(cfg.pump.delta_mhz)} MHz")
        print(f"ground[3] {_fmt(pops.ground[3])}")
        print(f"excited[4] {_fmt(pops.excited[4])}")
    print(f"# sum: {_fmt(pops.total)}")
    return 0


def cmd_fit(args) -> int:
    measured = read_spectrum(args.measured)
    cfg = _resolve_config(args)
    free = tuple(name.strip() for name in args.free.split(",") if name.strip())
    result = analysis.fit_spectrum(
        measured, cfg.pump, cfg.atom, free=free, model=cfg.model,
        fwhm_nominal_mhz=cfg.convolution_fwhm_mhz,
    )
    print(f"fitted_s: {_fmt(result.fitted_s)}")
    print(f"fitted_fwhm_mhz: {_fmt(result.fitted_fwhm_mhz)}")
    print(f"amplitude_scale: {_fmt(result.amplitude_scale)}")
    print(f"residual_norm: {_fmt(result.residual_norm)}")
    print(f"s_adjustment_fraction: {_fmt(result.s_adjustment_fraction)}")
    if result.s_adjustment_fraction > 0.10:
        print(f"warning: fitted intensity adjusted "
              f"{100 * result.s_adjustment_fraction:.1f}% from nominal, "
              f"exceeding the 10% bound")

    from dataclasses import replace
    pump_fitted = replace(cfg.pump, s=result.fitted_s)
    fitted = synthesize_spectrum(measured.grid, pump_fitted, cfg.atom, cfg.model)
    fitted = convolve_gaussian(fitted, result.fitted_fwhm_mhz)
    values = result.amplitude_scale * fitted.values
    meta = dict(fitted.meta)
    meta.update(
        fitted_s=result.fitted_s,
        fitted_fwhm_mhz=result.fitted_fwhm_mhz,
        amplitude_scale=result.amplitude_scale,
        residual_norm=result.residual_norm,
        s_adjustment_fraction=result.s_adjustment_fraction,
    )
    measured_path = Path(args.measured)
    out = Path(cfg.output_path) if cfg.output_path else measured_path.with_name(
        measured_path.stem + "_fit" + (measured_path.suffix or ".dat")
    )
    write_spectrum(Spectrum(measured.grid, values, meta), out)
    print(f"wrote {out}")
    return 0


def _write_table(path, header: dict, columns: str, rows) -> None:
    lines = ["# atspec figure data"]
    for key, value in header.items():
        lines.append(f"# {key}: {value}")
    lines.append(f"# columns: {columns}")
    lines.append("# nan in an extracted column marks an unresolved (merged) doublet")
    for row in rows:
        lines.append(" ".join(_fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_s_values(raw):
    try:
        values = tuple(float(v) for v in raw.split(","))
    except ValueError:
        raise AtspecError(f"figures.s_values: not a number list: {raw!r}") from None
    return values


def cmd_figures(args) -> int:
    cfg = _resolve_config(args)
    # splitting and area laws are dressed-state statements, so figure curves
    # synthesize from the dressed model unless --model overrides
    model = args.model or "dressed"
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    grid = cfg.grid.to_array()
    fwhm = cfg.convolution_fwhm_mhz
    written = []

    if args.which in ("fig3", "fig6"):
        detuning = 0.0 if args.which == "fig3" else 30.0
        default_s = FIG3_DEFAULT_S if args.which == "fig3" else FIG6_DEFAULT_S
        s_values = _parse_s_values(args.s_values) if args.s_values else default_s
        for polarization in (Polarization.CIRCULAR_PLUS, Polarization.LINEAR):
            pump = PumpConfig.make(polarization, 1.0, detuning)
            points = analysis.splitting_curve(
                s_values, pump, cfg.atom, model=model,
                convolution_fwhm_mhz=fwhm, grid_mhz=grid,
            )
            rows = [(p.sqrt_s, p.predicted_mhz, p.extracted_mhz) for p in points]
            path = outdir / f"{args.which}_{polarization.value}.dat"
            _write_table(
                path,
                {"figure": args.which, "polarization": polarization.value,
                 "detuning_mhz": _fmt(detuning), "convolution_fwhm_mhz": _fmt(fwhm),
                 "model": model},
                "sqrt_s splitting_theory_mhz splitting_extracted_mhz",
                rows,
            )
            written.append(path)
    elif args.which == "fig5":
        s_values = _parse_s_values(args.s_values) if args.s_values else FIG5_DEFAULT_S
        configs = [
            PumpConfig.make(Polarization.CIRCULAR_PLUS, s, d)
            for d in FIG5_DETUNINGS_MHZ
            for s in s_values
        ]
        points = analysis.area_ratio_curve(
            configs, cfg.atom, model=model, convolution_fwhm_mhz=fwhm, grid_mhz=grid,
        )
        rows = sorted(
            (p.tan2_theta, p.tan2_theta, p.area_ratio) for p in points
        )
        path = outdir / "fig5.dat"
        _write_table(
            path,
            {"figure": "fig5", "polarization": "circular",
             "detunings_mhz": ",".join(_fmt(d) for d in FIG5_DETUNINGS_MHZ),
             "convolution_fwhm_mhz": _fmt(fwhm), "model": model},
            "tan2_theta area_ratio_theory area_ratio_extracted",
            rows,
        )
        written.append(path)
    for path in written:
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="atspec",
                     description="Autler-Townes spectra of the driven ladder atom")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="write a convolved model spectrum")
    _add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_fit = sub.add_parser("fit", help="fit a measured spectrum file")
    p_fit.add_argument("measured", help="measured spectrum file")
    p_fit.add_argument("--free", default="s,fwhm,amplitude_scale",
                       help="comma list of free parameters")
    _add_common(p_fit)
    p_fit.set_defaults(func=cmd_fit)

    p_fig = sub.add_parser("figures", help="emit figure curve data")
    p_fig.add_argument("which", choices=["fig3", "fig5", "fig6"])
    p_fig.add_argument("--outdir", default=".")
    p_fig.add_argument("--s-values", dest="s_values",
                       help="comma list of pump intensities (units of I_sat)")
    _add_common(p_fig)
    p_fig.set_defaults(func=cmd_figures)

    p_pop = sub.add_parser("populations", help="print steady-state populations")
    _add_common(p_pop)
    p_pop.set_defaults(func=cmd_populations)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AtspecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
