"""Spectrum file format: comment-prefixed header, two numeric columns.

Header lines echo the generating configuration as ``# key: value``; the body
holds ``probe_detuning_mhz signal`` pairs, one per grid point, serialized
with 12 significant digits. A write/read/write round trip is byte-stable at
that precision. Files are UTF-8 with LF line endings.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import InputError
from .lineshape import Spectrum

FLOAT_FORMAT = "%.12g"
_COLUMNS_KEY = "columns"
_COLUMNS_VALUE = "probe_detuning_mhz signal"


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def _parse_value(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def format_spectrum(spec: Spectrum) -> str:
    lines = ["# atspec spectrum"]
    for key, value in spec.meta.items():
        lines.append(f"# {key}: {_format_value(value)}")
    lines.append(f"# {_COLUMNS_KEY}: {_COLUMNS_VALUE}")
    for x, y in zip(spec.grid, spec.values):
        lines.append(f"{FLOAT_FORMAT % x} {FLOAT_FORMAT % y}")
    return "\n".join(lines) + "\n"


def write_spectrum(spec: Spectrum, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_spectrum(spec))


def parse_spectrum(text: str, source: str = "<string>") -> Spectrum:
    meta = {}
    grid, values = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, value = body.partition(":")
                key = key.strip()
                if key and key != _COLUMNS_KEY and key != "atspec spectrum":
                    meta[key] = _parse_value(value.strip())
            continue
        fields = line.split()
        if len(fields) != 2:
            raise InputError(f"{source}: line {lineno}: expected two columns, got {len(fields)}")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise InputError(f"{source}: line {lineno}: non-numeric value") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InputError(f"{source}: line {lineno}: non-finite value")
        if grid and x <= grid[-1]:
            raise InputError(f"{source}: line {lineno}: grid not strictly increasing")
        grid.append(x)
        values.append(y)
    if len(grid) < 2:
        raise InputError(f"{source}: fewer than two data rows")
    grid = np.asarray(grid)
    diffs = np.diff(grid)
    step = diffs.mean()
    bad = np.nonzero(np.abs(diffs - step) > 1e-9 * abs(step))[0]
    if bad.size:
        # row index of the first offending grid point (1-based within data rows)
        raise InputError(
            f"{source}: non-uniform grid at data row {int(bad[0]) + 2} "
            f"(spacing {diffs[bad[0]]:.12g} vs {step:.12g})"
        )
    try:
        return Spectrum(grid, np.asarray(values), meta)
    except InputError as exc:
        raise InputError(f"{source}: {exc}") from None


def read_spectrum(path) -> Spectrum:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read: {exc}") from None
    return parse_spectrum(text, source=str(path))
