"""Autler-Townes spectra of a driven three-level ladder with Zeeman structure.

Exact angular-momentum weights, optical-pumping steady states, probe
lineshapes (exact and dressed), observable extraction and spectrum fitting,
plus a CLI (``atspec``) and a self-describing spectrum file format.
"""

from .analysis import (
    AreaRatioPoint,
    DoubletReport,
    EFFECTIVE_LINEAR_FACTOR,
    FitResult,
    SplittingPoint,
    area_ratio_curve,
    extract_doublet,
    fit_spectrum,
    predict_splitting,
    splitting_curve,
)
from .angular import (
    clebsch_gordan,
    six_j,
    three_j,
    weight_circular,
    weight_circular_exact,
    weight_linear,
    weight_linear_exact,
)
from .config import GridSpec, RunConfig, load_config
from .errors import (
    AtspecError,
    DomainError,
    FitConvergenceError,
    InputError,
    NumericalError,
)
from .halfint import HalfInt, SqrtRational
from .lineshape import (
    ComplexDenominators,
    DressedParams,
    Spectrum,
    convolve_gaussian,
    default_grid,
    dressed_params,
    line_center_mhz,
    lineshape_circular,
    lineshape_circular_dressed,
    lineshape_linear,
    lineshape_linear_dressed,
    synthesize_spectrum,
)
from .params import AtomParams, Polarization, PumpConfig, angular_from_mhz, mhz_from_angular
from .pumping import (
    SublevelPopulations,
    circular_steady_state,
    rabi_from_intensity,
    steady_state_populations,
    sublevel_rabi,
)
from .spectrum_io import format_spectrum, parse_spectrum, read_spectrum, write_spectrum

__version__ = "0.1.0"
