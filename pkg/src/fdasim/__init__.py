"""Range-angle beampattern simulation for linear frequency diverse and
pulsed phased arrays.

The library evaluates array factors and received signals on field points
and range-angle grids, synthesizes Dolph-Chebyshev tapers and offset
profiles, measures focus positions and widths, and exports rasters as CSV
or portable graymaps.  See the demos/ directory for worked examples and
the `fdasim` command-line tool for file-driven runs.
"""

from .arrays import (
    SPEED_OF_LIGHT,
    ArrayConfig,
    PropagationEnv,
    ValidityReport,
    chebyshev_offsets,
    chebyshev_taper,
    check_validity,
    half_wavelength,
    make_fda_linear,
    make_phased_array,
)
from .patterns import (
    FieldPoint,
    af_approx,
    af_exact,
    af_values,
    equivalent_phased_array,
    equivalent_phases,
    pulsed_pattern,
    received_signal,
    to_db,
)
from .pulses import (
    GAUSSIAN_FWHM_FACTOR,
    ContinuousWave,
    GaussianPulse,
    PulseSpec,
    RectPulse,
    envelope,
    fwhm,
)
from .rasters import (
    RASTER_MODES,
    DriftReport,
    FocusReport,
    GridSpec,
    NoFocusError,
    PeakEscapedError,
    RasterGrid,
    config_fingerprint,
    drift_estimate,
    equivalent_pa_magnitudes,
    evaluate_raster,
    find_focus,
    range_cut,
)
from .runconfig import ConfigError, RunConfig, parse_config, parse_quantity, serialize_config
from .export import export_csv, export_image, read_csv

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "GAUSSIAN_FWHM_FACTOR",
    "RASTER_MODES",
    "ArrayConfig",
    "PropagationEnv",
    "ValidityReport",
    "FieldPoint",
    "ContinuousWave",
    "RectPulse",
    "GaussianPulse",
    "PulseSpec",
    "GridSpec",
    "RasterGrid",
    "FocusReport",
    "DriftReport",
    "RunConfig",
    "ConfigError",
    "NoFocusError",
    "PeakEscapedError",
    "make_phased_array",
    "make_fda_linear",
    "chebyshev_taper",
    "chebyshev_offsets",
    "check_validity",
    "half_wavelength",
    "envelope",
    "fwhm",
    "af_exact",
    "af_approx",
    "af_values",
    "received_signal",
    "pulsed_pattern",
    "equivalent_phases",
    "equivalent_phased_array",
    "to_db",
    "evaluate_raster",
    "equivalent_pa_magnitudes",
    "find_focus",
    "drift_estimate",
    "range_cut",
    "config_fingerprint",
    "parse_config",
    "serialize_config",
    "parse_quantity",
    "export_csv",
    "export_image",
    "read_csv",
]
