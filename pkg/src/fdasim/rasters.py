"""Range-angle grid evaluation, focus localization, and drift estimation."""

import dataclasses
import hashlib
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .arrays import ArrayConfig, PropagationEnv
from .patterns import af_values
from .pulses import ContinuousWave, GaussianPulse, PulseSpec, RectPulse, envelope

RASTER_MODES = ("cw", "fda_exact", "fda_approx", "pulsed")


class NoFocusError(ValueError):
    "Raised when a raster carries no energy and has no focus to report."


class PeakEscapedError(RuntimeError):
    "Raised when the pattern peak has moved off the evaluation grid."


@dataclass(frozen=True)
class GridSpec:
    """Uniform range x angle grid sampled at one snapshot time.

    Both axes are inclusive of their endpoints.  values[i][j] of a raster
    built on this spec corresponds to (range_axis[i], theta_axis[j]).
    """

    r_min_m: float
    r_max_m: float
    n_range: int
    theta_min_rad: float
    theta_max_rad: float
    n_theta: int
    t_s: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.r_min_m) and 0 < self.r_min_m < self.r_max_m):
            raise ValueError(f"need 0 < r_min < r_max, got [{self.r_min_m}, {self.r_max_m}]")
        if self.n_range < 2 or self.n_theta < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        if not self.theta_min_rad < self.theta_max_rad:
            raise ValueError("need theta_min < theta_max")
        half_pi = math.pi / 2
        if self.theta_min_rad < -half_pi or self.theta_max_rad > half_pi:
            raise ValueError("theta bounds must lie in [-pi/2, pi/2]")
        if not np.isfinite(self.t_s):
            raise ValueError("t_s must be finite")

    @property
    def range_axis(self) -> NDArray[np.float64]:
        return np.linspace(self.r_min_m, self.r_max_m, self.n_range)

    @property
    def theta_axis(self) -> NDArray[np.float64]:
        return np.linspace(self.theta_min_rad, self.theta_max_rad, self.n_theta)

    @property
    def range_step_m(self) -> float:
        return (self.r_max_m - self.r_min_m) / (self.n_range - 1)

    @property
    def theta_step_rad(self) -> float:
        return (self.theta_max_rad - self.theta_min_rad) / (self.n_theta - 1)

    def at_time(self, t_s: float) -> "GridSpec":
        "Same grid bounds at a different snapshot time."
        return dataclasses.replace(self, t_s=t_s)

    def shifted(self, delta_r_m: float) -> "GridSpec":
        "Same grid with both range bounds shifted by delta_r_m."
        return dataclasses.replace(
            self, r_min_m=self.r_min_m + delta_r_m, r_max_m=self.r_max_m + delta_r_m
        )


def config_fingerprint(cfg: ArrayConfig, env: PropagationEnv,
                       pulse: PulseSpec | None) -> str:
    "Stable digest of array + environment + pulse, for output provenance."
    def hx(value) -> str:
        return float(value).hex()

    parts = [
        "n", str(cfg.n_elements), hx(cfg.spacing_m), hx(cfg.carrier_hz),
        "w", *[hx(v) for v in cfg.weights],
        "ph", *[hx(v) for v in cfg.phases_rad],
        "df", *[hx(v) for v in cfg.freq_offsets_hz],
        "env", hx(env.wave_speed_m_per_s), hx(env.rx_gain),
        *[hx(v) for v in np.atleast_1d(np.asarray(env.tx_gains, dtype=float))],
    ]
    if pulse is None or isinstance(pulse, ContinuousWave):
        parts += ["cw"]
    elif isinstance(pulse, RectPulse):
        parts += ["rect", hx(pulse.center_s), hx(pulse.width_s)]
    elif isinstance(pulse, GaussianPulse):
        parts += ["gauss", hx(pulse.center_s), hx(pulse.sigma_s)]
    else:
        raise TypeError(f"unknown pulse spec {type(pulse).__name__}")
    return hashlib.sha256("|".join(parts).encode("ascii")).hexdigest()[:16]


@dataclass(frozen=True)
class RasterGrid:
    """Sampled |pattern| magnitudes over a GridSpec at one time instant."""

    spec: GridSpec
    values: NDArray[np.float64]
    mode: str
    fingerprint: str

    def __post_init__(self):
        if self.mode not in RASTER_MODES:
            raise ValueError(f"mode must be one of {RASTER_MODES}, got {self.mode!r}")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.spec.n_range, self.spec.n_theta):
            raise ValueError(
                f"values shape {vals.shape} does not match grid "
                f"({self.spec.n_range}, {self.spec.n_theta})"
            )
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise ValueError("raster values must be finite and >= 0")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def range_axis(self) -> NDArray[np.float64]:
        return self.spec.range_axis

    @property
    def theta_axis(self) -> NDArray[np.float64]:
        return self.spec.theta_axis


@dataclass(frozen=True)
class FocusReport:
    """Peak location and half-maximum widths of a raster.

    The bands are the half-maximum intervals of the axis cuts through the
    peak cell, with crossings linearly interpolated between samples and
    clamped at the grid edges.
    """

    peak_r_m: float
    peak_theta_rad: float
    peak_mag: float
    range_extent_m: float
    theta_extent_rad: float
    range_band_m: tuple[float, float]
    theta_band_rad: tuple[float, float]


@dataclass(frozen=True)
class DriftReport:
    """Peak motion between two snapshot times."""

    range_speed_m_per_s: float
    theta_rate_rad_per_s: float
    t1_s: float
    t2_s: float
    focus_t1: FocusReport
    focus_t2: FocusReport


def _check_cw_compatible(mode: str, pulse: PulseSpec | None):
    if pulse is not None and not isinstance(pulse, ContinuousWave):
        raise ValueError(f"mode {mode!r} is continuous-wave; it takes no pulse envelope")


def evaluate_raster(
    cfg: ArrayConfig,
    env: PropagationEnv,
    pulse: PulseSpec | None,
    mode: str,
    grid: GridSpec,
) -> RasterGrid:
    """Evaluate |pattern| on the grid at the grid's snapshot time.

    Modes:
        cw          continuous-wave phased array (zero offsets required);
                    the pattern has no range dependence
        fda_exact   array factor with per-element delays kept
        fda_approx  narrowband array factor
        pulsed      pulse envelope times the phased-array factor
                    (zero offsets and a pulse required)

    Cells are evaluated in a fixed order, so identical inputs produce
    bit-identical rasters.
    """
    if mode not in RASTER_MODES:
        raise ValueError(f"mode must be one of {RASTER_MODES}, got {mode!r}")
    r = grid.range_axis
    theta = grid.theta_axis

    if mode == "pulsed":
        if pulse is None:
            raise ValueError("pulsed mode requires a pulse envelope")
        if not cfg.is_phased_array:
            raise ValueError("pulsed mode requires a zero-offset (phased array) config")
        # Envelope and angle pattern factorize; the array factor row is
        # range-independent because the offsets are zero.
        af_row = af_values(cfg, env, grid.t_s, r[0], theta)
        env_col = envelope(pulse, grid.t_s - r / env.wave_speed_m_per_s)
        values = np.abs(env_col[:, np.newaxis] * af_row[np.newaxis, :])
    elif mode == "cw":
        _check_cw_compatible(mode, pulse)
        if not cfg.is_phased_array:
            raise ValueError(
                "cw mode requires a zero-offset config; use fda_exact/fda_approx "
                "for offset arrays"
            )
        af_row = np.abs(af_values(cfg, env, grid.t_s, r[0], theta))
        values = np.broadcast_to(af_row, (grid.n_range, grid.n_theta)).copy()
    else:
        _check_cw_compatible(mode, pulse)
        values = np.abs(
            af_values(cfg, env, grid.t_s, r[:, np.newaxis], theta[np.newaxis, :],
                      exact=(mode == "fda_exact"))
        )

    return RasterGrid(
        spec=grid,
        values=values,
        mode=mode,
        fingerprint=config_fingerprint(cfg, env, pulse),
    )


def equivalent_pa_magnitudes(cfg: ArrayConfig, env: PropagationEnv,
                             grid: GridSpec) -> NDArray[np.float64]:
    """|pattern| of the per-range equivalent phased array on the grid.

    Every range row gets its own phased-array twin (offsets folded into
    phases at that row's t - r/c), then the narrowband array factor is
    evaluated.  Row-for-row this reproduces the fda_approx raster of cfg.
    """
    from .patterns import equivalent_phased_array

    r = grid.range_axis
    theta = grid.theta_axis
    values = np.empty((grid.n_range, grid.n_theta))
    for i in range(grid.n_range):
        pa = equivalent_phased_array(cfg, env, grid.t_s, float(r[i]))
        values[i] = np.abs(af_values(pa, env, grid.t_s, float(r[i]), theta))
    return values


def _half_max_interval(x: NDArray[np.float64], profile: NDArray[np.float64],
                       peak_idx: int) -> tuple[float, float]:
    """Half-maximum interval around profile[peak_idx], interpolated.

    Walks outward to the nearest crossing on each side; a side that never
    drops below half maximum is clamped at the grid edge.
    """
    half = profile[peak_idx] / 2.0
    i = peak_idx
    while i > 0 and profile[i - 1] >= half:
        i -= 1
    if i == 0:
        lo = float(x[0])
    else:
        frac = (half - profile[i - 1]) / (profile[i] - profile[i - 1])
        lo = float(x[i - 1] + (x[i] - x[i - 1]) * frac)
    i = peak_idx
    last = len(profile) - 1
    while i < last and profile[i + 1] >= half:
        i += 1
    if i == last:
        hi = float(x[last])
    else:
        frac = (profile[i] - half) / (profile[i] - profile[i + 1])
        hi = float(x[i] + (x[i + 1] - x[i]) * frac)
    return lo, hi


def _peak_indices(values: NDArray[np.float64]) -> tuple[int, int]:
    # np.argmax on the row-major array breaks ties toward the lowest range
    # index, then the lowest angle index.
    flat = int(np.argmax(values))
    return flat // values.shape[1], flat % values.shape[1]


def find_focus(raster: RasterGrid) -> FocusReport:
    """Locate the raster's global peak and half-maximum extents.

    Ties go to the lowest range index, then the lowest angle index.
    Raises NoFocusError for an all-zero raster.
    """
    i, j = _peak_indices(raster.values)
    peak_mag = float(raster.values[i, j])
    if peak_mag == 0.0:
        raise NoFocusError("raster is identically zero; no focus to locate")

    r_axis = raster.range_axis
    theta_axis = raster.theta_axis
    r_lo, r_hi = _half_max_interval(r_axis, raster.values[:, j], i)
    th_lo, th_hi = _half_max_interval(theta_axis, raster.values[i, :], j)
    return FocusReport(
        peak_r_m=float(r_axis[i]),
        peak_theta_rad=float(theta_axis[j]),
        peak_mag=peak_mag,
        range_extent_m=r_hi - r_lo,
        theta_extent_rad=th_hi - th_lo,
        range_band_m=(r_lo, r_hi),
        theta_band_rad=(th_lo, th_hi),
    )


def _assert_peak_on_grid(raster: RasterGrid, report: FocusReport):
    i, j = _peak_indices(raster.values)
    column = raster.values[:, j]
    range_variant = float(np.ptp(column)) > 1e-9 * report.peak_mag
    if range_variant and (i == 0 or i == raster.spec.n_range - 1):
        raise PeakEscapedError(
            f"peak sits on the range boundary at t={raster.spec.t_s}; "
            "widen or recenter the grid"
        )


def drift_estimate(
    cfg: ArrayConfig,
    env: PropagationEnv,
    pulse: PulseSpec | None,
    mode: str,
    grid_template: GridSpec,
    t1_s: float,
    t2_s: float,
) -> DriftReport:
    """Peak range speed between snapshots at t1 and t2 on the same grid.

    Narrowband FDA and pulsed patterns drift at the wave speed; a
    continuous-wave phased array reports zero (its flat range profile is
    tie-broken to the same cell at both times).  Raises PeakEscapedError
    when a snapshot has no energy on the grid or its peak is pinned to a
    range boundary of a range-variant pattern.
    """
    if t1_s == t2_s:
        raise ValueError("need two distinct snapshot times")
    reports = []
    for t in (t1_s, t2_s):
        raster = evaluate_raster(cfg, env, pulse, mode, grid_template.at_time(t))
        try:
            report = find_focus(raster)
        except NoFocusError as err:
            raise PeakEscapedError(
                f"no energy on the grid at t={t}; the pattern has left the window"
            ) from err
        _assert_peak_on_grid(raster, report)
        reports.append(report)

    dt = t2_s - t1_s
    return DriftReport(
        range_speed_m_per_s=(reports[1].peak_r_m - reports[0].peak_r_m) / dt,
        theta_rate_rad_per_s=(reports[1].peak_theta_rad - reports[0].peak_theta_rad) / dt,
        t1_s=t1_s,
        t2_s=t2_s,
        focus_t1=reports[0],
        focus_t2=reports[1],
    )


def range_cut(raster: RasterGrid, theta_rad: float) -> NDArray[np.float64]:
    """Magnitude-versus-range profile at the grid column nearest theta_rad."""
    spec = raster.spec
    if not (spec.theta_min_rad <= theta_rad <= spec.theta_max_rad):
        raise ValueError(
            f"theta {theta_rad} outside grid [{spec.theta_min_rad}, {spec.theta_max_rad}]"
        )
    j = int(np.argmin(np.abs(raster.theta_axis - theta_rad)))
    return raster.values[:, j].copy()
