"""Array-factor and received-signal evaluators for linear arrays.

The array factor (AF) of an N-element uniform linear array at observation
time t, range r, and angle theta off broadside is the weighted sum

    AF(t, r, theta) = sum_n w_n exp(j [2 pi f0 n d sin(theta) / c
                                       + 2 pi df_n (t - r/c - n d sin(theta)/c)
                                       + phi_n])

with n = 0..N-1.  Dropping the per-element term inside the offset factor
(valid while N d df_n << c) gives the narrowband form whose time and range
dependence collapses to t - r/c, so patterns translate outward in range at
the wave speed.

Common factors that do not shape the pattern (the 1/r^2 amplitude and the
global carrier exp(j 2 pi f0 (t - r/c))) are omitted from af_* and retained
by received_signal.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .arrays import ArrayConfig, PropagationEnv
from .pulses import PulseSpec, envelope

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FieldPoint:
    """Observation point: time in seconds, range in meters, angle in radians.

    The angle is measured off broadside and must lie in [-pi/2, pi/2];
    the range is measured from the reference element and must be positive.
    """

    t_s: float
    r_m: float
    theta_rad: float

    def __post_init__(self):
        if not np.isfinite(self.t_s):
            raise ValueError("t_s must be finite")
        if not (np.isfinite(self.r_m) and self.r_m > 0):
            raise ValueError(f"r_m must be positive, got {self.r_m}")
        if not (np.isfinite(self.theta_rad) and abs(self.theta_rad) <= math.pi / 2):
            raise ValueError(f"theta_rad must lie in [-pi/2, pi/2], got {self.theta_rad}")


def af_values(cfg: ArrayConfig, env: PropagationEnv, t_s, r_m, theta_rad,
              exact: bool = False) -> NDArray[np.complex128]:
    """Vectorized array factor over broadcastable time/range/angle arrays.

    The per-element phase is accumulated as geometry + (static phase +
    offset phase) in a fixed order, and the element sum runs over the
    trailing axis, so identical inputs always reproduce identical floats.
    """
    c = env.wave_speed_m_per_s
    t = np.asarray(t_s, dtype=float)
    r = np.asarray(r_m, dtype=float)
    theta = np.asarray(theta_rad, dtype=float)
    n = np.arange(cfg.n_elements, dtype=float)

    # Per-element propagation advance n d sin(theta) / c, trailing axis = element.
    advance = np.sin(theta)[..., np.newaxis] * n * (cfg.spacing_m / c)
    geometry = (TWO_PI * cfg.carrier_hz) * advance
    tau = np.asarray(t - r / c)[..., np.newaxis]
    if exact:
        tau = tau - advance
    phase = geometry + (cfg.phases_rad + TWO_PI * cfg.freq_offsets_hz * tau)
    return np.sum(cfg.weights * np.exp(1j * phase), axis=-1)


def af_exact(cfg: ArrayConfig, env: PropagationEnv, point: FieldPoint) -> complex:
    """Array factor with the per-element delay kept inside the offset term."""
    return complex(af_values(cfg, env, point.t_s, point.r_m, point.theta_rad, exact=True))


def af_approx(cfg: ArrayConfig, env: PropagationEnv, point: FieldPoint) -> complex:
    """Narrowband array factor; depends on t and r only through t - r/c."""
    return complex(af_values(cfg, env, point.t_s, point.r_m, point.theta_rad, exact=False))


def received_signal(
    cfg: ArrayConfig,
    env: PropagationEnv,
    pulse: PulseSpec,
    point: FieldPoint,
    exact_geometry: bool = False,
) -> complex:
    """Superposed received signal including gains, spreading, and carrier.

    Each element n contributes its excitation
    s_n(u) = w_n * envelope(pulse, u) * exp(j (2 pi (f0 + df_n) u + phi_n))
    evaluated at the retarded time.  With exact_geometry the per-element
    range r_n = r - n d sin(theta) sets both the 1/r_n^2 spreading and the
    delay; otherwise a common 1/r^2 and shared delay r/c are used with the
    per-element advance n d sin(theta)/c kept inside s_n.

    Raises ValueError if exact_geometry is set and some r_n <= 0.
    """
    c = env.wave_speed_m_per_s
    n = np.arange(cfg.n_elements, dtype=float)
    sin_theta = math.sin(point.theta_rad)
    tx = env.tx_gain_vector(cfg.n_elements)

    if exact_geometry:
        r_n = point.r_m - n * cfg.spacing_m * sin_theta
        if np.any(r_n <= 0):
            raise ValueError(
                "per-element range is non-positive; the point is inside the aperture"
            )
        tau = point.t_s - r_n / c
        amplitude = tx * env.rx_gain / (r_n * r_n)
    else:
        tau = (point.t_s - point.r_m / c) + n * cfg.spacing_m * sin_theta / c
        amplitude = tx * env.rx_gain / (point.r_m * point.r_m)

    carrier = np.exp(1j * (TWO_PI * (cfg.carrier_hz + cfg.freq_offsets_hz) * tau
                           + cfg.phases_rad))
    excitation = cfg.weights * envelope(pulse, tau) * carrier
    return complex(np.sum(amplitude * excitation))


def pulsed_pattern(
    cfg: ArrayConfig,
    env: PropagationEnv,
    pulse: PulseSpec,
    point: FieldPoint,
) -> complex:
    """Pattern of a phased array excited by a pulse envelope.

    The envelope rides the common delay t - r/c (narrowband envelope, one
    evaluation shared by all elements) and multiplies the narrowband array
    factor.  Only zero-offset configurations are accepted; a pulsed FDA
    has no defined pattern here.
    """
    if not cfg.is_phased_array:
        raise ValueError("pulsed excitation requires a zero-offset (phased array) config")
    tau = point.t_s - point.r_m / env.wave_speed_m_per_s
    return envelope(pulse, tau) * af_approx(cfg, env, point)


def equivalent_phases(
    cfg: ArrayConfig, env: PropagationEnv, t_s: float, r_m: float
) -> NDArray[np.float64]:
    """Phase shifts that make a phased array mimic the FDA at one (t, r).

    Returns phi_n + 2 pi df_n (t - r/c).  A phased array with these phases,
    the same weights, and zero offsets has the same narrowband array factor
    as cfg at that time and range, for every angle.  The phase term is
    accumulated exactly as in af_values, so the match is bit-identical.
    """
    tau = t_s - r_m / env.wave_speed_m_per_s
    return cfg.phases_rad + TWO_PI * cfg.freq_offsets_hz * tau


def equivalent_phased_array(
    cfg: ArrayConfig, env: PropagationEnv, t_s: float, r_m: float
) -> ArrayConfig:
    """Phased-array twin of cfg at one (t, r): offsets zeroed, phases rotated."""
    return ArrayConfig(
        n_elements=cfg.n_elements,
        spacing_m=cfg.spacing_m,
        carrier_hz=cfg.carrier_hz,
        weights=cfg.weights,
        phases_rad=equivalent_phases(cfg, env, t_s, r_m),
        freq_offsets_hz=np.zeros(cfg.n_elements),
    )


def to_db(mag, peak: float, floor_db: float = -60.0):
    """Magnitude in dB relative to peak, clamped at floor_db.

    Zero magnitudes map to the floor.  Accepts scalars or arrays.
    """
    if not (np.isfinite(peak) and peak > 0):
        raise ValueError(f"peak must be positive, got {peak}")
    if not (np.isfinite(floor_db) and floor_db < 0):
        raise ValueError(f"floor_db must be negative, got {floor_db}")
    mag_arr = np.asarray(mag, dtype=float)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag_arr / peak)
    out = np.maximum(db, floor_db)
    if np.ndim(mag) == 0:
        return float(out)
    return out
