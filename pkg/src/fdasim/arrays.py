"""Linear array geometry and per-element excitation configuration.

A linear array is described by its element count, uniform spacing, carrier
frequency, and three per-element vectors: amplitude weights, phase shifts,
and frequency offsets.  A phased array has all offsets equal to zero; a
frequency diverse array (FDA) carries small nonzero offsets.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

SPEED_OF_LIGHT = 299_792_458.0
"Exact vacuum speed of light in m/s."


def _as_element_vector(values: ArrayLike, n: int, name: str) -> NDArray[np.float64]:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (n,):
        raise ValueError(f"{name} must have exactly {n} entries, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ArrayConfig:
    """Geometry and excitation of a uniform linear array.

    Attributes:
        n_elements: Number of elements N (>= 1). Element 0 sits at the
            reference position and radiates at the carrier frequency.
        spacing_m: Inter-element spacing d in meters (> 0).
        carrier_hz: Carrier frequency f0 in Hz (> 0), the frequency of
            element 0.
        weights: Per-element amplitude weights (linear scale, >= 0).
        phases_rad: Per-element phase shifts in radians.
        freq_offsets_hz: Per-element frequency offsets in Hz; element n
            radiates at carrier_hz + freq_offsets_hz[n].
    """

    n_elements: int
    spacing_m: float
    carrier_hz: float
    weights: NDArray[np.float64]
    phases_rad: NDArray[np.float64]
    freq_offsets_hz: NDArray[np.float64]

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError(f"n_elements must be >= 1, got {self.n_elements}")
        if not (np.isfinite(self.spacing_m) and self.spacing_m > 0):
            raise ValueError(f"spacing_m must be positive, got {self.spacing_m}")
        if not (np.isfinite(self.carrier_hz) and self.carrier_hz > 0):
            raise ValueError(f"carrier_hz must be positive, got {self.carrier_hz}")
        object.__setattr__(
            self, "weights", _as_element_vector(self.weights, self.n_elements, "weights")
        )
        object.__setattr__(
            self, "phases_rad",
            _as_element_vector(self.phases_rad, self.n_elements, "phases_rad"),
        )
        object.__setattr__(
            self, "freq_offsets_hz",
            _as_element_vector(self.freq_offsets_hz, self.n_elements, "freq_offsets_hz"),
        )
        if np.any(self.weights < 0):
            raise ValueError("weights must be >= 0")

    @property
    def weight_sum(self) -> float:
        """Sum of element weights; the peak attainable pattern magnitude."""
        return float(np.sum(self.weights))

    @property
    def is_phased_array(self) -> bool:
        """True when every frequency offset is exactly zero."""
        return bool(np.all(self.freq_offsets_hz == 0.0))


@dataclass(frozen=True)
class PropagationEnv:
    """Propagation medium and transmit/receive gain constants.

    tx_gains may be a scalar (applied to all elements) or a per-element
    sequence; it is combined with the receive gain when forming received
    signals.
    """

    wave_speed_m_per_s: float = SPEED_OF_LIGHT
    rx_gain: float = 1.0
    tx_gains: float | NDArray[np.float64] = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.wave_speed_m_per_s) and self.wave_speed_m_per_s > 0):
            raise ValueError(f"wave speed must be positive, got {self.wave_speed_m_per_s}")
        if not (np.isfinite(self.rx_gain) and self.rx_gain > 0):
            raise ValueError(f"rx_gain must be positive, got {self.rx_gain}")
        tx = np.asarray(self.tx_gains, dtype=float)
        if not (np.all(np.isfinite(tx)) and np.all(tx > 0)):
            raise ValueError("tx_gains must be finite and positive")
        if tx.ndim == 0:
            object.__setattr__(self, "tx_gains", float(tx))
        else:
            tx = tx.copy()
            tx.flags.writeable = False
            object.__setattr__(self, "tx_gains", tx)

    def tx_gain_vector(self, n_elements: int) -> NDArray[np.float64]:
        """Per-element transmit gains broadcast to n_elements entries."""
        tx = np.asarray(self.tx_gains, dtype=float)
        if tx.ndim == 0:
            return np.full(n_elements, float(tx))
        if tx.shape != (n_elements,):
            raise ValueError(
                f"tx_gains has {tx.shape[0]} entries but the array has {n_elements} elements"
            )
        return tx


@dataclass(frozen=True)
class ValidityReport:
    """Margins against the far-field and narrowband modeling assumptions."""

    farfield_ok: bool
    farfield_margin: float
    narrowband_ok: bool
    narrowband_margin: float


def half_wavelength(carrier_hz: float, wave_speed_m_per_s: float = SPEED_OF_LIGHT) -> float:
    "Half-wavelength spacing for the given carrier."
    if carrier_hz <= 0:
        raise ValueError(f"carrier_hz must be positive, got {carrier_hz}")
    return 0.5 * wave_speed_m_per_s / carrier_hz


def make_phased_array(
    n: int,
    spacing_m: float,
    carrier_hz: float,
    weights: ArrayLike,
    phases: ArrayLike,
) -> ArrayConfig:
    """Build a phased-array configuration (all frequency offsets zero).

    Args:
        n: Element count.
        spacing_m: Element spacing in meters.
        carrier_hz: Common excitation frequency in Hz.
        weights: n amplitude weights.
        phases: n phase shifts in radians.
    """
    return ArrayConfig(
        n_elements=n,
        spacing_m=spacing_m,
        carrier_hz=carrier_hz,
        weights=np.asarray(weights, dtype=float),
        phases_rad=np.asarray(phases, dtype=float),
        freq_offsets_hz=np.zeros(n),
    )


def make_fda_linear(
    n: int,
    spacing_m: float,
    carrier_hz: float,
    base_offset_hz: float,
    weights: ArrayLike,
    phases: ArrayLike,
) -> ArrayConfig:
    """Build an FDA with linearly progressing offsets n * base_offset_hz.

    Element 0 stays at the carrier frequency; element n radiates at
    carrier_hz + n * base_offset_hz.  A zero base offset reproduces
    make_phased_array exactly.
    """
    if not np.isfinite(base_offset_hz):
        raise ValueError("base_offset_hz must be finite")
    return ArrayConfig(
        n_elements=n,
        spacing_m=spacing_m,
        carrier_hz=carrier_hz,
        weights=np.asarray(weights, dtype=float),
        phases_rad=np.asarray(phases, dtype=float),
        freq_offsets_hz=np.arange(n, dtype=float) * base_offset_hz,
    )


def _chebyshev_value(order: int, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Chebyshev polynomial T_order(x), extended hyperbolically for |x| > 1."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    inside = np.abs(x) <= 1.0
    out[inside] = np.cos(order * np.arccos(x[inside]))
    above = x > 1.0
    out[above] = np.cosh(order * np.arccosh(x[above]))
    below = x < -1.0
    out[below] = (-1.0) ** order * np.cosh(order * np.arccosh(-x[below]))
    return out


def chebyshev_taper(n: int, sidelobe_db: float) -> NDArray[np.float64]:
    """Dolph-Chebyshev amplitude weights for an n-element linear array.

    The resulting continuous-wave angle pattern (at half-wavelength
    spacing) is equiripple with every sidelobe `sidelobe_db` decibels
    below the mainlobe peak.

    Parameters
    ----------
    n : int
        Number of elements (>= 1).
    sidelobe_db : float
        Sidelobe attenuation magnitude in dB (> 0); 30 gives -30 dB
        sidelobes.

    Returns
    -------
    ndarray
        Symmetric weights normalized so the maximum weight is 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (np.isfinite(sidelobe_db) and sidelobe_db > 0):
        raise ValueError(f"sidelobe_db must be positive, got {sidelobe_db}")
    if n == 1:
        return np.array([1.0])

    # Sample T_{n-1} along the unit circle and return to element space with
    # an inverse DFT; the even case needs a half-sample phase shift.
    order = n - 1
    ratio = 10.0 ** (sidelobe_db / 20.0)
    x0 = np.cosh(np.arccosh(ratio) / order)
    k = np.arange(n)
    samples = _chebyshev_value(order, x0 * np.cos(np.pi * k / n))
    if n % 2:
        w = np.real(np.fft.fft(samples))
        half = (n + 1) // 2
        w = np.concatenate((w[half - 1:0:-1], w[:half]))
    else:
        shifted = samples * np.exp(1j * np.pi * k / n)
        w = np.real(np.fft.fft(shifted))
        half = n // 2 + 1
        w = np.concatenate((w[half - 1:0:-1], w[1:half]))
    return w / np.max(w)


def chebyshev_offsets(n: int, max_offset_hz: float, sidelobe_db: float) -> NDArray[np.float64]:
    """Frequency offsets shaped like a Chebyshev taper profile.

    The taper is rescaled onto [0, max_offset_hz] by min-max
    normalization, giving a bell-shaped offset progression that peaks at
    the center elements.  Constant tapers (n <= 2) map to all-zero
    offsets since min-max rescaling is undefined for them.
    """
    if not (np.isfinite(max_offset_hz) and max_offset_hz > 0):
        raise ValueError(f"max_offset_hz must be positive, got {max_offset_hz}")
    taper = chebyshev_taper(n, sidelobe_db)
    span = np.max(taper) - np.min(taper)
    if span == 0.0:
        return np.zeros(n)
    return (taper - np.min(taper)) / span * max_offset_hz


def check_validity(
    cfg: ArrayConfig,
    env: PropagationEnv,
    r_m: float,
    farfield_factor: float = 100.0,
    narrowband_factor: float = 1000.0,
) -> ValidityReport:
    """Check the far-field and narrowband assumptions at range r_m.

    The far-field condition requires the range to dominate the aperture,
    r >= farfield_factor * (N-1)d.  The narrowband condition requires the
    wave speed to dominate the offset-aperture product,
    c >= narrowband_factor * N * d * max|offset|.  Margins report the
    corresponding ratios (infinite for a single element or a zero-offset
    array).
    """
    if not (np.isfinite(r_m) and r_m > 0):
        raise ValueError(f"r_m must be positive, got {r_m}")
    if farfield_factor <= 1 or narrowband_factor <= 1:
        raise ValueError("validity factors must be > 1")

    aperture = (cfg.n_elements - 1) * cfg.spacing_m
    farfield_margin = np.inf if aperture == 0 else r_m / aperture
    farfield_ok = r_m >= farfield_factor * aperture

    offset_scale = cfg.n_elements * cfg.spacing_m * np.max(np.abs(cfg.freq_offsets_hz))
    c = env.wave_speed_m_per_s
    narrowband_margin = np.inf if offset_scale == 0 else c / offset_scale
    narrowband_ok = c >= narrowband_factor * offset_scale

    return ValidityReport(
        farfield_ok=bool(farfield_ok),
        farfield_margin=float(farfield_margin),
        narrowband_ok=bool(narrowband_ok),
        narrowband_margin=float(narrowband_margin),
    )
