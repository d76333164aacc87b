"""Excitation envelopes: continuous wave, rectangular, and Gaussian pulses."""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

GAUSSIAN_FWHM_FACTOR = 2.0 * math.sqrt(2.0 * math.log(2.0))
"Exact full-width-at-half-maximum to sigma ratio, about 2.35482."


@dataclass(frozen=True)
class ContinuousWave:
    "Unmodulated constant-amplitude excitation; the envelope is 1 everywhere."


@dataclass(frozen=True)
class RectPulse:
    """Rectangular pulse of unit height.

    The support is the half-open interval [center - width/2, center + width/2)
    so abutting pulses tile the time axis without double counting.
    """

    center_s: float
    width_s: float

    def __post_init__(self):
        if not np.isfinite(self.center_s):
            raise ValueError("center_s must be finite")
        if not (np.isfinite(self.width_s) and self.width_s > 0):
            raise ValueError(f"width_s must be positive, got {self.width_s}")


@dataclass(frozen=True)
class GaussianPulse:
    "Gaussian envelope exp(-(t - center)^2 / (2 sigma^2)), untruncated."

    center_s: float
    sigma_s: float

    def __post_init__(self):
        if not np.isfinite(self.center_s):
            raise ValueError("center_s must be finite")
        if not (np.isfinite(self.sigma_s) and self.sigma_s > 0):
            raise ValueError(f"sigma_s must be positive, got {self.sigma_s}")


PulseSpec = Union[ContinuousWave, RectPulse, GaussianPulse]


def envelope(pulse: PulseSpec, t_s):
    """Envelope amplitude in [0, 1] at time(s) t_s.

    Accepts a scalar or ndarray of times and returns a matching shape.
    """
    t = np.asarray(t_s, dtype=float)
    if isinstance(pulse, ContinuousWave):
        out = np.ones_like(t)
    elif isinstance(pulse, RectPulse):
        lo = pulse.center_s - pulse.width_s / 2.0
        hi = pulse.center_s + pulse.width_s / 2.0
        out = np.where((t >= lo) & (t < hi), 1.0, 0.0)
    elif isinstance(pulse, GaussianPulse):
        z = (t - pulse.center_s) / pulse.sigma_s
        out = np.exp(-0.5 * z * z)
    else:
        raise TypeError(f"unknown pulse spec {type(pulse).__name__}")
    if np.ndim(t_s) == 0:
        return float(out)
    return out


def fwhm(pulse: PulseSpec) -> float:
    """Full width at half maximum of the pulse envelope.

    Rectangular pulses return their width; Gaussian pulses return
    2*sqrt(2 ln 2)*sigma.  A continuous wave has unbounded support and
    raises ValueError.
    """
    if isinstance(pulse, RectPulse):
        return pulse.width_s
    if isinstance(pulse, GaussianPulse):
        return GAUSSIAN_FWHM_FACTOR * pulse.sigma_s
    if isinstance(pulse, ContinuousWave):
        raise ValueError("a continuous wave has unbounded support and no FWHM")
    raise TypeError(f"unknown pulse spec {type(pulse).__name__}")
