import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad
from scipy.optimize import brentq

from fdasim import ContinuousWave, GaussianPulse, RectPulse, envelope, fwhm

# frozen closed form 2 sqrt(2 ln 2), cross-checked by the root-find oracle below
FWHM_FACTOR = 2.3548200450309493

finite_times = st.floats(min_value=-10.0, max_value=10.0,
                         allow_nan=False, allow_infinity=False)


class TestEnvelope:
    def test_cw_is_one_everywhere(self):
        cw = ContinuousWave()
        for t in (-1e6, -1.0, 0.0, 3e-3, 1e9):
            assert envelope(cw, t) == 1.0

    def test_gaussian_peak(self):
        pulse = GaussianPulse(center_s=-1e-3, sigma_s=0.15e-3)
        assert envelope(pulse, -1e-3) == 1.0

    def test_gaussian_half_maximum_at_fwhm(self):
        # FWHM of 0.35 ms at sigma = 0.15 ms: exactly half height at the edges
        pulse = GaussianPulse(center_s=0.0, sigma_s=0.15e-3)
        width = fwhm(pulse)
        assert width == pytest.approx(0.35e-3, abs=0.005e-3)
        assert envelope(pulse, width / 2) == pytest.approx(0.5, abs=1e-12)
        assert envelope(pulse, -width / 2) == pytest.approx(0.5, abs=1e-12)

    def test_rect_outside_support(self):
        pulse = RectPulse(center_s=0.0, width_s=0.27e-3)
        assert envelope(pulse, 0.2e-3) == 0.0
        assert envelope(pulse, 0.0) == 1.0

    def test_rect_half_open_edges(self):
        pulse = RectPulse(center_s=1.0, width_s=0.5)
        assert envelope(pulse, 0.75) == 1.0   # leading edge included
        assert envelope(pulse, 1.25) == 0.0   # trailing edge excluded
        assert envelope(pulse, np.nextafter(0.75, 0.0)) == 0.0
        assert envelope(pulse, np.nextafter(1.25, 0.0)) == 1.0

    def test_abutting_rects_tile(self):
        first = RectPulse(center_s=0.25, width_s=0.5)
        second = RectPulse(center_s=0.75, width_s=0.5)
        t = np.linspace(0.0, 1.0, 1001, endpoint=False)
        total = envelope(first, t) + envelope(second, t)
        assert np.all(total == 1.0)

    def test_vectorized(self):
        pulse = GaussianPulse(center_s=0.0, sigma_s=1.0)
        t = np.array([-1.0, 0.0, 1.0])
        out = envelope(pulse, t)
        assert out.shape == (3,)
        assert out[1] == 1.0

    @settings(max_examples=200, deadline=None)
    @given(t=finite_times, center=finite_times,
           scale=st.floats(min_value=1e-3, max_value=10.0))
    def test_bounded_unit_interval(self, t, center, scale):
        for pulse in (ContinuousWave(),
                      RectPulse(center_s=center, width_s=scale),
                      GaussianPulse(center_s=center, sigma_s=scale)):
            value = envelope(pulse, t)
            assert 0.0 <= value <= 1.0

    @settings(max_examples=100, deadline=None)
    @given(z=st.floats(min_value=-38.0, max_value=38.0),
           center=finite_times,
           sigma=st.floats(min_value=1e-3, max_value=10.0))
    def test_gaussian_strictly_positive(self, z, center, sigma):
        # positive wherever exp(-z^2/2) is representable; the float64 tail
        # underflows to exactly 0 beyond |z| of about 38.6
        t = center + z * sigma
        assert envelope(GaussianPulse(center_s=center, sigma_s=sigma), t) > 0.0

    @settings(max_examples=25, deadline=None)
    @given(center=st.floats(min_value=-1.0, max_value=1.0),
           width=st.floats(min_value=1e-3, max_value=1.0))
    def test_rect_integrates_to_width(self, center, width):
        pulse = RectPulse(center_s=center, width_s=width)
        lo = center - width / 2
        hi = center + width / 2
        area, _ = quad(lambda t: envelope(pulse, t), lo - 1.0, hi + 1.0,
                       points=[lo, hi], limit=200)
        assert area == pytest.approx(width, rel=1e-6)


class TestFwhm:
    def test_rect_is_width(self):
        assert fwhm(RectPulse(center_s=0.0, width_s=0.27e-3)) == 0.27e-3

    def test_gaussian_closed_form(self):
        assert fwhm(GaussianPulse(center_s=0.0, sigma_s=1.0)) == pytest.approx(
            FWHM_FACTOR, rel=1e-12
        )
        assert fwhm(GaussianPulse(center_s=0.0, sigma_s=0.15e-3)) == pytest.approx(
            0.15e-3 * FWHM_FACTOR, rel=1e-12
        )

    def test_gaussian_against_root_find(self):
        # independent oracle: solve envelope(t) = 1/2 numerically
        pulse = GaussianPulse(center_s=0.3, sigma_s=1.0)
        right = brentq(lambda t: envelope(pulse, t) - 0.5, 0.3, 0.3 + 6.0,
                       xtol=1e-14, rtol=1e-15)
        assert fwhm(pulse) == pytest.approx(2.0 * (right - 0.3), rel=1e-10)

    def test_cw_has_no_fwhm(self):
        with pytest.raises(ValueError):
            fwhm(ContinuousWave())


class TestValidation:
    def test_rejects_nonpositive_durations(self):
        with pytest.raises(ValueError):
            RectPulse(center_s=0.0, width_s=0.0)
        with pytest.raises(ValueError):
            GaussianPulse(center_s=0.0, sigma_s=-1.0)

    def test_rejects_nonfinite_center(self):
        with pytest.raises(ValueError):
            RectPulse(center_s=math.inf, width_s=1.0)
        with pytest.raises(ValueError):
            GaussianPulse(center_s=math.nan, sigma_s=1.0)
