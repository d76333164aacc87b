import math

import numpy as np
import pytest

from fdasim import (
    ArrayConfig,
    ContinuousWave,
    FieldPoint,
    GaussianPulse,
    PropagationEnv,
    RectPulse,
    af_approx,
    af_exact,
    af_values,
    envelope,
    equivalent_phases,
    equivalent_phased_array,
    make_fda_linear,
    make_phased_array,
    pulsed_pattern,
    received_signal,
    to_db,
)

C = 3e8


def random_config(rng, n_max=20, fda=True):
    n = int(rng.integers(1, n_max + 1))
    carrier = rng.uniform(1e9, 2e10)
    spacing = 0.5 * C / carrier * rng.uniform(0.5, 1.5)
    weights = rng.uniform(0.0, 1.0, n)
    weights[int(rng.integers(0, n))] = 1.0
    phases = rng.uniform(-math.pi, math.pi, n)
    offsets = rng.uniform(-1e4, 1e4, n) if fda else np.zeros(n)
    return ArrayConfig(n, spacing, carrier, weights, phases, offsets)


def random_point(rng):
    return FieldPoint(
        t_s=rng.uniform(-2e-3, 2e-3),
        r_m=rng.uniform(1e3, 4e5),
        theta_rad=rng.uniform(-math.pi / 2, math.pi / 2),
    )


class TestFieldPoint:
    def test_rejects_bad_points(self):
        with pytest.raises(ValueError):
            FieldPoint(0.0, -1.0, 0.0)
        with pytest.raises(ValueError):
            FieldPoint(0.0, 1.0, 2.0)
        with pytest.raises(ValueError):
            FieldPoint(math.inf, 1.0, 0.0)

    def test_accepts_endfire(self):
        FieldPoint(0.0, 1.0, math.pi / 2)
        FieldPoint(0.0, 1.0, -math.pi / 2)


class TestArrayFactor:
    def test_single_element_is_one(self, env_round):
        cfg = make_phased_array(1, 0.015, 1e10, [1.0], [0.0])
        for point in (FieldPoint(0.0, 1e3, 0.0), FieldPoint(1e-3, 2e5, 0.7),
                      FieldPoint(-5e-4, 1e4, -1.2)):
            assert af_exact(cfg, env_round, point) == 1.0 + 0.0j
            assert af_approx(cfg, env_round, point) == 1.0 + 0.0j

    def test_two_element_endfire_null(self, env_round):
        # half-wavelength pair at theta = pi/2: contributions 1 and exp(j pi)
        cfg = make_phased_array(2, 0.015, 1e10, [1.0, 1.0], [0.0, 0.0])
        value = af_exact(cfg, env_round, FieldPoint(0.0, 1e5, math.pi / 2))
        assert abs(value) < 1e-12 * cfg.weight_sum

    def test_broadside_sum_of_weights(self, env_round):
        weights = [0.3, 0.8, 1.0, 0.8, 0.3]
        cfg = make_phased_array(5, 0.02, 7e9, weights, np.zeros(5))
        for t, r in [(0.0, 1e3), (1e-3, 2e5), (-2e-3, 3e4)]:
            value = af_exact(cfg, env_round, FieldPoint(t, r, 0.0))
            assert value == pytest.approx(sum(weights), abs=1e-12)
            assert af_approx(cfg, env_round, FieldPoint(t, r, 0.0)) == value

    def test_zero_offsets_make_exact_equal_approx(self, env_round):
        rng = np.random.default_rng(7)
        for _ in range(50):
            cfg = random_config(rng, fda=False)
            p = random_point(rng)
            assert af_exact(cfg, env_round, p) == af_approx(cfg, env_round, p)

    def test_translation_identity(self, env_round):
        rng = np.random.default_rng(11)
        for _ in range(300):
            cfg = random_config(rng)
            p = random_point(rng)
            dt = rng.uniform(-0.9 * p.r_m / C, 1e-3)
            shifted = FieldPoint(p.t_s + dt, p.r_m + C * dt, p.theta_rad)
            diff = abs(af_approx(cfg, env_round, shifted) - af_approx(cfg, env_round, p))
            assert diff <= 1e-12 * cfg.weight_sum

    def test_exact_approx_discrepancy_bound(self, env_round):
        rng = np.random.default_rng(13)
        for _ in range(300):
            cfg = random_config(rng)
            p = random_point(rng)
            diff = abs(af_exact(cfg, env_round, p) - af_approx(cfg, env_round, p))
            n = np.arange(cfg.n_elements)
            bound = np.sum(cfg.weights * 2 * np.pi * np.abs(cfg.freq_offsets_hz)
                           * n * cfg.spacing_m / C)
            assert diff <= bound + 1e-13 * cfg.weight_sum

    def test_triangle_bound_and_equality(self, env_round):
        rng = np.random.default_rng(17)
        for _ in range(200):
            cfg = random_config(rng)
            p = random_point(rng)
            for fn in (af_exact, af_approx):
                assert abs(fn(cfg, env_round, p)) <= cfg.weight_sum * (1 + 1e-12)
        cfg = make_phased_array(9, 0.015, 1e10, np.full(9, 0.7), np.zeros(9))
        r = 1.25e5
        value = af_approx(cfg, env_round, FieldPoint(r / C, r, 0.0))
        assert abs(value) == cfg.weight_sum

    def test_symmetric_weight_parity(self, env_round):
        rng = np.random.default_rng(19)
        for _ in range(100):
            n = int(rng.integers(2, 20))
            half = rng.uniform(0.1, 1.0, (n + 1) // 2)
            weights = np.concatenate((half, half[: n // 2][::-1]))
            cfg = make_phased_array(n, 0.02, 8e9, weights, np.zeros(n))
            theta = rng.uniform(0.0, math.pi / 2)
            a = abs(af_approx(cfg, env_round, FieldPoint(0.0, 1e5, theta)))
            b = abs(af_approx(cfg, env_round, FieldPoint(0.0, 1e5, -theta)))
            assert abs(a - b) <= 1e-12 * cfg.weight_sum

    def test_af_values_broadcasts_like_point_eval(self, env_round):
        rng = np.random.default_rng(23)
        cfg = random_config(rng)
        thetas = np.linspace(-1.0, 1.0, 7)
        ranges = np.array([1e3, 5e4, 2e5])
        grid = af_values(cfg, env_round, 1e-3, ranges[:, None], thetas[None, :])
        assert grid.shape == (3, 7)
        for i, r in enumerate(ranges):
            for j, th in enumerate(thetas):
                point = af_approx(cfg, env_round, FieldPoint(1e-3, float(r), float(th)))
                assert grid[i, j] == pytest.approx(point, abs=1e-13 * cfg.weight_sum)


class TestEquivalentPhases:
    def test_zero_offsets_fixed_point(self, env_round):
        cfg = make_phased_array(5, 0.015, 1e10, np.ones(5), np.linspace(0, 1, 5))
        out = equivalent_phases(cfg, env_round, 1e-3, 5e4)
        np.testing.assert_array_equal(out, cfg.phases_rad)

    def test_on_wavefront_fixed_point(self, env_round):
        cfg = make_fda_linear(6, 0.015, 1e10, 2e3, np.ones(6), np.linspace(-1, 1, 6))
        r = 9e4
        out = equivalent_phases(cfg, env_round, r / C, r)
        np.testing.assert_array_equal(out, cfg.phases_rad)

    def test_identity_over_angles(self, env_round):
        rng = np.random.default_rng(29)
        for _ in range(200):
            cfg = random_config(rng)
            t = rng.uniform(-2e-3, 2e-3)
            r = rng.uniform(1e3, 4e5)
            pa = equivalent_phased_array(cfg, env_round, t, r)
            assert pa.is_phased_array
            thetas = rng.uniform(-math.pi / 2, math.pi / 2, 256)
            diff = np.abs(af_values(cfg, env_round, t, r, thetas)
                          - af_values(pa, env_round, t, r, thetas))
            assert float(np.max(diff)) <= 1e-12 * cfg.weight_sum


class TestReceivedSignal:
    def test_single_element_delay_150km(self, env_round):
        # one isotropic radiator, rounded wave speed: the envelope arrives
        # exactly 0.5 ms after emission at 150 km
        cfg = make_phased_array(1, 0.015, 1e10, [1.0], [0.0])
        pulse = RectPulse(center_s=0.0, width_s=1e-5)
        r = 150e3
        delay = r / C
        assert delay == 0.5e-3
        at_peak = received_signal(cfg, env_round, pulse, FieldPoint(0.5e-3, r, 0.0))
        assert abs(at_peak) == 1.0 / r**2
        before = received_signal(cfg, env_round, pulse,
                                 FieldPoint(0.5e-3 - 1e-5, r, 0.0))
        assert before == 0.0
        after = received_signal(cfg, env_round, pulse,
                                FieldPoint(0.5e-3 + 1e-5, r, 0.0))
        assert after == 0.0

    def test_inverse_square_range_falloff(self, env_round):
        cfg = make_phased_array(1, 0.015, 1e10, [1.0], [0.0])
        cw = ContinuousWave()
        r = 7.3e4
        # same retarded time at both ranges, so the carrier phase matches
        near = received_signal(cfg, env_round, cw, FieldPoint(0.0, r, 0.0))
        far = received_signal(cfg, env_round, cw, FieldPoint(r / C, 2 * r, 0.0))
        assert abs(near) == 4.0 * abs(far)

    def test_exact_vs_farfield_agreement(self, env_round):
        rng = np.random.default_rng(31)
        cw = ContinuousWave()
        for _ in range(50):
            cfg = random_config(rng, n_max=15)
            aperture = (cfg.n_elements - 1) * cfg.spacing_m
            r = max(1e6 * aperture, 1.0) * rng.uniform(1.0, 10.0)
            p = FieldPoint(rng.uniform(-1e-3, 1e-3), r,
                           rng.uniform(-math.pi / 2, math.pi / 2))
            exact = received_signal(cfg, env_round, cw, p, exact_geometry=True)
            far = received_signal(cfg, env_round, cw, p, exact_geometry=False)
            scale = env_round.rx_gain * cfg.weight_sum / r**2
            assert abs(exact - far) <= 1e-3 * scale

    def test_rejects_point_inside_aperture(self, env_round):
        cfg = make_phased_array(10, 0.5, 1e9, np.ones(10), np.zeros(10))
        with pytest.raises(ValueError):
            received_signal(cfg, env_round, ContinuousWave(),
                            FieldPoint(0.0, 1.0, math.pi / 2), exact_geometry=True)

    def test_per_element_tx_gains(self, env_round):
        env = PropagationEnv(wave_speed_m_per_s=C, rx_gain=2.0, tx_gains=[1.0, 3.0])
        cfg = make_phased_array(2, 0.015, 1e10, [1.0, 1.0], [0.0, 0.0])
        r = 5e4
        value = received_signal(cfg, env, ContinuousWave(), FieldPoint(r / C, r, 0.0))
        assert abs(value) == pytest.approx((1.0 + 3.0) * 2.0 / r**2, rel=1e-12)

    def test_tx_gain_length_mismatch(self, env_round):
        env = PropagationEnv(wave_speed_m_per_s=C, tx_gains=[1.0, 1.0, 1.0])
        cfg = make_phased_array(2, 0.015, 1e10, [1.0, 1.0], [0.0, 0.0])
        with pytest.raises(ValueError):
            received_signal(cfg, env, ContinuousWave(), FieldPoint(0.0, 1e3, 0.0))


class TestPulsedPattern:
    def test_rejects_nonzero_offsets(self, env_round):
        cfg = make_fda_linear(5, 0.015, 1e10, 1e3, np.ones(5), np.zeros(5))
        with pytest.raises(ValueError):
            pulsed_pattern(cfg, env_round, RectPulse(center_s=0.0, width_s=1e-4),
                           FieldPoint(0.0, 1e3, 0.0))

    def test_cw_reduces_to_af(self, cheb15, env_round):
        p = FieldPoint(1e-3, 2e5, 0.3)
        assert pulsed_pattern(cheb15, env_round, ContinuousWave(), p) == af_approx(
            cheb15, env_round, p
        )

    def test_rect_band_and_silence(self, cheb15, env_round):
        pulse = RectPulse(center_s=-1e-3, width_s=0.27e-3)
        # support at t=0 is an 81 km band centered on 300 km
        inside = pulsed_pattern(cheb15, env_round, pulse, FieldPoint(0.0, 300e3, 0.0))
        assert abs(inside) == pytest.approx(cheb15.weight_sum, rel=1e-12)
        for r in (200e3, 259e3, 341e3, 390e3):
            for theta in (-1.0, 0.0, 0.5):
                value = pulsed_pattern(cheb15, env_round, pulse,
                                       FieldPoint(0.0, r, theta))
                assert value == 0.0

    def test_separability(self, cheb15, env_round):
        pulse = GaussianPulse(center_s=-1e-3, sigma_s=0.15e-3)
        rng = np.random.default_rng(37)
        for _ in range(50):
            p = random_point(rng)
            value = pulsed_pattern(cheb15, env_round, pulse, p)
            expected = (envelope(pulse, p.t_s - p.r_m / C)
                        * af_approx(cheb15, env_round, p))
            assert value == expected


class TestToDb:
    def test_peak_is_zero_db(self):
        assert to_db(2.0, 2.0) == 0.0

    def test_decade_rule(self):
        assert to_db(0.1, 1.0) == pytest.approx(-20.0, abs=1e-12)

    def test_zero_maps_to_floor(self):
        assert to_db(0.0, 1.0, floor_db=-60.0) == -60.0

    def test_floor_clamps(self):
        assert to_db(1e-9, 1.0, floor_db=-40.0) == -40.0

    def test_vectorized(self):
        out = to_db(np.array([1.0, 0.1, 0.0]), 1.0, floor_db=-30.0)
        np.testing.assert_allclose(out, [0.0, -20.0, -30.0], atol=1e-12)

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            to_db(1.0, 0.0)
        with pytest.raises(ValueError):
            to_db(1.0, 1.0, floor_db=0.0)
