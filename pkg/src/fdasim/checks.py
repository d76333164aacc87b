"""Built-in property suite behind the `check` CLI subcommand.

Each check exercises one identity or invariant of the pattern evaluators
and the raster machinery on randomized inputs and returns an error string
on failure (None on success).  Tolerances are calibrated to 64-bit floats.
"""

import math

import numpy as np

from .arrays import ArrayConfig, PropagationEnv, chebyshev_taper, make_phased_array
from .patterns import (
    FieldPoint,
    af_approx,
    af_exact,
    af_values,
    equivalent_phased_array,
    pulsed_pattern,
)
from .pulses import ContinuousWave, GaussianPulse, RectPulse, envelope
from .rasters import GridSpec, evaluate_raster, find_focus

REL_TOL = 1e-12

C_ROUND = 3e8


def _random_config(rng, n_max=20, fda=True) -> ArrayConfig:
    n = int(rng.integers(1, n_max + 1))
    carrier = rng.uniform(1e9, 2e10)
    spacing = 0.5 * C_ROUND / carrier * rng.uniform(0.5, 1.5)
    weights = rng.uniform(0.0, 1.0, n)
    weights[int(rng.integers(0, n))] = 1.0  # keep the weight sum well away from 0
    phases = rng.uniform(-math.pi, math.pi, n)
    offsets = rng.uniform(-1e4, 1e4, n) if fda else np.zeros(n)
    return ArrayConfig(n, spacing, carrier, weights, phases, offsets)


def _random_point(rng) -> FieldPoint:
    return FieldPoint(
        t_s=rng.uniform(-2e-3, 2e-3),
        r_m=rng.uniform(1e3, 4e5),
        theta_rad=rng.uniform(-math.pi / 2, math.pi / 2),
    )


def check_translation_identity(rng, trials=300):
    "Narrowband AF is unchanged under (t, r) -> (t + dt, r + c dt)."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    worst = 0.0
    for _ in range(trials):
        cfg = _random_config(rng)
        p = _random_point(rng)
        # keep the shifted range positive: dt may not rewind past the array
        dt = rng.uniform(-0.9 * p.r_m / C_ROUND, 1e-3)
        shifted = FieldPoint(p.t_s + dt, p.r_m + C_ROUND * dt, p.theta_rad)
        diff = abs(af_approx(cfg, env, shifted) - af_approx(cfg, env, p))
        worst = max(worst, diff / cfg.weight_sum)
    if worst > REL_TOL:
        return f"worst relative deviation {worst:.3e} exceeds {REL_TOL}"
    return None


def check_zero_offset_invariance(rng, trials=100):
    "With all offsets zero the AF does not depend on time or range."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng, fda=False)
        theta = rng.uniform(-math.pi / 2, math.pi / 2)
        baseline = af_approx(cfg, env, FieldPoint(0.0, 1e4, theta))
        for _ in range(8):
            p = FieldPoint(rng.uniform(-1.0, 1.0), rng.uniform(1.0, 1e6), theta)
            for fn in (af_approx, af_exact):
                diff = abs(fn(cfg, env, p) - baseline)
                if diff > REL_TOL * cfg.weight_sum:
                    return f"AF varied by {diff:.3e} with zero offsets"
    return None


def check_equivalence_identity(rng, trials=200):
    "A phased array with rotated phases reproduces the FDA pattern at (t, r)."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    worst = 0.0
    for _ in range(trials):
        cfg = _random_config(rng)
        t = rng.uniform(-2e-3, 2e-3)
        r = rng.uniform(1e3, 4e5)
        pa = equivalent_phased_array(cfg, env, t, r)
        thetas = rng.uniform(-math.pi / 2, math.pi / 2, 256)
        fda_vals = af_values(cfg, env, t, r, thetas)
        pa_vals = af_values(pa, env, t, r, thetas)
        worst = max(worst, float(np.max(np.abs(fda_vals - pa_vals))) / cfg.weight_sum)
    if worst > REL_TOL:
        return f"worst relative mismatch {worst:.3e} exceeds {REL_TOL}"
    return None


def check_triangle_bound(rng, trials=200):
    "|AF| never exceeds the weight sum; it attains it at broadside."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng)
        p = _random_point(rng)
        bound = cfg.weight_sum * (1.0 + REL_TOL)
        for fn in (af_approx, af_exact):
            mag = abs(fn(cfg, env, p))
            if mag > bound:
                return f"|AF| = {mag} exceeds weight sum {cfg.weight_sum}"
    cfg = make_phased_array(9, 0.015, 1e10, np.full(9, 0.7), np.zeros(9))
    r = 1e5
    value = af_approx(cfg, env, FieldPoint(r / C_ROUND, r, 0.0))
    if abs(value) != cfg.weight_sum:
        return f"equality case gave {abs(value)} != {cfg.weight_sum}"
    return None


def check_exact_approx_bound(rng, trials=200):
    "The dropped per-element term bounds the exact/narrowband AF gap."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng)
        p = _random_point(rng)
        diff = abs(af_exact(cfg, env, p) - af_approx(cfg, env, p))
        n = np.arange(cfg.n_elements)
        bound = float(np.sum(
            cfg.weights * 2.0 * math.pi * np.abs(cfg.freq_offsets_hz)
            * n * cfg.spacing_m / C_ROUND
        ))
        if diff > bound + REL_TOL * cfg.weight_sum:
            return f"gap {diff:.3e} exceeds bound {bound:.3e}"
    return None


def check_symmetric_parity(rng, trials=100):
    "Real symmetric weights give an angle-symmetric pattern magnitude."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        n = int(rng.integers(2, 20))
        half = rng.uniform(0.1, 1.0, (n + 1) // 2)
        weights = np.concatenate((half, half[: n // 2][::-1]))
        cfg = make_phased_array(n, rng.uniform(0.005, 0.03), 1e10, weights, np.zeros(n))
        theta = rng.uniform(0.0, math.pi / 2)
        p_pos = FieldPoint(0.0, 1e5, theta)
        p_neg = FieldPoint(0.0, 1e5, -theta)
        a, b = abs(af_approx(cfg, env, p_pos)), abs(af_approx(cfg, env, p_neg))
        if abs(a - b) > REL_TOL * cfg.weight_sum:
            return f"|AF({theta})| = {a} but |AF({-theta})| = {b}"
    return None


def check_pulsed_separability(rng, trials=50):
    "The pulsed pattern factorizes into envelope(t - r/c) times AF(theta)."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng, fda=False)
        pulse = GaussianPulse(center_s=rng.uniform(-2e-3, 0.0),
                              sigma_s=rng.uniform(5e-5, 5e-4))
        p = _random_point(rng)
        value = pulsed_pattern(cfg, env, pulse, p)
        expected = (envelope(pulse, p.t_s - p.r_m / C_ROUND)
                    * af_approx(cfg, env, p))
        if abs(value - expected) > REL_TOL * cfg.weight_sum:
            return f"pulsed pattern deviates from envelope x AF by {abs(value - expected):.3e}"
    return None


def _small_grid(t_s=0.0, r_lo=1e3, r_hi=4e5):
    return GridSpec(r_min_m=r_lo, r_max_m=r_hi, n_range=96,
                    theta_min_rad=-math.pi / 2, theta_max_rad=math.pi / 2,
                    n_theta=33, t_s=t_s)


def check_raster_determinism(rng, trials=4):
    "Re-evaluating the same raster reproduces every cell bit-for-bit."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng)
        grid = _small_grid(t_s=rng.uniform(-1e-3, 1e-3))
        first = evaluate_raster(cfg, env, None, "fda_approx", grid)
        second = evaluate_raster(cfg, env, None, "fda_approx", grid)
        if not np.array_equal(first.values, second.values):
            return "repeated evaluation changed raster values"
    return None


def check_raster_translation(rng, trials=4):
    "Shifting snapshot time and range window together reproduces the raster."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng)
        t0 = rng.uniform(-1e-3, 1e-3)
        dt = rng.uniform(-5e-4, 5e-4)  # shifts the window by at most 150 km
        base = evaluate_raster(cfg, env, None, "fda_approx",
                               _small_grid(t_s=t0, r_lo=200e3))
        moved_grid = _small_grid(t_s=t0 + dt, r_lo=200e3).shifted(C_ROUND * dt)
        moved = evaluate_raster(cfg, env, None, "fda_approx", moved_grid)
        diff = float(np.max(np.abs(moved.values - base.values)))
        if diff > REL_TOL * cfg.weight_sum:
            return f"translated raster deviates by {diff:.3e}"
    return None


def check_cw_range_invariance(rng, trials=4):
    "Continuous-wave phased-array rasters are constant along range."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng, fda=False)
        raster = evaluate_raster(cfg, env, None, "cw", _small_grid())
        spread = float(np.max(np.ptp(raster.values, axis=0)))
        if spread > REL_TOL * cfg.weight_sum:
            return f"range spread {spread:.3e} in cw mode"
    return None


def check_focus_argmax(rng, trials=6):
    "find_focus returns the coordinates of a true global maximum."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    for _ in range(trials):
        cfg = _random_config(rng)
        grid = _small_grid(t_s=rng.uniform(-1e-3, 1e-3))
        raster = evaluate_raster(cfg, env, None, "fda_approx", grid)
        report = find_focus(raster)
        best = -1.0
        best_cell = None
        for i in range(grid.n_range):  # independent linear scan
            for j in range(grid.n_theta):
                if raster.values[i, j] > best:
                    best = raster.values[i, j]
                    best_cell = (i, j)
        i, j = best_cell
        if report.peak_mag != best:
            return f"peak magnitude {report.peak_mag} != scanned maximum {best}"
        if (report.peak_r_m != raster.range_axis[i]
                or report.peak_theta_rad != raster.theta_axis[j]):
            return "peak coordinates disagree with the scanned maximum"
    return None


def check_rect_extent(rng, trials=6):
    "A rectangular pulse paints a range band of width c * tau, within a cell."
    env = PropagationEnv(wave_speed_m_per_s=C_ROUND)
    taper = chebyshev_taper(11, 30.0)
    cfg = make_phased_array(11, 0.015, 1e10, taper, np.zeros(11))
    for _ in range(trials):
        width = rng.uniform(5e-5, 5e-4)
        pulse = RectPulse(center_s=-1e-3, width_s=width)
        n_range = int(rng.integers(128, 700))
        grid = GridSpec(r_min_m=1e3, r_max_m=4e5, n_range=n_range,
                        theta_min_rad=-0.5, theta_max_rad=0.5, n_theta=17, t_s=0.0)
        raster = evaluate_raster(cfg, env, pulse, "pulsed", grid)
        report = find_focus(raster)
        if abs(report.range_extent_m - C_ROUND * width) > grid.range_step_m:
            return (
                f"extent {report.range_extent_m:.1f} m vs c*tau {C_ROUND * width:.1f} m "
                f"(cell {grid.range_step_m:.1f} m)"
            )
    return None


CHECKS = (
    ("translation_identity", check_translation_identity),
    ("zero_offset_invariance", check_zero_offset_invariance),
    ("equivalence_identity", check_equivalence_identity),
    ("triangle_bound", check_triangle_bound),
    ("exact_approx_bound", check_exact_approx_bound),
    ("symmetric_parity", check_symmetric_parity),
    ("pulsed_separability", check_pulsed_separability),
    ("raster_determinism", check_raster_determinism),
    ("raster_translation", check_raster_translation),
    ("cw_range_invariance", check_cw_range_invariance),
    ("focus_argmax", check_focus_argmax),
    ("rect_extent", check_rect_extent),
)


def run_all(seed: int = 0, report=print) -> bool:
    """Run every check, print one PASS/FAIL line each, return overall success."""
    all_ok = True
    for name, fn in CHECKS:
        try:
            error = fn(np.random.default_rng(seed))
        except Exception as err:  # a crashed check is a failed check
            error = f"raised {type(err).__name__}: {err}"
        if error is None:
            report(f"PASS {name}")
        else:
            report(f"FAIL {name}: {error}")
            all_ok = False
    return all_ok
