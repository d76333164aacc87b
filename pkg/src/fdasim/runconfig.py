"""Line-oriented run configuration: `[section]` headers and `key = value` pairs.

Values carry optional unit suffixes (ms, km, kHz, GHz, ...) that are
normalized to SI base units at parse time.  Angles are written in degrees
(or with an explicit `rad` suffix) and stored in radians.  Unknown
sections, unknown keys, duplicates, and malformed values are rejected
with the offending line number.
"""

import math
import re
from dataclasses import dataclass, field

from .arrays import (
    ArrayConfig,
    PropagationEnv,
    chebyshev_offsets,
    chebyshev_taper,
    half_wavelength,
    make_fda_linear,
    make_phased_array,
)
from .pulses import ContinuousWave, GaussianPulse, PulseSpec, RectPulse
from .rasters import GridSpec

DEFAULT_CARRIER_HZ = 10e9
DEFAULT_SIDELOBE_DB = 30.0

_SECTIONS = {
    "array": ("n", "spacing", "carrier", "taper", "offsets"),
    "pulse": ("shape", "center", "width", "sigma"),
    "grid": ("r_min", "r_max", "n_range", "theta_min", "theta_max", "n_theta", "time"),
    "env": ("wave_speed", "rx_gain", "tx_gain"),
    "output": ("dir", "db_floor", "format"),
}
_REQUIRED = (("array", "n"),)

_UNIT_SCALES = {
    "time": {"": 1.0, "s": 1.0, "ms": 1e-3, "us": 1e-6},
    "length": {"": 1.0, "m": 1.0, "km": 1e3, "cm": 1e-2, "mm": 1e-3},
    "frequency": {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6, "ghz": 1e9},
    "speed": {"": 1.0, "m/s": 1.0},
    "scalar": {"": 1.0},
}

_QUANTITY_RE = re.compile(r"([-+0-9.eE]+)\s*([A-Za-z/]*)\Z")


class ConfigError(ValueError):
    "Config syntax or semantic error, with a line number when known."

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def parse_quantity(text: str, kind: str, where: str = "value",
                   line: int | None = None) -> float:
    """Parse a number with an optional unit suffix into SI base units.

    Angle quantities default to degrees and accept a `rad` suffix; all
    other kinds default to their SI base unit.
    """
    match = _QUANTITY_RE.match(text.strip())
    if match is None:
        raise ConfigError(f"{where}: cannot parse quantity {text!r}", line)
    number_text, suffix = match.group(1), match.group(2).lower()
    try:
        number = float(number_text)
    except ValueError:
        raise ConfigError(f"{where}: bad number {number_text!r}", line) from None

    if kind == "angle":
        if suffix in ("", "deg"):
            return math.radians(number)
        if suffix == "rad":
            return number
        raise ConfigError(f"{where}: unknown angle unit {suffix!r}", line)
    scales = _UNIT_SCALES.get(kind)
    if scales is None:
        raise ValueError(f"unknown quantity kind {kind!r}")
    if suffix not in scales:
        raise ConfigError(f"{where}: unknown {kind} unit {suffix!r}", line)
    return number * scales[suffix]


def _parse_count(text: str, where: str, line: int | None) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise ConfigError(f"{where}: expected an integer, got {text!r}", line) from None
    return value


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run configuration.

    defaults_applied lists every key that fell back to its default; it is
    provenance only and excluded from equality.
    """

    # [array]
    n_elements: int
    spacing_m: float | None  # None means half-wavelength at the carrier
    carrier_hz: float
    taper: str  # "uniform" | "chebyshev"
    taper_sidelobe_db: float | None
    offsets: str  # "none" | "linear" | "chebyshev"
    offset_hz: float | None
    offset_sidelobe_db: float | None
    # [pulse]
    pulse_shape: str  # "cw" | "rect" | "gaussian"
    pulse_center_s: float
    pulse_width_s: float | None
    pulse_sigma_s: float | None
    # [grid]
    r_min_m: float
    r_max_m: float
    n_range: int
    theta_min_rad: float
    theta_max_rad: float
    n_theta: int
    time_s: float
    # [env]
    wave_speed_m_per_s: float
    rx_gain: float
    tx_gain: float
    # [output]
    out_dir: str
    db_floor: float
    out_format: str
    defaults_applied: tuple[str, ...] = field(default=(), compare=False)

    def resolved_spacing_m(self) -> float:
        if self.spacing_m is not None:
            return self.spacing_m
        return half_wavelength(self.carrier_hz, self.wave_speed_m_per_s)

    def to_env(self) -> PropagationEnv:
        return PropagationEnv(
            wave_speed_m_per_s=self.wave_speed_m_per_s,
            rx_gain=self.rx_gain,
            tx_gains=self.tx_gain,
        )

    def to_array_config(self) -> ArrayConfig:
        n = self.n_elements
        spacing = self.resolved_spacing_m()
        if self.taper == "chebyshev":
            weights = chebyshev_taper(n, self.taper_sidelobe_db)
        else:
            weights = [1.0] * n
        phases = [0.0] * n
        if self.offsets == "none":
            return make_phased_array(n, spacing, self.carrier_hz, weights, phases)
        if self.offsets == "linear":
            return make_fda_linear(n, spacing, self.carrier_hz, self.offset_hz,
                                   weights, phases)
        cfg = make_phased_array(n, spacing, self.carrier_hz, weights, phases)
        offsets = chebyshev_offsets(n, self.offset_hz, self.offset_sidelobe_db)
        return ArrayConfig(
            n_elements=n,
            spacing_m=spacing,
            carrier_hz=self.carrier_hz,
            weights=cfg.weights,
            phases_rad=cfg.phases_rad,
            freq_offsets_hz=offsets,
        )

    def to_pulse_spec(self) -> PulseSpec:
        if self.pulse_shape == "cw":
            return ContinuousWave()
        if self.pulse_shape == "rect":
            return RectPulse(center_s=self.pulse_center_s, width_s=self.pulse_width_s)
        return GaussianPulse(center_s=self.pulse_center_s, sigma_s=self.pulse_sigma_s)

    def to_grid_spec(self, time_s: float | None = None) -> GridSpec:
        return GridSpec(
            r_min_m=self.r_min_m,
            r_max_m=self.r_max_m,
            n_range=self.n_range,
            theta_min_rad=self.theta_min_rad,
            theta_max_rad=self.theta_max_rad,
            n_theta=self.n_theta,
            t_s=self.time_s if time_s is None else time_s,
        )

    @property
    def default_mode(self) -> str:
        "Natural raster mode for this configuration."
        if self.pulse_shape != "cw":
            return "pulsed"
        if self.offsets == "none":
            return "cw"
        return "fda_approx"


def _scan(text: str) -> dict[tuple[str, str], tuple[str, int]]:
    entries: dict[tuple[str, str], tuple[str, int]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {line!r}", lineno)
            section = line[1:-1].strip().lower()
            if section not in _SECTIONS:
                raise ConfigError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        if section is None:
            raise ConfigError("key outside any [section]", lineno)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key not in _SECTIONS[section]:
            raise ConfigError(f"unknown key {section}.{key}", lineno)
        if (section, key) in entries:
            raise ConfigError(f"duplicate key {section}.{key}", lineno)
        if not value:
            raise ConfigError(f"empty value for {section}.{key}", lineno)
        entries[(section, key)] = (value, lineno)
    return entries


def _apply_overrides(entries, overrides):
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} must look like section.key=value")
        target, _, value = item.partition("=")
        if "." not in target:
            raise ConfigError(f"override target {target!r} must look like section.key")
        section, _, key = target.strip().lower().partition(".")
        if section not in _SECTIONS or key not in _SECTIONS[section]:
            raise ConfigError(f"override names unknown key {section}.{key}")
        entries[(section, key)] = (value.strip(), 0)


class _Reader:
    "Pulls typed values out of the scanned entries, recording defaults."

    def __init__(self, entries):
        self.entries = entries
        self.defaults: list[str] = []

    def raw(self, section, key):
        return self.entries.get((section, key))

    def take(self, section, key, kind, default):
        entry = self.entries.get((section, key))
        if entry is None:
            self.defaults.append(f"{section}.{key} = {default} (default)")
            return default
        value, line = entry
        where = f"{section}.{key}"
        if kind == "count":
            return _parse_count(value, where, line)
        if kind == "string":
            return value
        return parse_quantity(value, kind, where, line)


def parse_config(text: str, overrides=()) -> RunConfig:
    """Parse and validate a run configuration.

    overrides is a sequence of `section.key=value` strings applied on top
    of the file contents.  Every defaulted key is recorded in the returned
    RunConfig's defaults_applied.
    """
    entries = _scan(text)
    _apply_overrides(entries, overrides)

    for section, key in _REQUIRED:
        if (section, key) not in entries:
            required = ", ".join(f"{s}.{k}" for s, k in _REQUIRED)
            raise ConfigError(f"missing required key {section}.{key} (required: {required})")

    reader = _Reader(entries)

    n = reader.take("array", "n", "count", None)
    if n is None or n < 1:
        raise ConfigError(f"array.n must be a positive integer, got {n}")

    spacing_entry = reader.raw("array", "spacing")
    if spacing_entry is None:
        spacing = None
        reader.defaults.append("array.spacing = half-wavelength (default)")
    elif spacing_entry[0].lower() == "half-wavelength":
        spacing = None
    else:
        spacing = parse_quantity(spacing_entry[0], "length", "array.spacing",
                                 spacing_entry[1])

    carrier = reader.take("array", "carrier", "frequency", DEFAULT_CARRIER_HZ)

    taper, taper_sll = _parse_taper(reader)
    offsets_kind, offset_hz, offset_sll = _parse_offsets(reader)

    shape, center, width, sigma = _parse_pulse(reader)
    if offsets_kind != "none" and shape != "cw":
        raise ConfigError(
            "offsets with a pulsed excitation are rejected: a pulsed frequency "
            "diverse array has no defined pattern"
        )

    r_min = reader.take("grid", "r_min", "length", 1e3)
    r_max = reader.take("grid", "r_max", "length", 400e3)
    n_range = reader.take("grid", "n_range", "count", 512)
    theta_min = reader.take("grid", "theta_min", "angle", math.radians(-90.0))
    theta_max = reader.take("grid", "theta_max", "angle", math.radians(90.0))
    n_theta = reader.take("grid", "n_theta", "count", 512)
    time_s = reader.take("grid", "time", "time", 0.0)

    wave_speed = reader.take("env", "wave_speed", "speed", 299_792_458.0)
    rx_gain = reader.take("env", "rx_gain", "scalar", 1.0)
    tx_gain = reader.take("env", "tx_gain", "scalar", 1.0)

    out_dir = reader.take("output", "dir", "string", "out")
    db_floor = reader.take("output", "db_floor", "scalar", -60.0)
    out_format = reader.take("output", "format", "string", "both").lower()
    if out_format not in ("csv", "pgm", "both"):
        raise ConfigError(f"output.format must be csv, pgm, or both, got {out_format!r}")

    rc = RunConfig(
        n_elements=n,
        spacing_m=spacing,
        carrier_hz=carrier,
        taper=taper,
        taper_sidelobe_db=taper_sll,
        offsets=offsets_kind,
        offset_hz=offset_hz,
        offset_sidelobe_db=offset_sll,
        pulse_shape=shape,
        pulse_center_s=center,
        pulse_width_s=width,
        pulse_sigma_s=sigma,
        r_min_m=r_min,
        r_max_m=r_max,
        n_range=n_range,
        theta_min_rad=theta_min,
        theta_max_rad=theta_max,
        n_theta=n_theta,
        time_s=time_s,
        wave_speed_m_per_s=wave_speed,
        rx_gain=rx_gain,
        tx_gain=tx_gain,
        out_dir=out_dir,
        db_floor=db_floor,
        out_format=out_format,
        defaults_applied=tuple(reader.defaults),
    )
    _validate(rc)
    return rc


def _parse_taper(reader):
    entry = reader.raw("array", "taper")
    if entry is None:
        reader.defaults.append("array.taper = uniform (default)")
        return "uniform", None
    value, line = entry
    parts = [p.strip() for p in value.split(":")]
    name = parts[0].lower()
    if name == "uniform":
        if len(parts) > 1:
            raise ConfigError("array.taper: uniform takes no level", line)
        return "uniform", None
    if name == "chebyshev":
        if len(parts) == 1:
            reader.defaults.append(
                f"array.taper sidelobe level = {DEFAULT_SIDELOBE_DB} dB (default)"
            )
            return "chebyshev", DEFAULT_SIDELOBE_DB
        if len(parts) == 2:
            level = parse_quantity(parts[1], "scalar", "array.taper level", line)
            if level <= 0:
                raise ConfigError("array.taper: sidelobe level must be > 0 dB", line)
            return "chebyshev", level
        raise ConfigError("array.taper: too many ':' fields", line)
    raise ConfigError(f"array.taper must be uniform or chebyshev[:SLL], got {name!r}", line)


def _parse_offsets(reader):
    entry = reader.raw("array", "offsets")
    if entry is None:
        reader.defaults.append("array.offsets = none (default)")
        return "none", None, None
    value, line = entry
    parts = [p.strip() for p in value.split(":")]
    name = parts[0].lower()
    if name == "none":
        if len(parts) > 1:
            raise ConfigError("array.offsets: none takes no arguments", line)
        return "none", None, None
    if name == "linear":
        if len(parts) != 2:
            raise ConfigError("array.offsets: expected linear:BASE_HZ", line)
        base = parse_quantity(parts[1], "frequency", "array.offsets base", line)
        return "linear", base, None
    if name == "chebyshev":
        if len(parts) not in (2, 3):
            raise ConfigError("array.offsets: expected chebyshev:MAX_HZ[:SLL]", line)
        max_hz = parse_quantity(parts[1], "frequency", "array.offsets max", line)
        if max_hz <= 0:
            raise ConfigError("array.offsets: max offset must be positive", line)
        if len(parts) == 3:
            sll = parse_quantity(parts[2], "scalar", "array.offsets level", line)
            if sll <= 0:
                raise ConfigError("array.offsets: shape level must be > 0 dB", line)
        else:
            sll = DEFAULT_SIDELOBE_DB
            reader.defaults.append(
                f"array.offsets shape level = {DEFAULT_SIDELOBE_DB} dB (default)"
            )
        return "chebyshev", max_hz, sll
    raise ConfigError(
        f"array.offsets must be none, linear:BASE, or chebyshev:MAX[:SLL], got {name!r}",
        line,
    )


def _parse_pulse(reader):
    entry = reader.raw("pulse", "shape")
    if entry is None:
        reader.defaults.append("pulse.shape = cw (default)")
        shape = "cw"
        line = None
    else:
        shape = entry[0].lower()
        line = entry[1]
        if shape not in ("cw", "rect", "gaussian"):
            raise ConfigError(f"pulse.shape must be cw, rect, or gaussian, got {shape!r}",
                              line)

    center_entry = reader.raw("pulse", "center")
    width_entry = reader.raw("pulse", "width")
    sigma_entry = reader.raw("pulse", "sigma")

    if shape == "cw":
        for key, present in (("center", center_entry), ("width", width_entry),
                             ("sigma", sigma_entry)):
            if present is not None:
                raise ConfigError(f"pulse.{key} does not apply to a cw excitation",
                                  present[1])
        return "cw", 0.0, None, None

    if center_entry is None:
        center = 0.0
        reader.defaults.append("pulse.center = 0.0 s (default)")
    else:
        center = parse_quantity(center_entry[0], "time", "pulse.center", center_entry[1])

    if shape == "rect":
        if sigma_entry is not None:
            raise ConfigError("pulse.sigma does not apply to a rect pulse", sigma_entry[1])
        if width_entry is None:
            raise ConfigError("pulse.width is required for a rect pulse")
        width = parse_quantity(width_entry[0], "time", "pulse.width", width_entry[1])
        if width <= 0:
            raise ConfigError("pulse.width must be positive", width_entry[1])
        return "rect", center, width, None

    if width_entry is not None:
        raise ConfigError("pulse.width does not apply to a gaussian pulse", width_entry[1])
    if sigma_entry is None:
        raise ConfigError("pulse.sigma is required for a gaussian pulse")
    sigma = parse_quantity(sigma_entry[0], "time", "pulse.sigma", sigma_entry[1])
    if sigma <= 0:
        raise ConfigError("pulse.sigma must be positive", sigma_entry[1])
    return "gaussian", center, None, sigma


def _validate(rc: RunConfig):
    "Build every derived object once so semantic violations surface at parse time."
    try:
        rc.to_env()
        rc.to_array_config()
        rc.to_pulse_spec()
        rc.to_grid_spec()
    except ValueError as err:
        raise ConfigError(str(err)) from err
    if not (rc.db_floor < 0):
        raise ConfigError(f"output.db_floor must be negative, got {rc.db_floor}")


def serialize_config(rc: RunConfig) -> str:
    """Render a RunConfig to canonical config text.

    Floats are written with repr so parse(serialize(rc)) == rc exactly;
    angles carry an explicit rad suffix for the same reason.
    """
    lines = ["[array]", f"n = {rc.n_elements}"]
    if rc.spacing_m is None:
        lines.append("spacing = half-wavelength")
    else:
        lines.append(f"spacing = {rc.spacing_m!r}")
    lines.append(f"carrier = {rc.carrier_hz!r}")
    if rc.taper == "uniform":
        lines.append("taper = uniform")
    else:
        lines.append(f"taper = chebyshev:{rc.taper_sidelobe_db!r}")
    if rc.offsets == "none":
        lines.append("offsets = none")
    elif rc.offsets == "linear":
        lines.append(f"offsets = linear:{rc.offset_hz!r}")
    else:
        lines.append(f"offsets = chebyshev:{rc.offset_hz!r}:{rc.offset_sidelobe_db!r}")

    lines.append("")
    lines.append("[pulse]")
    lines.append(f"shape = {rc.pulse_shape}")
    if rc.pulse_shape != "cw":
        lines.append(f"center = {rc.pulse_center_s!r}")
        if rc.pulse_shape == "rect":
            lines.append(f"width = {rc.pulse_width_s!r}")
        else:
            lines.append(f"sigma = {rc.pulse_sigma_s!r}")

    lines += [
        "",
        "[grid]",
        f"r_min = {rc.r_min_m!r}",
        f"r_max = {rc.r_max_m!r}",
        f"n_range = {rc.n_range}",
        f"theta_min = {rc.theta_min_rad!r} rad",
        f"theta_max = {rc.theta_max_rad!r} rad",
        f"n_theta = {rc.n_theta}",
        f"time = {rc.time_s!r}",
        "",
        "[env]",
        f"wave_speed = {rc.wave_speed_m_per_s!r}",
        f"rx_gain = {rc.rx_gain!r}",
        f"tx_gain = {rc.tx_gain!r}",
        "",
        "[output]",
        f"dir = {rc.out_dir}",
        f"db_floor = {rc.db_floor!r}",
        f"format = {rc.out_format}",
        "",
    ]
    return "\n".join(lines)
