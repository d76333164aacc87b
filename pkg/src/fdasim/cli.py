"""Command-line interface: snapshot, sweep, compare, and check subcommands.

Exit codes: 0 success, 1 usage error, 2 config error, 3 failed checks.
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import checks
from .export import export_csv, export_image
from .rasters import (
    RASTER_MODES,
    equivalent_pa_magnitudes,
    evaluate_raster,
    find_focus,
    NoFocusError,
)
from .runconfig import ConfigError, parse_config, parse_quantity

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_CHECK = 3

COMPARE_MODES = RASTER_MODES + ("equivalent_pa",)


class UsageError(Exception):
    def __init__(self, message):
        self.message = message
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    "argparse that reports usage problems with exit code 1."

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fdasim",
                     description="Range-angle beampattern simulator for linear arrays")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_outputs=True, with_mode=True):
        p.add_argument("--config", required=True, help="run configuration file")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="SECTION.KEY=VALUE", help="override a config value")
        p.add_argument("--time", default=None,
                       help="snapshot time override (unit suffixes allowed)")
        if with_mode:
            p.add_argument("--mode", default=None, choices=RASTER_MODES,
                           help="raster mode (default: inferred from the config)")
        if with_outputs:
            p.add_argument("--out-dir", default=None, help="output directory")
            p.add_argument("--format", default=None, choices=("csv", "pgm", "both"),
                           help="output file format")

    snap = sub.add_parser("snapshot", help="one raster at a single time")
    add_common(snap)

    sweep = sub.add_parser("sweep", help="rasters at a list of times")
    add_common(sweep)
    sweep.add_argument("--times", required=True,
                       help="comma-separated snapshot times, e.g. 0,0.05ms,0.1ms")

    comp = sub.add_parser("compare", help="max |difference| between two modes")
    comp.add_argument("mode_a", choices=COMPARE_MODES)
    comp.add_argument("mode_b", choices=COMPARE_MODES)
    add_common(comp, with_outputs=False, with_mode=False)

    chk = sub.add_parser("check", help="run the built-in property suite")
    chk.add_argument("--config", default=None,
                     help="optional config; validated before the suite runs")
    chk.add_argument("--seed", type=int, default=0)
    return parser


def _load_config(args):
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read {args.config}: {err}") from err
    rc = parse_config(text, overrides=getattr(args, "overrides", ()))
    for note in rc.defaults_applied:
        print(f"default: {note}", file=sys.stderr)
    return rc


def _snapshot_time(rc, args):
    if args.time is None:
        return rc.time_s
    return parse_quantity(args.time, "time", "--time")


def _mode_and_pulse(rc, args):
    mode = args.mode if args.mode is not None else rc.default_mode
    pulse = rc.to_pulse_spec()
    if mode != "pulsed":
        pulse_arg = None
    else:
        pulse_arg = pulse
    return mode, pulse_arg


def _focus_line(report, prefix=""):
    return (
        f"{prefix}peak_r_m={report.peak_r_m:.9g}"
        f" peak_theta_deg={math.degrees(report.peak_theta_rad):.9g}"
        f" peak_mag={report.peak_mag:.9g}"
        f" range_extent_m={report.range_extent_m:.9g}"
        f" theta_extent_deg={math.degrees(report.theta_extent_rad):.9g}"
    )


def _write_raster(raster, rc, args, stem):
    out_dir = Path(args.out_dir if args.out_dir is not None else rc.out_dir)
    fmt = args.format if args.format is not None else rc.out_format
    written = []
    if fmt in ("csv", "both"):
        path = out_dir / f"{stem}.csv"
        export_csv(raster, path)
        written.append(path)
    if fmt in ("pgm", "both"):
        path = out_dir / f"{stem}.pgm"
        export_image(raster, path, db_floor=rc.db_floor)
        written.append(path)
    for path in written:
        print(f"wrote {path}")


def _evaluate(rc, mode, pulse, grid):
    cfg = rc.to_array_config()
    env = rc.to_env()
    return evaluate_raster(cfg, env, pulse, mode, grid)


def _cmd_snapshot(args) -> int:
    rc = _load_config(args)
    mode, pulse = _mode_and_pulse(rc, args)
    grid = rc.to_grid_spec(time_s=_snapshot_time(rc, args))
    raster = _evaluate(rc, mode, pulse, grid)
    _write_raster(raster, rc, args, "snapshot")
    try:
        print(_focus_line(find_focus(raster)))
    except NoFocusError:
        print("no_focus=1")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    rc = _load_config(args)
    mode, pulse = _mode_and_pulse(rc, args)
    times = [parse_quantity(part, "time", "--times")
             for part in args.times.split(",") if part.strip()]
    if not times:
        raise UsageError("--times must list at least one time")
    for index, t in enumerate(times):
        raster = _evaluate(rc, mode, pulse, rc.to_grid_spec(time_s=t))
        _write_raster(raster, rc, args, f"sweep_{index:03d}")
        try:
            print(_focus_line(find_focus(raster), prefix=f"t_s={t:.9g} "))
        except NoFocusError:
            print(f"t_s={t:.9g} no_focus=1")
    return EXIT_OK


def _compare_values(rc, mode, grid):
    cfg = rc.to_array_config()
    env = rc.to_env()
    if mode == "equivalent_pa":
        return equivalent_pa_magnitudes(cfg, env, grid)
    pulse = rc.to_pulse_spec() if mode == "pulsed" else None
    return evaluate_raster(cfg, env, pulse, mode, grid).values


def _cmd_compare(args) -> int:
    rc = _load_config(args)
    grid = rc.to_grid_spec(time_s=_snapshot_time(rc, args))
    values_a = _compare_values(rc, args.mode_a, grid)
    values_b = _compare_values(rc, args.mode_b, grid)
    diff = float(np.max(np.abs(values_a - values_b)))
    weight_sum = rc.to_array_config().weight_sum
    print(f"max_abs_diff={diff:.9g} weight_sum={weight_sum:.9g}"
          f" rel_to_weight_sum={diff / weight_sum:.9g}")
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.config is not None:
        _load_config(args)
    ok = checks.run_all(seed=args.seed)
    return EXIT_OK if ok else EXIT_CHECK


_COMMANDS = {
    "snapshot": _cmd_snapshot,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "check": _cmd_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as err:
        print(f"error: {err.message}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
