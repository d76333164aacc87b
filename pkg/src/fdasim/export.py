"""Deterministic raster export: CSV tables and binary portable graymaps.

Both formats are byte-stable: fixed float formatting, fixed row order, LF
line endings, and whole-file atomic writes.
"""

import math
import os
import tempfile
import warnings
from pathlib import Path

import numpy as np

from .patterns import to_db
from .rasters import RasterGrid

CSV_HEADER = "range_m,angle_deg,value"


def _atomic_write(path, data: bytes):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _db_values(raster: RasterGrid, db_floor: float):
    peak = float(np.max(raster.values))
    if peak == 0.0:
        warnings.warn("raster is identically zero; exporting at the dB floor")
        return np.full_like(raster.values, db_floor), peak
    return to_db(raster.values, peak, db_floor), peak


def export_csv(raster: RasterGrid, path, db: bool = False,
               db_floor: float = -60.0) -> None:
    """Write one `range_m,angle_deg,value` row per cell, range-outer order.

    Values are linear magnitudes, or dB relative to the raster peak when
    db is set.  Floats are printed with 9 significant digits.
    """
    values = _db_values(raster, db_floor)[0] if db else raster.values
    ranges = raster.range_axis
    angles_deg = np.degrees(raster.theta_axis)

    lines = [CSV_HEADER]
    for i in range(raster.spec.n_range):
        r_text = f"{ranges[i]:.9g}"
        for j in range(raster.spec.n_theta):
            lines.append(f"{r_text},{angles_deg[j]:.9g},{values[i, j]:.9g}")
    lines.append("")
    _atomic_write(path, "\n".join(lines).encode("ascii"))


def read_csv(path):
    """Read back an export_csv file as (range_m, angle_deg, value) arrays."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path} is not a raster CSV (bad header)")
    data = np.array([[float(f) for f in line.split(",")] for line in lines[1:]])
    return data[:, 0], data[:, 1], data[:, 2]


def export_image(raster: RasterGrid, path, db_floor: float = -60.0) -> None:
    """Write a binary portable graymap (P5, maxval 255) of the raster in dB.

    Width is the angle axis, height the range axis, and the top row is the
    maximum range.  Pixels map the dB scale linearly: the raster peak is
    255 and the floor is 0.  A comment line carries the grid bounds and
    the config fingerprint.
    """
    if not (math.isfinite(db_floor) and db_floor < 0):
        raise ValueError(f"db_floor must be negative, got {db_floor}")
    db, _ = _db_values(raster, db_floor)
    pixels = np.rint(255.0 * (db - db_floor) / (0.0 - db_floor))
    pixels = np.clip(pixels, 0, 255).astype(np.uint8)
    pixels = pixels[::-1, :]  # top row = r_max

    spec = raster.spec
    comment = (
        f"# mode={raster.mode} t_s={spec.t_s!r} r_m=[{spec.r_min_m!r},{spec.r_max_m!r}]"
        f" theta_rad=[{spec.theta_min_rad!r},{spec.theta_max_rad!r}]"
        f" db_floor={db_floor!r} fingerprint={raster.fingerprint}"
    )
    header = f"P5\n{comment}\n{spec.n_theta} {spec.n_range}\n255\n"
    _atomic_write(path, header.encode("ascii") + pixels.tobytes())
