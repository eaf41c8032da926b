"""Readers and writers for curve tables, field dumps and result CSVs."""
from __future__ import annotations

import csv
import hashlib
import re
import struct
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .errors import FixtureError

PathLike = Union[str, Path]

CURVE_HEADER = re.compile(
    r"^#\s*spectral-curve v1;\s*quantity=(?P<quantity>irradiance|reflectance|absorptivity);"
    r"\s*units=(?P<units>[^;]*?)\s*$")
CURVE_COLUMNS = "wavelength_nm,value"
FLOAT_FMT = "%.16e"


def read_curve_csv(path: PathLike) -> Tuple[dict, List[Tuple[float, float]]]:
    """Parse a ``spectral-curve v1`` table.

    Returns
    -------
    meta : dict
        ``quantity``, ``units`` and the free-text ``comments`` lines.
    records : list of (wavelength_nm, value)
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise FixtureError(f"cannot read curve file {path}: {exc}") from exc
    if not lines:
        raise FixtureError(f"{path}: empty curve file")
    m = CURVE_HEADER.match(lines[0].strip())
    if not m:
        raise FixtureError(f"{path}: first line is not a spectral-curve v1 header")
    meta = {"quantity": m["quantity"], "units": m["units"], "comments": []}
    records = []
    seen_columns = False
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta["comments"].append(line.lstrip("# ").rstrip())
            continue
        if not seen_columns:
            if line.replace(" ", "") != CURVE_COLUMNS:
                raise FixtureError(f"{path}:{lineno}: expected column line {CURVE_COLUMNS!r}")
            seen_columns = True
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise FixtureError(f"{path}:{lineno}: expected two columns")
        try:
            records.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise FixtureError(f"{path}:{lineno}: non-numeric entry {line!r}") from None
    if not records:
        raise FixtureError(f"{path}: no data rows")
    return meta, records


def write_curve_csv(path: PathLike, records: Iterable[Tuple[float, float]], quantity: str,
                    units: str, comments: Sequence[str] = ()) -> None:
    lines = [f"# spectral-curve v1; quantity={quantity}; units={units}"]
    lines += [f"# {c}" for c in comments]
    lines.append(CURVE_COLUMNS)
    lines += [f"{w:.6g},{v:.6g}" for w, v in records]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_table(path: PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """CSV with floats in full-precision scientific notation."""
    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, str):
            return v
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return str(int(v))
        v = float(v)
        return "" if np.isnan(v) else FLOAT_FMT % v

    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def read_table(path: PathLike) -> Tuple[List[str], List[List[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_field_csv(path: PathLike, field) -> None:
    """Dump ``t,z,c,g`` rows, row-major by time."""
    t, z, c = field.grid.t, field.grid.z, field.values
    tt = np.repeat(t, z.size)
    zz = np.tile(z, t.size)
    cc = c.ravel()
    data = np.column_stack([tt, zz, cc, 1.0 - cc])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("t,z,c,g\n")
        np.savetxt(fh, data, fmt=FLOAT_FMT, delimiter=",")


def write_field_binary(path: PathLike, field) -> None:
    """Little-endian dump: uint64 rows, uint64 cols, then float64 ``c`` row-major."""
    v = np.ascontiguousarray(field.values, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(struct.pack("<QQ", *v.shape))
        fh.write(v.tobytes())


def read_field_binary(path: PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        rows, cols = struct.unpack("<QQ", fh.read(16))
        data = np.frombuffer(fh.read(), dtype="<f8")
    if data.size != rows * cols:
        raise FixtureError(f"{path}: truncated field dump")
    return data.reshape(rows, cols).astype(float)


def sha256_file(path: PathLike) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def read_field_csv_values(path: PathLike) -> Tuple[np.ndarray, np.ndarray]:
    """Columns ``c`` and ``g`` of a field dump written by :func:`write_field_csv`."""
    with open(path, encoding="utf-8") as fh:
        if fh.readline().strip() != "t,z,c,g":
            raise FixtureError(f"{path}: not a field dump")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    return data[:, 2], data[:, 3]
