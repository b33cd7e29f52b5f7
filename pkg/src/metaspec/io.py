"""File formats: signal CSV with JSON sidecar, TFGrid CSV, matrix JSON, PPM heatmaps."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np
import numpy.typing as npt

from .engine import DiscreteSignal, Grid1D, TFGrid


class FormatError(ValueError):
    """Malformed input file."""


def write_signal(path: str | Path, f: DiscreteSignal) -> None:
    """Write `index,re,im` rows plus a `<path>.json` sidecar holding {N, T}."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "re", "im"])
        for i, v in enumerate(f.values):
            w.writerow([i, repr(float(v.real)), repr(float(v.imag))])
    sidecar = path.with_suffix(path.suffix + ".json")
    sidecar.write_text(json.dumps({"N": f.grid.N, "T": f.grid.T}) + "\n")


def read_signal(path: str | Path) -> DiscreteSignal:
    path = Path(path)
    sidecar = path.with_suffix(path.suffix + ".json")
    if not sidecar.exists():
        raise FormatError(f"missing sidecar {sidecar}")
    try:
        meta = json.loads(sidecar.read_text())
        grid = Grid1D(int(meta["N"]), float(meta["T"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed sidecar {sidecar}: {exc}") from exc
    values = np.zeros(grid.N, dtype=complex)
    seen = 0
    with path.open(newline="") as fh:
        rows = csv.reader(fh)
        header = next(rows, None)
        if header is None or [h.strip() for h in header] != ["index", "re", "im"]:
            raise FormatError(f"{path}: expected header index,re,im")
        for row in rows:
            if not row:
                continue
            try:
                i = int(row[0])
                values[i] = float(row[1]) + 1j * float(row[2])
            except (IndexError, ValueError) as exc:
                raise FormatError(f"{path}: bad row {row}: {exc}") from exc
            seen += 1
    if seen != grid.N:
        raise FormatError(f"{path}: expected {grid.N} samples, found {seen}")
    return DiscreteSignal(grid, values)


def write_tfgrid(path_stem: str | Path, W: TFGrid) -> list[Path]:
    """Write `<stem>.csv` (re,im interleaved matrix) and `<stem>.axes.json`."""
    stem = Path(path_stem)
    grid_path = stem.with_suffix(".csv")
    with grid_path.open("w", newline="") as fh:
        w = csv.writer(fh)
        for row in W.values:
            out: list[str] = []
            for v in row:
                out.append(repr(float(v.real)))
                out.append(repr(float(v.imag)))
            w.writerow(out)
    axes_path = stem.with_suffix(".axes.json")
    axes_path.write_text(
        json.dumps(
            {
                "N": W.grid.N,
                "T": W.grid.T,
                "x": [repr(float(v)) for v in W.grid.x],
                "xi": [repr(float(v)) for v in W.grid.xi],
                "tag": W.tag,
                "params": W.params,
            }
        )
        + "\n"
    )
    return [grid_path, axes_path]


def read_tfgrid(path_stem: str | Path) -> TFGrid:
    stem = Path(path_stem)
    axes_path = stem.with_suffix(".axes.json")
    try:
        meta = json.loads(axes_path.read_text())
        grid = Grid1D(int(meta["N"]), float(meta["T"]))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed axes file {axes_path}: {exc}") from exc
    rows = []
    with stem.with_suffix(".csv").open(newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            vals = [float(x) for x in row]
            rows.append([complex(a, b) for a, b in zip(vals[0::2], vals[1::2])])
    M = np.array(rows, dtype=complex)
    if M.shape != (grid.N, grid.N):
        raise FormatError(f"grid file shape {M.shape} does not match N={grid.N}")
    return TFGrid(grid, M, tag=meta.get("tag", ""), params=meta.get("params", {}))


def write_ppm(path: str | Path, values: npt.NDArray) -> None:
    """P6 grayscale magnitude heatmap, linear colormap over [0, max |value|]."""
    mag = np.abs(np.asarray(values))
    peak = float(mag.max())
    if peak <= 0.0:
        peak = 1.0
    levels = np.clip(np.round(255.0 * mag / peak), 0, 255).astype(np.uint8)
    h, w = levels.shape
    rgb = np.repeat(levels[:, :, None], 3, axis=2)
    with Path(path).open("wb") as fh:
        fh.write(b"P6\n# linear grayscale over [0, max|value|]\n")
        fh.write(f"{w} {h}\n255\n".encode())
        fh.write(rgb.tobytes())


def write_probe_csv(path: str | Path, table: list[tuple[float, float]]) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lambda", "ratio"])
        for lam, ratio in table:
            w.writerow([repr(lam), repr(ratio)])


def read_matrix_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise FormatError(f"cannot read matrix JSON {path}: {exc}") from exc
