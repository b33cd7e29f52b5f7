import numpy as np
import pytest

from metaspec.engine import DiscreteSignal, TFGrid, gaussian
from metaspec.io import (
    FormatError,
    read_matrix_json,
    read_signal,
    read_tfgrid,
    write_ppm,
    write_probe_csv,
    write_signal,
    write_tfgrid,
)
from metaspec.verify import random_mixture


def test_signal_roundtrip_is_exact(tmp_path, grid, rng):
    f = random_mixture(rng, grid)
    p = tmp_path / "sig.csv"
    write_signal(p, f)
    back = read_signal(p)
    assert back.grid == f.grid
    assert np.array_equal(back.values, f.values)


def test_signal_missing_sidecar(tmp_path):
    p = tmp_path / "orphan.csv"
    p.write_text("index,re,im\n0,1.0,0.0\n")
    with pytest.raises(FormatError):
        read_signal(p)


def test_signal_bad_header(tmp_path, grid):
    p = tmp_path / "sig.csv"
    write_signal(p, gaussian(grid))
    p.write_text("a,b,c\n" + p.read_text().split("\n", 1)[1])
    with pytest.raises(FormatError):
        read_signal(p)


def test_signal_wrong_sample_count(tmp_path, grid):
    p = tmp_path / "sig.csv"
    write_signal(p, gaussian(grid))
    lines = p.read_text().strip().split("\n")
    p.write_text("\n".join(lines[:-5]) + "\n")
    with pytest.raises(FormatError):
        read_signal(p)


def test_tfgrid_roundtrip_is_exact(tmp_path, grid, rng):
    vals = rng.normal(size=(grid.N, grid.N)) + 1j * rng.normal(size=(grid.N, grid.N))
    W = TFGrid(grid, vals, tag="test", params={"tau": 0.3})
    files = write_tfgrid(tmp_path / "w", W)
    assert len(files) == 2
    back = read_tfgrid(tmp_path / "w")
    assert np.array_equal(back.values, W.values)
    assert back.tag == "test"
    assert back.params["tau"] == 0.3


def test_tfgrid_shape_mismatch(tmp_path, grid):
    W = TFGrid(grid, np.zeros((grid.N, grid.N), dtype=complex))
    write_tfgrid(tmp_path / "w", W)
    csv_path = tmp_path / "w.csv"
    lines = csv_path.read_text().strip().split("\n")
    csv_path.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(FormatError):
        read_tfgrid(tmp_path / "w")


def test_ppm_header_and_size(tmp_path, grid):
    vals = np.outer(np.abs(grid.x), np.ones(grid.N))
    p = tmp_path / "heat.ppm"
    write_ppm(p, vals)
    data = p.read_bytes()
    assert data.startswith(b"P6\n")
    header, _, rest = data.partition(b"255\n")
    assert f"{grid.N} {grid.N}".encode() in header
    assert len(rest) == 3 * grid.N * grid.N


def test_ppm_constant_zero_field(tmp_path):
    p = tmp_path / "zero.ppm"
    write_ppm(p, np.zeros((8, 8)))
    rest = p.read_bytes().rpartition(b"255\n")[2]
    assert set(rest) == {0}


def test_probe_csv(tmp_path):
    p = tmp_path / "probe.csv"
    write_probe_csv(p, [(0.5, 1.25), (1.0, 1.0)])
    lines = p.read_text().strip().split("\n")
    assert lines[0] == "lambda,ratio"
    assert len(lines) == 3


def test_matrix_json_errors(tmp_path):
    p = tmp_path / "m.json"
    p.write_text("{not json")
    with pytest.raises(FormatError):
        read_matrix_json(p)
    with pytest.raises(FormatError):
        read_matrix_json(tmp_path / "missing.json")
