"""Command-line front end.

The CLI is a thin client over the HTTP service. By default it talks to an
in-process ASGI transport (no socket); pass --server to target a running
instance instead. Exit codes: 0 success, 1 verification failure, 2 input
error, 3 mathematical precondition failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx
import numpy as np

from .engine import DiscreteSignal, Grid1D, TFGrid
from .io import FormatError, read_matrix_json, read_signal, write_ppm, write_probe_csv, write_tfgrid

EXIT_VERIFY_FAIL = 1
EXIT_INPUT = 2
EXIT_MATH = 3


class ServiceClient:
    def __init__(self, server: str | None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app, raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            click.echo(f"error: cannot reach service: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        if resp.status_code == 409:
            click.echo(f"error: {_detail(resp)}", err=True)
            sys.exit(EXIT_MATH)
        if resp.status_code >= 400:
            click.echo(f"error: {_detail(resp)}", err=True)
            sys.exit(EXIT_INPUT)
        return resp.json()


def _detail(resp: httpx.Response) -> str:
    try:
        return str(resp.json().get("detail"))
    except ValueError:
        return resp.text


def _signal_payload(path: str) -> dict:
    try:
        f = read_signal(path)
    except (FormatError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    return {
        "N": f.grid.N,
        "T": f.grid.T,
        "values": [[float(v.real), float(v.imag)] for v in f.values],
    }


def _matrix_payload(path: str) -> dict:
    try:
        obj = read_matrix_json(path)
        d = int(obj["d"])
        rows = [[float(v) for v in row] for row in obj["rows"]]
    except (FormatError, KeyError, TypeError, ValueError) as exc:
        click.echo(f"error: malformed matrix JSON {path}: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    return {"d": d, "rows": rows}


def _signal_from_payload(obj: dict) -> DiscreteSignal:
    grid = Grid1D(int(obj["N"]), float(obj["T"]))
    vals = np.array([complex(a, b) for a, b in obj["values"]])
    return DiscreteSignal(grid, vals)


def _tfgrid_from_payload(obj: dict) -> TFGrid:
    grid = Grid1D(int(obj["N"]), float(obj["T"]))
    vals = np.array([[complex(a, b) for a, b in row] for row in obj["values"]])
    return TFGrid(grid, vals, tag=obj.get("tag", ""), params=obj.get("params", {}))


def _outdir(out: str | None) -> Path:
    d = Path(out) if out else Path.cwd()
    d.mkdir(parents=True, exist_ok=True)
    return d


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Metaplectic time-frequency analysis toolkit."""
    ctx.obj = ServiceClient(server)


@main.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=False))
@click.option("--tol", default=1e-9, show_default=True)
@click.option("--out", default=None, help="Output directory for report files.")
@click.option("--window", is_flag=True, help="Also synthesize spectrogram window signals.")
@click.option("--eps", default=0.1, show_default=True, help="Mollifier width for delta windows.")
@click.option("--N", "n_points", default=256, show_default=True)
@click.option("--T", "period", default=16.0, show_default=True)
@click.pass_obj
def classify(client: ServiceClient, matrix_path, tol, out, window, eps, n_points, period) -> None:
    """Classify a 4d x 4d symplectic matrix (Cohen / shift-invertible / spectrogram)."""
    payload = {"matrix": _matrix_payload(matrix_path), "tol": tol}
    rep = client.post("/classify", payload)
    outdir = _outdir(out)
    (outdir / "classification.json").write_text(json.dumps(rep, sort_keys=True, indent=2) + "\n")
    if not rep["symplectic"]:
        click.echo(f"not symplectic: residual {rep['symplectic_residual']:.3e}", err=True)
        sys.exit(EXIT_MATH)
    cohen = rep["cohen"]["is_cohen"]
    click.echo(f"symplectic: true (residual {rep['symplectic_residual']:.3e})")
    click.echo(f"cohen: {str(cohen).lower()}")
    if cohen:
        spec = rep["spectrogram"]
        click.echo(f"shift_invertible: {str(rep['shift_invertible']).lower()}")
        click.echo(f"spectrogram: {str(spec['is_spectrogram']).lower()}")
        if not spec["is_spectrogram"]:
            click.echo(f"failure_reason: {spec['failure_reason']}")
    if window:
        wrep = client.post(
            "/windows",
            {"matrix": payload["matrix"], "N": n_points, "T": period, "epsilon": eps, "tol": tol},
        )
        from .io import write_signal

        write_signal(outdir / "window_psi.csv", _signal_from_payload(wrep["psi"]))
        write_signal(outdir / "window_phi.csv", _signal_from_payload(wrep["phi"]))
        click.echo(f"windows written to {outdir}")


@main.command()
@click.argument("rep", type=click.Choice(["stft", "wigner", "tau", "ba", "metaplectic", "genspec", "metaspec"]))
@click.argument("signals", nargs=-1, type=click.Path())
@click.option("--tau", default=None, type=float)
@click.option("--matrix", "matrix_path", default=None, help="2x2 matrix JSON for the ba representation.")
@click.option("--program", "program_path", default=None, help="Program JSON for metaplectic representations.")
@click.option("--window", "window_paths", multiple=True, help="Window signal(s): phi then psi.")
@click.option("--out", default=None)
@click.option("--ppm", is_flag=True, help="Also write a grayscale magnitude heatmap.")
@click.pass_obj
def transform(client: ServiceClient, rep, signals, tau, matrix_path, program_path, window_paths, out, ppm) -> None:
    """Compute a time-frequency representation of one or two signals."""
    if not signals:
        click.echo("error: at least one signal file is required", err=True)
        sys.exit(EXIT_INPUT)
    payload: dict = {"rep": rep, "f": _signal_payload(signals[0])}
    if len(signals) > 1:
        payload["g"] = _signal_payload(signals[1])
    if tau is not None:
        payload["tau"] = tau
    if matrix_path:
        try:
            payload["ba_matrix"] = json.loads(Path(matrix_path).read_text())["rows"]
        except (OSError, KeyError, ValueError) as exc:
            click.echo(f"error: malformed matrix JSON {matrix_path}: {exc}", err=True)
            sys.exit(EXIT_INPUT)
    if program_path:
        try:
            payload["program"] = json.loads(Path(program_path).read_text())
        except (OSError, ValueError) as exc:
            click.echo(f"error: malformed program JSON {program_path}: {exc}", err=True)
            sys.exit(EXIT_INPUT)
    if rep in ("genspec", "metaspec"):
        phi = _signal_payload(window_paths[0]) if window_paths else payload["f"]
        psi = _signal_payload(window_paths[1]) if len(window_paths) > 1 else phi
        payload["phi"] = phi
        payload["psi"] = psi
    result = client.post("/transform", payload)
    W = _tfgrid_from_payload(result)
    outdir = _outdir(out)
    stem = outdir / rep
    files = write_tfgrid(stem, W)
    if ppm:
        ppm_path = stem.with_suffix(".ppm")
        write_ppm(ppm_path, W.values)
        files.append(ppm_path)
    for p in files:
        click.echo(str(p))


@main.command()
@click.argument("suite", default="all")
@click.option("--seed", default=42, show_default=True)
@click.option("--N", "n_points", default=256, show_default=True)
@click.option("--T", "period", default=16.0, show_default=True)
@click.option("--out", default=None)
@click.pass_obj
def verify(client: ServiceClient, suite, seed, n_points, period, out) -> None:
    """Run a verification suite; exit 0 iff every case passes."""
    rep = client.post("/verify", {"suite": suite, "seed": seed, "N": n_points, "T": period})
    outdir = _outdir(out)
    (outdir / f"verify_{suite}.json").write_text(rep["report"])
    click.echo(rep["summary"])
    if not rep["passed"]:
        sys.exit(EXIT_VERIFY_FAIL)


@main.command()
@click.option("--p", required=True, type=float)
@click.option("--q", required=True, type=float)
@click.option("--N", "n_points", default=256, show_default=True)
@click.option("--T", "period", default=16.0, show_default=True)
@click.option("--out", default=None)
@click.pass_obj
def probe(client: ServiceClient, p, q, n_points, period, out) -> None:
    """Sweep the norm ratio of the cross-Wigner distribution over Gaussian widths."""
    rep = client.post("/probe", {"p": p, "q": q, "N": n_points, "T": period})
    for lam, ratio in rep["table"]:
        click.echo(f"lambda={lam:.6g} ratio={ratio:.6g}")
    click.echo(f"variation={rep['variation']:.6g} bounded_predicted={rep['bounded_predicted']}")
    if out:
        outdir = _outdir(out)
        write_probe_csv(outdir / "probe.csv", [(float(l), float(r)) for l, r in rep["table"]])


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
