"""HTTP service exposing classification, transforms, probes, and verification.

All payloads are JSON; complex arrays travel as [re, im] pairs. Input
errors map to 400, mathematical precondition failures (singular parameter,
non-Cohen matrix, singular linear change) to 409. A valid but
non-symplectic matrix is not an error: classification reports it.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .classify import NotCohenError, cohen_class_test, shift_invertibility_test, spectrogram_test
from .engine import (
    DiscreteSignal,
    Grid1D,
    GridError,
    TFGrid,
    ba_distribution,
    generalized_spectrogram,
    metaplectic_spectrogram,
    program_tfgrid,
    realize_window,
    stft,
    tau_wigner,
    wigner,
)
from .kernels import SingularParameterError
from .programs import MetaplecticProgram, SingularMatrixError, wigner_program
from .quantize import lp_norm_probe
from .symplectic import BlockMatrix4d, DimensionError, NonSymplecticError, symplectic_residual
from .verify import SUITES, run_suite

app = FastAPI(title="metaspec", version=__version__)

ComplexPair = tuple[float, float]


class SignalPayload(BaseModel):
    N: int
    T: float
    values: list[ComplexPair]

    def to_signal(self) -> DiscreteSignal:
        grid = Grid1D(self.N, self.T)
        vals = np.array([complex(a, b) for a, b in self.values])
        return DiscreteSignal(grid, vals)

    @staticmethod
    def from_signal(f: DiscreteSignal) -> "SignalPayload":
        return SignalPayload(
            N=f.grid.N, T=f.grid.T, values=[(float(v.real), float(v.imag)) for v in f.values]
        )


class TFGridPayload(BaseModel):
    N: int
    T: float
    tag: str
    params: dict
    values: list[list[ComplexPair]]

    @staticmethod
    def from_tfgrid(W: TFGrid) -> "TFGridPayload":
        return TFGridPayload(
            N=W.grid.N,
            T=W.grid.T,
            tag=W.tag,
            params={k: v for k, v in W.params.items()},
            values=[[(float(v.real), float(v.imag)) for v in row] for row in W.values],
        )


class MatrixPayload(BaseModel):
    d: int
    rows: list[list[float]]

    def to_array(self) -> np.ndarray:
        M = np.array(self.rows, dtype=float)
        if M.shape != (4 * self.d, 4 * self.d):
            raise HTTPException(400, detail=f"expected a {4 * self.d}x{4 * self.d} matrix")
        return M


def _run(fn, *args, **kwargs):
    """Translate core exceptions into the HTTP error contract."""
    try:
        return fn(*args, **kwargs)
    except (NotCohenError, NonSymplecticError, SingularParameterError, SingularMatrixError) as exc:
        raise HTTPException(409, detail=str(exc)) from exc
    except (GridError, DimensionError, ValueError) as exc:
        raise HTTPException(400, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


class ClassifyRequest(BaseModel):
    matrix: MatrixPayload
    tol: float = 1e-9


class ClassifyResponse(BaseModel):
    symplectic: bool
    symplectic_residual: float
    cohen: dict | None = None
    shift_invertible: bool | None = None
    E_A: list[list[float]] | None = None
    spectrogram: dict | None = None


@app.post("/classify", response_model=ClassifyResponse)
def classify(req: ClassifyRequest) -> ClassifyResponse:
    M = req.matrix.to_array()
    residual = float(symplectic_residual(M))
    A = _run(BlockMatrix4d, M)
    scale = max(1.0, float(np.linalg.norm(M)) ** 2)
    if residual > req.tol * scale:
        return ClassifyResponse(symplectic=False, symplectic_residual=residual)
    cohen = _run(cohen_class_test, A, req.tol)
    out = ClassifyResponse(
        symplectic=True, symplectic_residual=residual, cohen=cohen.to_json()
    )
    if cohen.is_cohen:
        invertible, E_A = _run(shift_invertibility_test, A, req.tol)
        spec = _run(spectrogram_test, A, req.tol)
        out = out.model_copy(
            update={
                "shift_invertible": bool(invertible),
                "E_A": E_A.tolist(),
                "spectrogram": spec.to_json(),
            }
        )
    return out


class WindowsRequest(BaseModel):
    matrix: MatrixPayload
    N: int = 256
    T: float = 16.0
    epsilon: float = 0.1
    tol: float = 1e-9


class WindowsResponse(BaseModel):
    psi: SignalPayload
    phi: SignalPayload
    report: dict


@app.post("/windows", response_model=WindowsResponse)
def windows(req: WindowsRequest) -> WindowsResponse:
    A = _run(BlockMatrix4d, req.matrix.to_array())
    rep = _run(spectrogram_test, A, req.tol)
    if not rep.is_spectrogram:
        raise HTTPException(409, detail=f"not a generalized spectrogram: {rep.failure_reason}")
    grid = _run(Grid1D, req.N, req.T)
    psi = _run(realize_window, rep.psi, grid, req.epsilon)
    phi = _run(realize_window, rep.phi, grid, req.epsilon)
    return WindowsResponse(
        psi=SignalPayload.from_signal(psi),
        phi=SignalPayload.from_signal(phi),
        report=rep.to_json(),
    )


class TransformRequest(BaseModel):
    rep: Literal["stft", "wigner", "tau", "ba", "metaplectic", "genspec", "metaspec"]
    f: SignalPayload
    g: SignalPayload | None = None
    phi: SignalPayload | None = None
    psi: SignalPayload | None = None
    tau: float | None = None
    ba_matrix: list[list[float]] | None = None
    program: dict | None = None
    program_b: dict | None = None


@app.post("/transform", response_model=TFGridPayload)
def transform(req: TransformRequest) -> TFGridPayload:
    f = _run(req.f.to_signal)
    g = _run(req.g.to_signal) if req.g is not None else f

    def build() -> TFGrid:
        if req.rep == "stft":
            return stft(f, g)
        if req.rep == "wigner":
            return wigner(f, g)
        if req.rep == "tau":
            if req.tau is None:
                raise HTTPException(400, detail="tau transform requires the tau parameter")
            return tau_wigner(f, g, req.tau)
        if req.rep == "ba":
            if req.ba_matrix is None:
                raise HTTPException(400, detail="ba transform requires a 2x2 matrix")
            return ba_distribution(f, g, np.array(req.ba_matrix, dtype=float))
        if req.rep == "metaplectic":
            if req.program is None:
                raise HTTPException(400, detail="metaplectic transform requires a program")
            prog = MetaplecticProgram.from_json(req.program)
            return program_tfgrid(prog, f, g)
        phi = _need_window(req.phi, "phi")
        psi = _need_window(req.psi, "psi")
        if req.rep == "genspec":
            return generalized_spectrogram(f, g, phi, psi)
        pA = MetaplecticProgram.from_json(req.program) if req.program else wigner_program(1)
        pB = MetaplecticProgram.from_json(req.program_b) if req.program_b else pA
        return metaplectic_spectrogram(f, g, phi, psi, pA, pB)

    W = _run(build)
    return TFGridPayload.from_tfgrid(W)


def _need_window(payload: SignalPayload | None, name: str) -> DiscreteSignal:
    if payload is None:
        raise HTTPException(400, detail=f"this representation requires window {name}")
    return _run(payload.to_signal)


class VerifyRequest(BaseModel):
    suite: str = "all"
    seed: int = 42
    N: int = 256
    T: float = 16.0


class VerifyResponse(BaseModel):
    suite: str
    seed: int
    passed: bool
    report: str = Field(description="canonical JSON report, byte-stable for a fixed seed")
    summary: str


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    if req.suite not in SUITES:
        raise HTTPException(400, detail=f"unknown suite {req.suite!r}; choose from {sorted(SUITES)}")
    grid = _run(Grid1D, req.N, req.T)
    report = _run(run_suite, req.suite, req.seed, grid)
    return VerifyResponse(
        suite=report.suite,
        seed=report.seed,
        passed=report.passed,
        report=report.to_json_str(),
        summary=report.summary(),
    )


class ProbeRequest(BaseModel):
    p: float
    q: float
    lambdas: list[float] | None = None
    N: int = 256
    T: float = 16.0


class ProbeResponse(BaseModel):
    p: float
    q: float
    bounded_predicted: bool
    table: list[tuple[float, float]]
    variation: float


@app.post("/probe", response_model=ProbeResponse)
def probe(req: ProbeRequest) -> ProbeResponse:
    from .classify import lp_wigner_bounded

    lambdas = req.lambdas or [float(2.0 ** k) for k in range(-6, 7)]
    grid = _run(Grid1D, req.N, req.T)
    table = _run(lp_norm_probe, wigner_program(1), req.p, req.q, lambdas, grid)
    ratios = [r for _, r in table]
    return ProbeResponse(
        p=req.p,
        q=req.q,
        bounded_predicted=_run(lp_wigner_bounded, req.p, req.q),
        table=[(lam, ratio) for lam, ratio in table],
        variation=max(ratios) / min(ratios),
    )
