"""Metaplectic operators as ordered generator programs.

A program is a list of elementary steps (Fourier transforms, linear changes
of variables, chirp multiplications/convolutions, flips, scalar phases),
each of which projects onto a known symplectic matrix. Composing the
projections recovers the symplectic matrix of the whole operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .symplectic import (
    DEFAULT_TOL,
    BlockMatrix4d,
    DimensionError,
    SymmetryError,
    SymplecticMatrix,
    standard_J,
)


class SingularMatrixError(ValueError):
    """A linear change of variables requires an invertible matrix."""


@dataclass(frozen=True)
class GeneratorStep:
    """One elementary metaplectic step.

    kind is one of 'fourier', 'fourier2', 'linear', 'chirp_mul',
    'chirp_conv', 'flip', 'phase'. ``matrix`` holds E (linear) or the
    symmetric chirp matrix C; ``phase`` holds the unit-modulus scalar.
    """

    kind: str
    matrix: npt.NDArray[np.float64] | None = None
    phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.kind not in {"fourier", "fourier2", "linear", "chirp_mul", "chirp_conv", "flip", "phase"}:
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.matrix is not None:
            object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        if self.kind == "linear":
            E = self.matrix
            if E is None or abs(np.linalg.det(E)) <= DEFAULT_TOL:
                raise SingularMatrixError("linear change requires |det E| > tol")
        if self.kind in {"chirp_mul", "chirp_conv"}:
            C = self.matrix
            if C is None or np.linalg.norm(C - C.T) > DEFAULT_TOL * max(1.0, np.linalg.norm(C)):
                raise SymmetryError("chirp matrix must be symmetric")
        if self.kind == "phase" and abs(abs(self.phase) - 1.0) > DEFAULT_TOL:
            raise ValueError("scalar phase must have unit modulus")

    def to_json(self) -> dict:
        obj: dict = {"kind": self.kind}
        if self.matrix is not None:
            obj["matrix"] = self.matrix.tolist()
        if self.kind == "phase":
            obj["phase"] = [self.phase.real, self.phase.imag]
        return obj

    @staticmethod
    def from_json(obj: dict) -> "GeneratorStep":
        phase = complex(*obj["phase"]) if "phase" in obj else 1.0 + 0.0j
        matrix = np.array(obj["matrix"], dtype=float) if "matrix" in obj else None
        return GeneratorStep(kind=obj["kind"], matrix=matrix, phase=phase)


@dataclass(frozen=True)
class MetaplecticProgram:
    """Ordered steps acting on functions of n variables; first step applied first."""

    n: int
    steps: tuple[GeneratorStep, ...]
    amplitude: complex = 1.0 + 0.0j
    target: SymplecticMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.target is not None:
            proj = compose_projection(self).entries
            if np.linalg.norm(proj - self.target.entries) > DEFAULT_TOL * max(
                1.0, np.linalg.norm(self.target.entries)
            ):
                raise ValueError("program projection does not match its target matrix")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "amplitude": [self.amplitude.real, self.amplitude.imag],
            "steps": [s.to_json() for s in self.steps],
        }

    @staticmethod
    def from_json(obj: dict) -> "MetaplecticProgram":
        return MetaplecticProgram(
            n=int(obj["n"]),
            steps=tuple(GeneratorStep.from_json(s) for s in obj["steps"]),
            amplitude=complex(*obj.get("amplitude", (1.0, 0.0))),
        )


def dilation_matrix(E: npt.NDArray) -> npt.NDArray[np.float64]:
    """The symplectic matrix [[E^-1, 0], [0, E']] of a linear change."""
    E = np.asarray(E, dtype=float)
    n = E.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[:n, :n] = np.linalg.inv(E)
    out[n:, n:] = E.T
    return out


def chirp_matrix(C: npt.NDArray) -> npt.NDArray[np.float64]:
    """The symplectic matrix [[I, 0], [C, I]] of a chirp multiplication."""
    C = np.asarray(C, dtype=float)
    n = C.shape[0]
    out = np.eye(2 * n)
    out[n:, :n] = C
    return out


def partial_fourier2_matrix(d: int) -> npt.NDArray[np.float64]:
    """Projection of the partial Fourier transform in the second d variables."""
    I = np.eye(d)
    Z = np.zeros((d, d))
    return np.block([[I, Z, Z, Z], [Z, Z, Z, I], [Z, Z, I, Z], [Z, -I, Z, Z]])


def step_projection(step: GeneratorStep, n: int) -> SymplecticMatrix:
    """Symplectic projection of one generator step acting on n variables."""
    if step.kind == "fourier":
        M = standard_J(n)
    elif step.kind == "fourier2":
        if n % 2 != 0:
            raise DimensionError("partial Fourier transform needs an even number of variables")
        M = partial_fourier2_matrix(n // 2)
    elif step.kind == "linear":
        if step.matrix.shape[0] != n:
            raise DimensionError("linear change has wrong dimension")
        M = dilation_matrix(step.matrix)
    elif step.kind == "chirp_mul":
        if step.matrix.shape[0] != n:
            raise DimensionError("chirp has wrong dimension")
        M = chirp_matrix(step.matrix)
    elif step.kind == "chirp_conv":
        if step.matrix.shape[0] != n:
            raise DimensionError("chirp has wrong dimension")
        M = chirp_matrix(step.matrix).T
    elif step.kind == "flip":
        M = dilation_matrix(-np.eye(n))
    else:  # phase
        M = np.eye(2 * n)
    return SymplecticMatrix(M)


def compose_projection(program: MetaplecticProgram) -> SymplecticMatrix:
    """Product of step projections; rightmost factor is the first applied step."""
    if not program.steps:
        raise ValueError("program must contain at least one step")
    out = np.eye(2 * program.n)
    for step in program.steps:
        out = step_projection(step, program.n).entries @ out
    return SymplecticMatrix(out)


def program_for_BA(A: npt.NDArray) -> MetaplecticProgram:
    """Program computing the bilinear distribution of an invertible 2d x 2d map.

    The distribution is ``|det A|^{-1/2} F2 T_A`` applied to f (x) conj(g);
    the scalar prefactor is carried as the program amplitude.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] % 2 != 0:
        raise DimensionError("expected a 2d x 2d matrix")
    det = np.linalg.det(A)
    if abs(det) <= DEFAULT_TOL:
        raise SingularMatrixError("bilinear distribution needs an invertible matrix")
    steps = (GeneratorStep("linear", matrix=A), GeneratorStep("fourier2"))
    return MetaplecticProgram(n=A.shape[0], steps=steps, amplitude=abs(det) ** -0.5)


# -- canonical symplectic matrices and the programs that realize them --------

def stft_change_matrix(d: int) -> npt.NDArray[np.float64]:
    """Change of variables F(x, y) -> F(y, y - x) behind the STFT."""
    I = np.eye(d)
    Z = np.zeros((d, d))
    return np.block([[Z, I], [-I, I]])


def tau_change_matrix(tau: float, d: int) -> npt.NDArray[np.float64]:
    """Change of variables F(x, y) -> F(x + tau*y, x - (1-tau)*y)."""
    I = np.eye(d)
    return np.block([[I, tau * I], [I, -(1 - tau) * I]])


def ba_cohen_matrix(M: npt.NDArray) -> npt.NDArray[np.float64]:
    """The 2d x 2d map [[I, M + I/2], [I, M - I/2]] of a Cohen bilinear form."""
    M = np.asarray(M, dtype=float)
    I = np.eye(M.shape[0])
    return np.block([[I, M + 0.5 * I], [I, M - 0.5 * I]])


def stft_program(d: int) -> MetaplecticProgram:
    """Program whose projection is the STFT matrix A_ST."""
    return MetaplecticProgram(
        n=2 * d,
        steps=(GeneratorStep("linear", matrix=stft_change_matrix(d)), GeneratorStep("fourier2")),
    )


def tau_program(tau: float, d: int) -> MetaplecticProgram:
    """Program whose projection is the tau-Wigner matrix A_tau."""
    return MetaplecticProgram(
        n=2 * d,
        steps=(GeneratorStep("linear", matrix=tau_change_matrix(tau, d)), GeneratorStep("fourier2")),
    )


def wigner_program(d: int) -> MetaplecticProgram:
    """Program for the cross-Wigner distribution (tau = 1/2)."""
    return tau_program(0.5, d)


def A_ST(d: int) -> BlockMatrix4d:
    """Symplectic matrix of the STFT, V_g f = hat(A_ST)(f (x) conj(g))."""
    I = np.eye(d)
    Z = np.zeros((d, d))
    return BlockMatrix4d(np.block([[I, -I, Z, Z], [Z, Z, I, I], [Z, Z, Z, -I], [-I, Z, Z, Z]]))


def A_tau(tau: float, d: int) -> BlockMatrix4d:
    """Symplectic matrix of the tau-Wigner distribution."""
    I = np.eye(d)
    Z = np.zeros((d, d))
    return BlockMatrix4d(
        np.block(
            [
                [(1 - tau) * I, tau * I, Z, Z],
                [Z, Z, tau * I, -(1 - tau) * I],
                [Z, Z, I, I],
                [-I, I, Z, Z],
            ]
        )
    )


def cohen_matrix(A11: npt.NDArray, A13: npt.NDArray, A21: npt.NDArray) -> BlockMatrix4d:
    """Assemble the Cohen-class symplectic matrix from its free blocks.

    A13 and A21 must be symmetric for the result to be symplectic.
    """
    A11 = np.atleast_2d(np.asarray(A11, dtype=float))
    A13 = np.atleast_2d(np.asarray(A13, dtype=float))
    A21 = np.atleast_2d(np.asarray(A21, dtype=float))
    d = A11.shape[0]
    I = np.eye(d)
    Z = np.zeros((d, d))
    return BlockMatrix4d(
        np.block(
            [
                [A11, I - A11, A13, A13],
                [A21, -A21, I - A11.T, -A11.T],
                [Z, Z, I, I],
                [-I, I, Z, Z],
            ]
        )
    )
