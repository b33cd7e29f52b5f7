"""Closed-form Cohen kernels and Fourier transforms of degenerate chirps.

A chirp ``Phi_C(x) = exp(i pi x'Cx)`` has a Fourier transform that is again
a chirp, scaled by a Fresnel phase and a pseudo-determinant factor, times a
delta in the directions where C degenerates. The ChirpDelta container keeps
that structure symbolic; deltas are only ever realized through mollifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import numpy.typing as npt

from .symplectic import DEFAULT_TOL, SymmetryError, sym_eig


class SingularParameterError(ValueError):
    """Parameter value at which the closed-form kernel degenerates."""


@dataclass(frozen=True)
class ChirpDelta:
    """amplitude * exp(i pi z'Qz) * prod_{j in delta_set} delta_0((R z)_j).

    ``delta_set`` uses 1-based coordinate indices after the rotation R;
    with an empty delta_set the object is an ordinary smooth function.
    """

    amplitude: complex
    chirp: npt.NDArray[np.float64]
    delta_set: tuple[int, ...]
    rotation: npt.NDArray[np.float64]

    def __post_init__(self):
        Q = np.atleast_2d(np.asarray(self.chirp, dtype=float))
        R = np.atleast_2d(np.asarray(self.rotation, dtype=float))
        object.__setattr__(self, "chirp", Q)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "delta_set", tuple(int(j) for j in self.delta_set))
        n = Q.shape[0]
        if np.linalg.norm(Q - Q.T) > DEFAULT_TOL * max(1.0, np.linalg.norm(Q)):
            raise SymmetryError("chirp matrix must be symmetric")
        if np.linalg.norm(R @ R.T - np.eye(n)) > DEFAULT_TOL * max(1.0, n):
            raise ValueError("rotation must be orthogonal")
        if any(not (1 <= j <= n) for j in self.delta_set):
            raise ValueError("delta_set indices must lie in 1..n")

    @property
    def n(self) -> int:
        return self.chirp.shape[0]

    def values(self, points: npt.NDArray) -> npt.NDArray[np.complex128]:
        """Pointwise values; only defined when there is no delta factor.

        ``points`` has shape (..., n).
        """
        if self.delta_set:
            raise SingularParameterError("distribution with delta factors has no pointwise values")
        z = np.asarray(points, dtype=float)
        quad = np.einsum("...i,ij,...j->...", z, self.chirp, z)
        return self.amplitude * np.exp(1j * np.pi * quad)

    def mollified_values(self, points: npt.NDArray, epsilon: float) -> npt.NDArray[np.complex128]:
        """Values with each delta replaced by a width-epsilon Gaussian mollifier."""
        if epsilon <= 0:
            raise ValueError("mollifier width must be positive")
        z = np.asarray(points, dtype=float)
        quad = np.einsum("...i,ij,...j->...", z, self.chirp, z)
        out = self.amplitude * np.exp(1j * np.pi * quad)
        if self.delta_set:
            w = np.einsum("ij,...j->...i", self.rotation, z)
            for j in self.delta_set:
                out = out * np.exp(-np.pi * (w[..., j - 1] / epsilon) ** 2) / epsilon
        return out

    def to_json(self) -> dict:
        return {
            "amplitude": [self.amplitude.real, self.amplitude.imag],
            "chirp": self.chirp.tolist(),
            "delta_set": list(self.delta_set),
            "rotation": self.rotation.tolist(),
        }

    @staticmethod
    def from_json(obj: dict) -> "ChirpDelta":
        return ChirpDelta(
            amplitude=complex(*obj["amplitude"]),
            chirp=np.array(obj["chirp"], dtype=float),
            delta_set=tuple(obj["delta_set"]),
            rotation=np.array(obj["rotation"], dtype=float),
        )


def fourier_of_chirp(C: npt.NDArray, tol: float = DEFAULT_TOL) -> ChirpDelta:
    """Fourier transform of exp(i pi x'Cx) for symmetric, possibly singular C.

    Diagonalizing C = Sigma' diag(lambda) Sigma, each nonzero eigenvalue
    contributes a Fresnel factor exp(i pi sgn(lambda)/4) / sqrt(|lambda|)
    and an inverted chirp rate, while each zero eigenvalue leaves a delta
    in the corresponding rotated coordinate.
    """
    eig = sym_eig(C, tol)
    nonzero = eig.lambdas[eig.lambdas != 0.0]
    phase = np.exp(1j * np.pi * np.sum(np.sign(nonzero)) / 4.0) if nonzero.size else 1.0 + 0.0j
    amplitude = phase / np.sqrt(np.prod(np.abs(nonzero))) if nonzero.size else phase
    inv = np.where(eig.lambdas != 0.0, np.divide(1.0, eig.lambdas, where=eig.lambdas != 0.0), 0.0)
    chirp = -(eig.Sigma.T @ np.diag(inv) @ eig.Sigma)
    delta_set = tuple(j + 1 for j in eig.zero_set)
    return ChirpDelta(
        amplitude=complex(amplitude),
        chirp=0.5 * (chirp + chirp.T),
        delta_set=delta_set,
        rotation=eig.Sigma,
    )


def tau_kernel(tau: float, d: int, tol: float = DEFAULT_TOL) -> Callable[[npt.NDArray, npt.NDArray], npt.NDArray]:
    """Pointwise evaluator sigma_tau(x, xi) = 2^d/|2tau-1|^d exp(4 pi i x.xi/(2tau-1)).

    At tau = 1/2 the kernel collapses to a delta and has no pointwise form.
    """
    if abs(2.0 * tau - 1.0) <= tol:
        raise SingularParameterError("tau = 1/2 kernel is a delta; handle it upstream")
    amp = (2.0 / abs(2.0 * tau - 1.0)) ** d
    rate = 2.0 / (2.0 * tau - 1.0)

    def sigma(x: npt.NDArray, xi: npt.NDArray) -> npt.NDArray[np.complex128]:
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        if d == 1:
            dot = x * xi
        else:
            dot = np.sum(x * xi, axis=-1)
        return amp * np.exp(2j * np.pi * rate * dot)

    return sigma


def block_antidiagonal(M: npt.NDArray) -> npt.NDArray[np.float64]:
    """The symmetric 2d x 2d matrix [[0, M], [M', 0]]."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    d = M.shape[0]
    Z = np.zeros((d, d))
    return np.block([[Z, M], [M.T, Z]])


def theta_M(M: npt.NDArray, tol: float = DEFAULT_TOL) -> ChirpDelta:
    """Cohen convolution kernel of the bilinear form indexed by M.

    Built from the eigendecomposition of [[0, M], [M', 0]], whose spectrum
    pairs +s and -s for each singular value s of M. For invertible M the
    result is the smooth kernel |det M|^{-1} exp(2 pi i (M^{-1}x).xi); zero
    singular values contribute delta factors instead.
    """
    MM = block_antidiagonal(M)
    eig = sym_eig(MM, tol)
    nonzero = eig.lambdas[eig.lambdas != 0.0]
    # Eigenvalues pair off as +s, -s, so the Fresnel phases cancel exactly.
    amplitude = 1.0 / np.sqrt(np.prod(np.abs(nonzero))) if nonzero.size else 1.0
    inv = np.where(eig.lambdas != 0.0, np.divide(1.0, eig.lambdas, where=eig.lambdas != 0.0), 0.0)
    chirp = eig.Sigma.T @ np.diag(inv) @ eig.Sigma
    delta_set = tuple(j + 1 for j in eig.zero_set)
    return ChirpDelta(
        amplitude=complex(amplitude),
        chirp=0.5 * (chirp + chirp.T),
        delta_set=delta_set,
        rotation=eig.Sigma,
    )


def cohen_multiplier(M_A: npt.NDArray, tol: float = DEFAULT_TOL) -> Callable[[npt.NDArray], npt.NDArray]:
    """Fourier multiplier zeta -> exp(-i pi zeta' M_A zeta) of a Cohen convolution."""
    M_A = np.atleast_2d(np.asarray(M_A, dtype=float))
    if np.linalg.norm(M_A - M_A.T) > tol * max(1.0, np.linalg.norm(M_A)):
        raise SymmetryError("covariance matrix must be symmetric")

    def multiplier(zeta: npt.NDArray) -> npt.NDArray[np.complex128]:
        z = np.asarray(zeta, dtype=float)
        quad = np.einsum("...i,ij,...j->...", z, M_A, z)
        return np.exp(-1j * np.pi * quad)

    return multiplier
