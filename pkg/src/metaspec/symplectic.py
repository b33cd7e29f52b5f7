"""Real symplectic matrix algebra, generalized inverses and pseudo-determinants.

All routines operate on plain numpy arrays; the wrapper classes only add
validated structure (block access, eigendata) on top of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

DEFAULT_TOL = 1e-9


class DimensionError(ValueError):
    """Input matrix has an incompatible or odd dimension."""


class SymmetryError(ValueError):
    """Input matrix is not symmetric within tolerance."""


class NonSymplecticError(ValueError):
    """Input matrix fails the symplectic identity within tolerance."""


def standard_J(n: int) -> npt.NDArray[np.float64]:
    """The standard symplectic form [[0, I], [-I, 0]] of size 2n x 2n."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def swap_L(n: int) -> npt.NDArray[np.float64]:
    """The (non-symplectic) block swap [[0, I], [I, 0]] of size 2n x 2n."""
    L = np.zeros((2 * n, 2 * n))
    L[:n, n:] = np.eye(n)
    L[n:, :n] = np.eye(n)
    return L


def is_symplectic(M: npt.NDArray, tol: float = DEFAULT_TOL) -> bool:
    """Whether M'JM = J holds within ``tol * max(1, ||M||_F^2)``."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] % 2 != 0:
        raise DimensionError(f"symplectic matrices have even size, got {M.shape[0]}")
    n = M.shape[0] // 2
    J = standard_J(n)
    residual = np.linalg.norm(M.T @ J @ M - J)
    return bool(residual <= tol * max(1.0, np.linalg.norm(M) ** 2))


def symplectic_residual(M: npt.NDArray) -> float:
    """Frobenius norm of M'JM - J, for diagnostics."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0] // 2
    J = standard_J(n)
    return float(np.linalg.norm(M.T @ J @ M - J))


@dataclass(frozen=True)
class SymplecticMatrix:
    """A validated 2n x 2n real symplectic matrix with block access.

    Blocks follow the layout S = [[A, B], [C, D]] with n x n blocks.
    """

    entries: npt.NDArray[np.float64]
    tol: float = DEFAULT_TOL
    n: int = field(init=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        object.__setattr__(self, "entries", entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError(f"expected square matrix, got {entries.shape}")
        if entries.shape[0] % 2 != 0:
            raise DimensionError("symplectic matrices have even size")
        object.__setattr__(self, "n", entries.shape[0] // 2)
        if not is_symplectic(entries, self.tol):
            raise NonSymplecticError(
                f"matrix is not symplectic: ||S'JS - J|| = {symplectic_residual(entries):.3e}"
            )

    @property
    def A(self) -> npt.NDArray[np.float64]:
        return self.entries[: self.n, : self.n]

    @property
    def B(self) -> npt.NDArray[np.float64]:
        return self.entries[: self.n, self.n :]

    @property
    def C(self) -> npt.NDArray[np.float64]:
        return self.entries[self.n :, : self.n]

    @property
    def D(self) -> npt.NDArray[np.float64]:
        return self.entries[self.n :, self.n :]


def symplectic_inverse(S: SymplecticMatrix | npt.NDArray) -> SymplecticMatrix:
    """Blockwise inverse [[D', -B'], [-C', A']] of a symplectic matrix."""
    if not isinstance(S, SymplecticMatrix):
        S = SymplecticMatrix(np.asarray(S, dtype=float))
    inv = np.block([[S.D.T, -S.B.T], [-S.C.T, S.A.T]])
    return SymplecticMatrix(inv, tol=S.tol)


@dataclass(frozen=True)
class BlockMatrix4d:
    """A 4d x 4d real matrix with access to its sixteen d x d blocks."""

    whole: npt.NDArray[np.float64]
    d: int = field(init=False)

    def __post_init__(self):
        whole = np.asarray(self.whole, dtype=float)
        object.__setattr__(self, "whole", whole)
        if whole.ndim != 2 or whole.shape[0] != whole.shape[1]:
            raise DimensionError(f"expected square matrix, got {whole.shape}")
        if whole.shape[0] % 4 != 0:
            raise DimensionError("expected a 4d x 4d matrix")
        object.__setattr__(self, "d", whole.shape[0] // 4)

    def block(self, i: int, j: int) -> npt.NDArray[np.float64]:
        """Block A_ij with 1-based indices i, j in 1..4."""
        if not (1 <= i <= 4 and 1 <= j <= 4):
            raise DimensionError("block indices run from 1 to 4")
        d = self.d
        return self.whole[(i - 1) * d : i * d, (j - 1) * d : j * d]


def assemble_blocks(blocks: list[list[npt.NDArray]]) -> BlockMatrix4d:
    """Build a BlockMatrix4d from a 4x4 nested list of d x d blocks."""
    return BlockMatrix4d(np.block(blocks))


@dataclass(frozen=True)
class SymEig:
    """Eigendecomposition C = Sigma' diag(lambdas) Sigma of a symmetric matrix.

    Column j of Sigma' is the eigenvector of ``lambdas[j]``; eigenvalues whose
    magnitude falls below the snapping threshold are exactly zero.
    """

    matrix: npt.NDArray[np.float64]
    Sigma: npt.NDArray[np.float64]
    lambdas: npt.NDArray[np.float64]

    @property
    def zero_set(self) -> list[int]:
        """0-based indices j with lambda_j == 0."""
        return [int(j) for j in np.flatnonzero(self.lambdas == 0.0)]


def _check_symmetric(C: npt.NDArray, tol: float) -> npt.NDArray[np.float64]:
    C = np.asarray(C, dtype=float)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise DimensionError(f"expected square matrix, got {C.shape}")
    if np.linalg.norm(C - C.T) > tol * max(1.0, np.linalg.norm(C)):
        raise SymmetryError("matrix is not symmetric within tolerance")
    return C


def sym_eig(C: npt.NDArray, tol: float = DEFAULT_TOL) -> SymEig:
    """Ordered eigendecomposition of a symmetric matrix with zero snapping.

    Eigenvalues with ``|lambda| < 1e-10 * max(1, ||C||_2)`` are snapped to
    exactly zero; ordering is descending by value with ties broken by the
    position reported by the underlying solver (stable sort).
    """
    C = _check_symmetric(C, tol)
    w, V = np.linalg.eigh(C)  # ascending; C = V diag(w) V'
    snap = 1e-10 * max(1.0, float(np.max(np.abs(w), initial=0.0)))
    w = np.where(np.abs(w) < snap, 0.0, w)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    V = V[:, order]
    return SymEig(matrix=C, Sigma=V.T, lambdas=w)


def generalized_inverse(C: npt.NDArray, tol: float = DEFAULT_TOL) -> npt.NDArray[np.float64]:
    """Eigen-inversion on the range: nonzero eigenvalues inverted, zeros kept."""
    eig = sym_eig(C, tol)
    inv = np.where(eig.lambdas != 0.0, np.divide(1.0, eig.lambdas, where=eig.lambdas != 0.0), 0.0)
    return eig.Sigma.T @ np.diag(inv) @ eig.Sigma


def pseudo_determinant(C: npt.NDArray, tol: float = DEFAULT_TOL) -> float:
    """Product of the nonzero eigenvalues; 1.0 for the zero matrix."""
    eig = sym_eig(C, tol)
    nonzero = eig.lambdas[eig.lambdas != 0.0]
    return float(np.prod(nonzero)) if nonzero.size else 1.0


def matrix_from_json(obj: dict) -> BlockMatrix4d:
    """Parse {"d": int, "rows": [[...], ...]} into a BlockMatrix4d."""
    try:
        d = int(obj["d"])
        rows = obj["rows"]
        M = np.array([[float(x) for x in row] for row in rows], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if M.shape != (4 * d, 4 * d):
        raise DimensionError(f"expected a {4 * d}x{4 * d} matrix, got {M.shape}")
    return BlockMatrix4d(M)
