"""Structural classification of 4d x 4d symplectic matrices.

Implements the Cohen-class block pattern, the shift-invertibility criterion
on that sub-class, the generalized-spectrogram characterization with its
explicit window synthesis, the one-dimensional trichotomy, and the Lp
boundedness predicates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

import numpy as np
import numpy.typing as npt

from .symplectic import (
    DEFAULT_TOL,
    BlockMatrix4d,
    NonSymplecticError,
    generalized_inverse,
    is_symplectic,
    sym_eig,
)


class NotCohenError(ValueError):
    """Operation is only defined on the Cohen sub-class."""


@dataclass(frozen=True)
class CohenReport:
    is_cohen: bool
    M_A: npt.NDArray[np.float64] | None
    violations: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "is_cohen": self.is_cohen,
            "M_A": self.M_A.tolist() if self.M_A is not None else None,
            "violations": list(self.violations),
        }


@dataclass(frozen=True)
class WindowSpec:
    """Symbolic spectrogram window: amplitude * chirp * delta constraints.

    The window value is ``amplitude * exp(i pi x'Qx)`` times, for each j in
    ``delta_set`` (1-based coordinate indices), a factor
    ``delta_0(R_{j*} . x)`` with R the constraint matrix.
    """

    amplitude: complex
    chirp: npt.NDArray[np.float64]
    delta_set: tuple[int, ...] = ()
    delta_matrix: npt.NDArray[np.float64] | None = None

    def __post_init__(self):
        Q = np.atleast_2d(np.asarray(self.chirp, dtype=float))
        object.__setattr__(self, "chirp", Q)
        if np.linalg.norm(Q - Q.T) > DEFAULT_TOL * max(1.0, np.linalg.norm(Q)):
            raise ValueError("window chirp matrix must be symmetric")
        if self.delta_matrix is not None:
            object.__setattr__(self, "delta_matrix", np.atleast_2d(np.asarray(self.delta_matrix, dtype=float)))
        if self.delta_set and self.delta_matrix is None:
            raise ValueError("delta constraints require a constraint matrix")

    def to_json(self) -> dict:
        return {
            "amplitude": [self.amplitude.real, self.amplitude.imag],
            "chirp": self.chirp.tolist(),
            "delta_set": list(self.delta_set),
            "delta_matrix": self.delta_matrix.tolist() if self.delta_matrix is not None else None,
        }


@dataclass(frozen=True)
class SpectrogramReport:
    is_spectrogram: bool
    psi: WindowSpec | None = None
    phi: WindowSpec | None = None
    Z: tuple[int, ...] = ()
    Z1: tuple[int, ...] = ()
    Z2: tuple[int, ...] = ()
    failure_reason: str | None = None  # A13_not_symmetric | A21_not_symmetric | coupling_residual | zero_row_condition

    def to_json(self) -> dict:
        return {
            "is_spectrogram": self.is_spectrogram,
            "psi": self.psi.to_json() if self.psi else None,
            "phi": self.phi.to_json() if self.phi else None,
            "Z": list(self.Z),
            "Z1": list(self.Z1),
            "Z2": list(self.Z2),
            "failure_reason": self.failure_reason,
        }


def _close(X: npt.NDArray, Y: npt.NDArray, scale: float, tol: float) -> bool:
    return np.linalg.norm(X - Y) <= tol * scale


def cohen_class_test(A: BlockMatrix4d, tol: float = DEFAULT_TOL) -> CohenReport:
    """Check the Cohen-class block pattern and extract the covariance matrix.

    On success returns M_A = [[A13, I/2 - A11], [I/2 - A11', -A21]].
    """
    if not is_symplectic(A.whole, tol):
        raise NonSymplecticError("cohen_class_test requires a symplectic matrix")
    d = A.d
    I = np.eye(d)
    Z = np.zeros((d, d))
    scale = max(1.0, float(np.linalg.norm(A.whole)))
    A11 = A.block(1, 1)
    A13 = A.block(1, 3)
    A21 = A.block(2, 1)
    checks = {
        "A12 != I - A11": _close(A.block(1, 2), I - A11, scale, tol),
        "A14 != A13": _close(A.block(1, 4), A13, scale, tol),
        "A22 != -A21": _close(A.block(2, 2), -A21, scale, tol),
        "A23 != I - A11'": _close(A.block(2, 3), I - A11.T, scale, tol),
        "A24 != -A11'": _close(A.block(2, 4), -A11.T, scale, tol),
        "row3 != [0 0 I I]": all(
            _close(A.block(3, j), blk, scale, tol) for j, blk in ((1, Z), (2, Z), (3, I), (4, I))
        ),
        "row4 != [-I I 0 0]": all(
            _close(A.block(4, j), blk, scale, tol) for j, blk in ((1, -I), (2, I), (3, Z), (4, Z))
        ),
        "A13 not symmetric": _close(A13, A13.T, scale, tol),
        "A21 not symmetric": _close(A21, A21.T, scale, tol),
    }
    violations = tuple(name for name, ok in checks.items() if not ok)
    if violations:
        return CohenReport(is_cohen=False, M_A=None, violations=violations)
    M_A = np.block([[A13, 0.5 * I - A11], [0.5 * I - A11.T, -A21]])
    return CohenReport(is_cohen=True, M_A=M_A, violations=())


def shift_invertibility_matrix(A: BlockMatrix4d, tol: float = DEFAULT_TOL) -> npt.NDArray[np.float64]:
    """E_A = [[A11, A13], [A21, I - A11]] for a Cohen-class matrix."""
    report = cohen_class_test(A, tol)
    if not report.is_cohen:
        raise NotCohenError(f"matrix is not in the Cohen class: {report.violations}")
    I = np.eye(A.d)
    return np.block([[A.block(1, 1), A.block(1, 3)], [A.block(2, 1), I - A.block(1, 1)]])


def shift_invertibility_test(A: BlockMatrix4d, tol: float = DEFAULT_TOL) -> tuple[bool, npt.NDArray[np.float64]]:
    """Whether the Cohen-class distribution is shift-invertible, with E_A."""
    E_A = shift_invertibility_matrix(A, tol)
    return bool(abs(np.linalg.det(E_A)) > tol), E_A


def spectrogram_test(A: BlockMatrix4d, tol: float = DEFAULT_TOL) -> SpectrogramReport:
    """Decide whether W_A is a generalized spectrogram and emit its windows.

    The windows use the chirp matrices from the equivalence proof,
    ``A21 + (I - A11)' A13^- (I - A11)`` for psi and
    ``-(A21 + A11' A13^- A11)`` for phi, which cover the invertible,
    fully-degenerate and mixed branches of A13 uniformly. The coupling
    equation on A21 only applies when A13 has a nonzero eigenvalue; in
    the fully degenerate branch the delta constraints absorb the cross
    term and A21 stays free. Reported index sets are 1-based.
    """
    report = cohen_class_test(A, tol)
    if not report.is_cohen:
        raise NotCohenError(f"matrix is not in the Cohen class: {report.violations}")
    d = A.d
    I = np.eye(d)
    A11 = A.block(1, 1)
    A13 = A.block(1, 3)
    A21 = A.block(2, 1)
    scale = max(1.0, float(np.linalg.norm(A.whole)))

    if np.linalg.norm(A13 - A13.T) > tol * scale:
        return SpectrogramReport(False, failure_reason="A13_not_symmetric")
    if np.linalg.norm(A21 - A21.T) > tol * scale:
        return SpectrogramReport(False, failure_reason="A21_not_symmetric")

    eig = sym_eig(A13, tol)
    Sigma = eig.Sigma
    Z = tuple(j + 1 for j in eig.zero_set)
    A13_inv = generalized_inverse(A13, tol)

    fully_degenerate = len(Z) == d
    if not fully_degenerate:
        coupling = A21 - A11.T @ A13_inv @ (I - A11)
        if np.linalg.norm(coupling) > tol * scale:
            return SpectrogramReport(False, Z=Z, failure_reason="coupling_residual")

    rows_one = Sigma @ A11           # Z1 condition: (Sigma A11)_j = 0
    rows_two = Sigma @ (I - A11)     # Z2 condition: (Sigma (I - A11))_j = 0
    Z1, Z2 = [], []
    for j in Z:
        in_one = np.linalg.norm(rows_one[j - 1]) <= tol * scale
        in_two = np.linalg.norm(rows_two[j - 1]) <= tol * scale
        if in_one:
            Z1.append(j)
        elif in_two:
            Z2.append(j)
        else:
            return SpectrogramReport(False, Z=Z, failure_reason="zero_row_condition")

    psi_chirp = A21 + (I - A11).T @ A13_inv @ (I - A11)
    phi_chirp = -(A21 + A11.T @ A13_inv @ A11)
    psi = WindowSpec(
        amplitude=1.0 + 0.0j,
        chirp=0.5 * (psi_chirp + psi_chirp.T),
        delta_set=tuple(Z1),
        delta_matrix=rows_two if Z1 else None,
    )
    phi = WindowSpec(
        amplitude=1.0 + 0.0j,
        chirp=0.5 * (phi_chirp + phi_chirp.T),
        delta_set=tuple(Z2),
        delta_matrix=-rows_one if Z2 else None,
    )
    return SpectrogramReport(True, psi=psi, phi=phi, Z=Z, Z1=tuple(Z1), Z2=tuple(Z2))


@dataclass(frozen=True)
class Trichotomy1d:
    cohen_discriminant: float
    is_spectrogram: bool
    is_shift_invertible: bool


def trichotomy_1d(A11: float, A13: float, A21: float, tol: float = DEFAULT_TOL) -> Trichotomy1d:
    """One-dimensional trichotomy: spectrogram iff not shift-invertible.

    The discriminant A11(1 - A11) - A21*A13 equals det E_A; it vanishes
    exactly on the spectrogram class.
    """
    disc = A11 * (1.0 - A11) - A21 * A13
    is_spec = abs(disc) <= tol
    return Trichotomy1d(cohen_discriminant=disc, is_spectrogram=is_spec, is_shift_invertible=not is_spec)


def _conjugate_exponent(p: float) -> float:
    if p == 1:
        return inf
    if p == inf:
        return 1.0
    return p / (p - 1.0)


def _check_exponent(p: float) -> float:
    p = float(p)
    if not (1.0 <= p):
        raise ValueError(f"Lebesgue exponent must lie in [1, inf], got {p}")
    return p


def lp_wigner_bounded(p: float, q: float) -> bool:
    """Boundedness L^p' x L^p -> L^q of a shift-invertible distribution."""
    p = _check_exponent(p)
    q = _check_exponent(q)
    qp = _conjugate_exponent(q)
    return q >= 2 and qp <= p <= q


def lp_op_bounded(p: float, q: float) -> bool:
    """Boundedness of the symbol-to-operator map L^q -> BL(L^p)."""
    p = _check_exponent(p)
    q = _check_exponent(q)
    qp = _conjugate_exponent(q)
    return q <= 2 and q <= p <= qp


def stft_form_to_wigner_form(
    E: npt.NDArray, C: npt.NDArray
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], bool]:
    """Convert the STFT normal form (E, C) to the Wigner normal form.

    Returns (E', C', flip) with E' = E/2 and C' = 4C - 2 E^-T L E^-1;
    the boolean records that the window operator picks up a flip.
    """
    E = np.asarray(E, dtype=float)
    C = np.asarray(C, dtype=float)
    if E.shape[0] % 2 != 0:
        raise ValueError("expected a 2d x 2d matrix")
    if abs(np.linalg.det(E)) <= DEFAULT_TOL:
        raise ValueError("E must be invertible")
    from .symplectic import swap_L

    L = swap_L(E.shape[0] // 2)
    Einv = np.linalg.inv(E)
    Cp = 4.0 * C - 2.0 * Einv.T @ L @ Einv
    return E / 2.0, 0.5 * (Cp + Cp.T), True
