"""Pseudodifferential quantization of time-frequency symbols.

Weyl and tau quantization are computed as explicit kernel quadratures;
the general metaplectic quantization is realized through the adjoint of
the linear map g -> W_A(g, f), which makes the defining duality pairing
an identity up to roundoff at grid level.
"""

from __future__ import annotations

from math import inf

import numpy as np
import numpy.typing as npt

from .classify import NotCohenError, shift_invertibility_test
from .engine import (
    DiscreteSignal,
    Grid1D,
    GridError,
    TFGrid,
    execute_program,
    gaussian,
    oversample,
    tensor,
    trig_coeffs,
)
from .programs import MetaplecticProgram, compose_projection
from .symplectic import BlockMatrix4d

SymbolGrid = TFGrid


def _check_grids(a: TFGrid, f: DiscreteSignal) -> Grid1D:
    if a.grid != f.grid:
        raise GridError("symbol and signal live on different grids")
    return f.grid


def _lag_coefficients(a_values: npt.NDArray, axis: int = 1) -> npt.NDArray[np.complex128]:
    """b[i, r] = sum_k a[i, k] exp(2 pi i r k / N) over the centered k lattice."""
    N = a_values.shape[axis]
    return N * np.fft.ifft(np.fft.ifftshift(a_values, axes=axis), axis=axis)


def op_weyl(a: SymbolGrid, f: DiscreteSignal) -> DiscreteSignal:
    """Weyl operator: midpoint-sampled kernel quadrature.

    The midpoints (x_n + x_m)/2 all lie on the half-step lattice, so the
    symbol is upsampled once by a factor of two and the kernel values are
    exact gathers from that refined array.
    """
    grid = _check_grids(a, f)
    N = grid.N
    a2 = oversample(a.values, 2, axis=0)  # index p -> x = -T/2 + p dx/2
    b = _lag_coefficients(a2, axis=1)
    n = np.arange(N)[:, None]
    m = np.arange(N)[None, :]
    K = grid.dxi * b[(n + m) % (2 * N), (n - m) % N]
    return DiscreteSignal(grid, grid.dx * (K @ f.values))


def op_tau(a: SymbolGrid, f: DiscreteSignal, tau: float) -> DiscreteSignal:
    """tau-quantization: kernel K(x, y) uses the symbol at (1-tau)x + tau y.

    The off-lattice first argument is evaluated through the trigonometric
    interpolant of the lag transform, one coefficient frequency at a time.
    """
    grid = _check_grids(a, f)
    N, T = grid.N, grid.T
    x = grid.x
    b = _lag_coefficients(a.values, axis=1)
    cb = trig_coeffs(b, axis=0)  # (N + 1, N): frequency q by lag r
    n = np.arange(N)[:, None]
    m = np.arange(N)[None, :]
    diff = (n - m) % N
    K = np.zeros((N, N), dtype=complex)
    qs = np.arange(-N // 2, N // 2 + 1)
    for qi, q in enumerate(qs):
        u = np.exp(2j * np.pi * q * (1.0 - tau) * x / T)
        v = np.exp(2j * np.pi * q * tau * x / T)
        K += (u[:, None] * v[None, :]) * cb[qi][diff]
    K *= grid.dxi
    return DiscreteSignal(grid, grid.dx * (K @ f.values))


def op_metaplectic(a: SymbolGrid, f: DiscreteSignal, program: MetaplecticProgram) -> DiscreteSignal:
    """Quantization by duality: the adjoint of g -> W_A(g, f) applied to a.

    Column m of that map is the program applied to e_m (x) conj(f); the
    output sample m is the conjugate pairing of that column with the
    symbol, which reproduces <Op(a)f, g> = <a, W_A(g, f)> exactly at grid
    level (up to floating-point roundoff).
    """
    grid = _check_grids(a, f)
    N = grid.N
    out = np.zeros(N, dtype=complex)
    fbar = np.conj(f.values)
    basis_col = np.zeros((N, N), dtype=complex)
    for m in range(N):
        basis_col[:] = 0.0
        basis_col[m, :] = fbar
        Gm = execute_program(program, basis_col, grid)
        out[m] = np.sum(a.values * np.conj(Gm))
    return DiscreteSignal(grid, grid.dxi * out)


# -- Lp probes ----------------------------------------------------------------

def _conjugate_exponent(p: float) -> float:
    if p == 1:
        return inf
    if p == inf:
        return 1.0
    return p / (p - 1.0)


def signal_lp_norm(f: DiscreteSignal, p: float) -> float:
    if p == inf:
        return float(np.max(np.abs(f.values)))
    return float((f.grid.dx * np.sum(np.abs(f.values) ** p)) ** (1.0 / p))


def tf_lp_norm(W: TFGrid, q: float) -> float:
    if q == inf:
        return float(np.max(np.abs(W.values)))
    return float((W.grid.dx * W.grid.dxi * np.sum(np.abs(W.values) ** q)) ** (1.0 / q))


def lp_norm_probe(
    program: MetaplecticProgram,
    p: float,
    q: float,
    lambdas: list[float],
    grid: Grid1D | None = None,
) -> list[tuple[float, float]]:
    """Ratio sweep R(lambda) = ||W_A(phi_lambda, phi)||_q / (||phi_lambda||_p' ||phi||_p).

    phi_lambda is the normalized-width Gaussian exp(-pi lambda x^2). The
    program must be shift-invertible; otherwise the ratio has no
    boundedness interpretation and a domain error is raised.
    """
    if grid is None:
        grid = Grid1D(256, 16.0)
    S = compose_projection(program)
    try:
        invertible, _ = shift_invertibility_test(BlockMatrix4d(S.entries))
    except NotCohenError as exc:
        raise ValueError("probe requires a Cohen-class program") from exc
    if not invertible:
        raise ValueError("probe requires a shift-invertible program")
    pp = _conjugate_exponent(p)
    phi = gaussian(grid, 1.0)
    out: list[tuple[float, float]] = []
    for lam in lambdas:
        if lam <= 0:
            raise ValueError("lambda must be positive")
        phi_lam = gaussian(grid, lam)
        W = TFGrid(grid, execute_program(program, tensor(phi_lam, phi), grid))
        ratio = tf_lp_norm(W, q) / (signal_lp_norm(phi_lam, pp) * signal_lp_norm(phi, p))
        out.append((float(lam), float(ratio)))
    return out
