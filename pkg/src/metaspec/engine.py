"""FFT-based discrete time-frequency engine.

Signals live on a periodic lattice x_n = -T/2 + nT/N with dual frequencies
xi_k = k/T. All signals are treated as periodic and bandlimited, so
trigonometric interpolation (realized through FFTs and coefficient phase
ramps) is spectrally exact for the test corpus of well-decayed Gaussians.
Off-grid evaluations are routed through those interpolants; convolutions
run in the Fourier domain as multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .classify import WindowSpec
from .programs import GeneratorStep, MetaplecticProgram
from .symplectic import DEFAULT_TOL, DimensionError


class GridError(ValueError):
    """Grid mismatch or unsupported grid geometry."""


@dataclass(frozen=True)
class Grid1D:
    """Periodic sampling lattice of N points on [-T/2, T/2)."""

    N: int
    T: float

    def __post_init__(self):
        if self.N < 8 or (self.N & (self.N - 1)) != 0:
            raise GridError("N must be a power of two, at least 8")
        if self.T <= 0:
            raise GridError("T must be positive")

    @property
    def dx(self) -> float:
        return self.T / self.N

    @property
    def dxi(self) -> float:
        return 1.0 / self.T

    @property
    def x(self) -> npt.NDArray[np.float64]:
        return -self.T / 2 + np.arange(self.N) * self.dx

    @property
    def xi(self) -> npt.NDArray[np.float64]:
        return np.arange(-self.N // 2, self.N // 2) / self.T

    @property
    def is_self_dual(self) -> bool:
        """Whether the frequency lattice coincides with the sample lattice."""
        return abs(self.T * self.T - self.N) < 1e-12 * self.N


@dataclass(frozen=True)
class DiscreteSignal:
    grid: Grid1D
    values: npt.NDArray[np.complex128]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.N,):
            raise GridError(f"expected {self.grid.N} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("signal contains non-finite samples")
        object.__setattr__(self, "values", v)

    def norm(self) -> float:
        return float(np.sqrt(self.grid.dx * np.sum(np.abs(self.values) ** 2)))


def inner(f: DiscreteSignal, g: DiscreteSignal) -> complex:
    """L2 pairing dx * sum f conj(g)."""
    _same_grid(f, g)
    return complex(f.grid.dx * np.sum(f.values * np.conj(g.values)))


@dataclass(frozen=True)
class TFGrid:
    """Time-frequency matrix: values[n, k] at (x_n, xi_k)."""

    grid: Grid1D
    values: npt.NDArray[np.complex128]
    tag: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.N, self.grid.N):
            raise GridError(f"expected {self.grid.N}x{self.grid.N} values, got {v.shape}")
        object.__setattr__(self, "values", v)

    def norm(self) -> float:
        return float(np.sqrt(self.grid.dx * self.grid.dxi * np.sum(np.abs(self.values) ** 2)))


def tf_inner(P: TFGrid, Q: TFGrid) -> complex:
    if P.grid != Q.grid:
        raise GridError("time-frequency grids differ")
    return complex(P.grid.dx * P.grid.dxi * np.sum(P.values * np.conj(Q.values)))


def _same_grid(*signals: DiscreteSignal) -> Grid1D:
    grid = signals[0].grid
    for s in signals[1:]:
        if s.grid != grid:
            raise GridError("signals live on different grids")
    return grid


# -- centered transforms and trigonometric interpolation ----------------------

def centered_fft(v: npt.NDArray, dx: float, axis: int = -1) -> npt.NDArray[np.complex128]:
    """Riemann-sum Fourier transform for samples starting at x = -T/2."""
    return dx * np.fft.fftshift(np.fft.fft(np.fft.ifftshift(v, axes=axis), axis=axis), axes=axis)


def centered_ifft(V: npt.NDArray, dx: float, axis: int = -1) -> npt.NDArray[np.complex128]:
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(V, axes=axis), axis=axis), axes=axis) / dx


def trig_coeffs(v: npt.NDArray, axis: int = -1) -> npt.NDArray[np.complex128]:
    """Fourier coefficients c_k, k = -N/2 .. N/2, with the Nyquist bin split.

    The returned array has N + 1 entries along ``axis``; the interpolant
    v(x) = sum_k c_k exp(2 pi i k x / T) is then real-symmetric in the
    Nyquist frequency, which keeps off-lattice evaluation well behaved.
    """
    v = np.asarray(v, dtype=complex)
    N = v.shape[axis]
    c = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(v, axes=axis), axis=axis), axes=axis) / N
    half = 0.5 * np.take(c, [0], axis=axis)
    return np.concatenate([half, np.delete(c, 0, axis=axis), half], axis=axis)


def trig_eval(coeffs: npt.NDArray, T: float, points: npt.NDArray) -> npt.NDArray[np.complex128]:
    """Evaluate the interpolant with split-Nyquist coefficients at arbitrary points.

    ``coeffs`` has N + 1 entries (k = -N/2 .. N/2) along its last axis;
    the result broadcasts coeff batch dims against the shape of ``points``.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    K = coeffs.shape[-1]
    N = K - 1
    k = np.arange(-N // 2, N // 2 + 1)
    basis = np.exp(2j * np.pi * np.multiply.outer(np.asarray(points, dtype=float), k) / T)
    return np.tensordot(coeffs, basis, axes=([-1], [-1]))


def oversample(v: npt.NDArray, factor: int, axis: int = -1) -> npt.NDArray[np.complex128]:
    """Trigonometric upsampling by an integer factor via spectrum zero-padding."""
    v = np.asarray(v, dtype=complex)
    N = v.shape[axis]
    M = factor * N
    c = np.fft.fft(np.fft.ifftshift(v, axes=axis), axis=axis)
    c = np.moveaxis(c, axis, -1)
    out = np.zeros(c.shape[:-1] + (M,), dtype=complex)
    out[..., : N // 2] = c[..., : N // 2]
    out[..., M - N // 2 + 1 :] = c[..., N // 2 + 1 :]
    # split the Nyquist bin symmetrically between +N/2 and -N/2
    out[..., N // 2] = 0.5 * c[..., N // 2]
    out[..., M - N // 2] = 0.5 * c[..., N // 2]
    out = np.moveaxis(out, -1, axis)
    return factor * np.fft.fftshift(np.fft.ifft(out, axis=axis), axes=axis)


def fractional_shift(v: npt.NDArray, shifts: npt.NDArray, T: float, axis: int = -1) -> npt.NDArray[np.complex128]:
    """Evaluate v(x + s) with a per-row shift s, exactly on the trig interpolant.

    ``shifts`` broadcasts over all axes except ``axis``.
    """
    v = np.asarray(v, dtype=complex)
    v = np.moveaxis(v, axis, -1)
    N = v.shape[-1]
    c = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(v, axes=-1), axis=-1), axes=-1) / N
    k = np.arange(-N // 2, N // 2)
    s = np.asarray(shifts, dtype=float)[..., None]
    ramp = np.exp(2j * np.pi * k * s / T)
    # split-Nyquist: replace e^{2 pi i (-N/2) s / T} by cos(pi N s / T)
    ramp[..., 0] = np.cos(np.pi * N * s[..., 0] / T)
    shifted = c * ramp
    out = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(shifted, axes=-1), axis=-1), axes=-1) * N
    return np.moveaxis(out, -1, axis)


# -- core representations -----------------------------------------------------

def stft(f: DiscreteSignal, g: DiscreteSignal) -> TFGrid:
    """Short-time Fourier transform V_g f with exact lattice window shifts."""
    grid = _same_grid(f, g)
    N = grid.N
    m = np.arange(N)
    n = np.arange(N)[:, None]
    window = np.conj(g.values[(m[None, :] - n + N // 2) % N])
    h = f.values[None, :] * window
    V = centered_fft(h, grid.dx, axis=1)
    return TFGrid(grid, V, tag="stft")


def wigner(f: DiscreteSignal, g: DiscreteSignal) -> TFGrid:
    """Cross-Wigner distribution, lag quadrature over t in [-T/2, T/2).

    Both signals are upsampled to 2N points so every x + t/2 and x - t/2
    lands on the refined lattice. Keeping the lag variable t (not t/2) on
    a single period matches the change-of-variables route, so the two
    pipelines agree to roundoff.
    """
    grid = _same_grid(f, g)
    N = grid.N
    f2 = oversample(f.values, 2)
    g2 = oversample(g.values, 2)
    n = np.arange(N)[:, None]
    m = np.arange(N)[None, :]
    h = f2[(2 * n + m - N // 2) % (2 * N)] * np.conj(g2[(2 * n - m + N // 2) % (2 * N)])
    W = centered_fft(h, grid.dx, axis=1)
    return TFGrid(grid, W, tag="wigner")


def tau_wigner(f: DiscreteSignal, g: DiscreteSignal, tau: float) -> TFGrid:
    """tau-Wigner distribution by direct lag quadrature with trig interpolation."""
    grid = _same_grid(f, g)
    N, T = grid.N, grid.T
    x = grid.x
    t = grid.x  # lag lattice coincides with the sample lattice
    k = np.arange(-N // 2, N // 2 + 1)
    cf = trig_coeffs(f.values)
    cg = trig_coeffs(g.values)
    phase_x = np.exp(2j * np.pi * np.outer(x, k) / T)
    F = (phase_x * cf[None, :]) @ np.exp(2j * np.pi * tau * np.outer(k, t) / T)
    G = (phase_x * cg[None, :]) @ np.exp(-2j * np.pi * (1.0 - tau) * np.outer(k, t) / T)
    h = F * np.conj(G)
    W = centered_fft(h, grid.dx, axis=1)
    return TFGrid(grid, W, tag="tau_wigner", params={"tau": tau})


def ba_distribution(f: DiscreteSignal, g: DiscreteSignal, A: npt.NDArray) -> TFGrid:
    """Bilinear distribution of an invertible 2x2 change of the pair (d = 1)."""
    grid = _same_grid(f, g)
    A = np.asarray(A, dtype=float)
    if A.shape != (2, 2):
        raise DimensionError("engine supports d = 1, expected a 2x2 matrix")
    if abs(np.linalg.det(A)) <= DEFAULT_TOL:
        raise np.linalg.LinAlgError("bilinear distribution needs an invertible matrix")
    N, T = grid.N, grid.T
    x = grid.x
    y = grid.x
    k = np.arange(-N // 2, N // 2 + 1)
    cf = trig_coeffs(f.values)
    cg = trig_coeffs(g.values)
    F = (np.exp(2j * np.pi * A[0, 0] * np.outer(x, k) / T) * cf[None, :]) @ np.exp(
        2j * np.pi * A[0, 1] * np.outer(k, y) / T
    )
    G = (np.exp(2j * np.pi * A[1, 0] * np.outer(x, k) / T) * cg[None, :]) @ np.exp(
        2j * np.pi * A[1, 1] * np.outer(k, y) / T
    )
    h = F * np.conj(G)
    B = centered_fft(h, grid.dx, axis=1)
    return TFGrid(grid, B, tag="ba_distribution")


# -- metaplectic program execution -------------------------------------------

def tensor(f: DiscreteSignal, g: DiscreteSignal) -> npt.NDArray[np.complex128]:
    """Rank-one array (f (x) conj(g))[i, j] = f(x_i) conj(g(x_j))."""
    _same_grid(f, g)
    return np.outer(f.values, np.conj(g.values))


def _flip_axis(v: npt.NDArray, axis: int) -> npt.NDArray[np.complex128]:
    # sample at -x_n: index N - n modulo N
    return np.roll(np.flip(v, axis=axis), 1, axis=axis)


def _scale_axis(v: npt.NDArray, alpha: float, T: float, axis: int) -> npt.NDArray[np.complex128]:
    """Evaluate v(alpha * x) along one axis on the trig interpolant."""
    if abs(alpha - 1.0) <= 1e-14:
        return np.asarray(v, dtype=complex)
    if abs(alpha + 1.0) <= 1e-14:
        return _flip_axis(np.asarray(v, dtype=complex), axis)
    v = np.moveaxis(np.asarray(v, dtype=complex), axis, -1)
    N = v.shape[-1]
    c = trig_coeffs(v)
    x = -T / 2 + np.arange(N) * (T / N)
    k = np.arange(-N // 2, N // 2 + 1)
    basis = np.exp(2j * np.pi * alpha * np.outer(k, x) / T)
    out = c @ basis
    return np.moveaxis(out, -1, axis)


def _chirp_quadratic(C: npt.NDArray, x: npt.NDArray) -> npt.NDArray[np.float64]:
    X, Y = np.meshgrid(x, x, indexing="ij")
    return C[0, 0] * X * X + 2.0 * C[0, 1] * X * Y + C[1, 1] * Y * Y


def _apply_linear(F: npt.NDArray, E: npt.NDArray, grid: Grid1D) -> npt.NDArray[np.complex128]:
    """|det E|^{1/2} F(E z) via an LDU split into exact shear/scale passes."""
    T = grid.T
    x = grid.x
    out = np.asarray(F, dtype=complex)
    if abs(E[0, 0]) <= 1e-9 * max(1.0, float(np.abs(E).max())):
        # pre-swap coordinates so the pivot is nonzero
        out = _apply_linear(out, E[:, ::-1].copy(), grid)
        return out.T
    a = E[0, 0]
    gamma = E[1, 0] / a
    beta = E[0, 1] / a
    dscale = np.linalg.det(E) / a
    # lower shear: F(x, gamma*x + y), per-row shift along axis 1
    if abs(gamma) > 1e-14:
        out = fractional_shift(out, gamma * x, T, axis=1)
    # diagonal: F(a*x, dscale*y) with amplitude |a*dscale|^{1/2}
    out = _scale_axis(out, a, T, axis=0)
    out = _scale_axis(out, dscale, T, axis=1)
    out = out * np.sqrt(abs(a * dscale))
    # upper shear: F(x + beta*y, y), per-column shift along axis 0
    if abs(beta) > 1e-14:
        out = np.swapaxes(fractional_shift(np.swapaxes(out, 0, 1), beta * x, T, axis=1), 0, 1)
    return out


def execute_program(program: MetaplecticProgram, F: npt.NDArray, grid: Grid1D) -> npt.NDArray[np.complex128]:
    """Apply a two-variable metaplectic program to samples F[i, j] at (x_i, x_j).

    Requires a self-dual grid (T^2 = N) so every Fourier step maps the
    lattice onto itself.
    """
    if program.n != 2:
        raise DimensionError("engine executes programs in two variables (d = 1)")
    if not grid.is_self_dual:
        raise GridError("program execution needs a self-dual grid (T^2 = N)")
    out = np.asarray(F, dtype=complex)
    if out.shape != (grid.N, grid.N):
        raise GridError("array shape does not match the grid")
    x = grid.x
    for step in program.steps:
        if step.kind == "fourier":
            out = centered_fft(centered_fft(out, grid.dx, axis=0), grid.dx, axis=1)
        elif step.kind == "fourier2":
            out = centered_fft(out, grid.dx, axis=1)
        elif step.kind == "linear":
            out = _apply_linear(out, step.matrix, grid)
        elif step.kind == "chirp_mul":
            out = out * np.exp(1j * np.pi * _chirp_quadratic(step.matrix, x))
        elif step.kind == "chirp_conv":
            spec = centered_fft(centered_fft(out, grid.dx, axis=0), grid.dx, axis=1)
            spec = spec * np.exp(-1j * np.pi * _chirp_quadratic(step.matrix, x))
            out = centered_ifft(centered_ifft(spec, grid.dx, axis=1), grid.dx, axis=0)
        elif step.kind == "flip":
            out = _flip_axis(_flip_axis(out, 0), 1)
        elif step.kind == "phase":
            out = out * step.phase
    return out * program.amplitude


def program_tfgrid(program: MetaplecticProgram, f: DiscreteSignal, g: DiscreteSignal, tag: str = "program") -> TFGrid:
    """Metaplectic distribution W_A(f, g) = (program applied to f (x) conj(g))."""
    grid = _same_grid(f, g)
    return TFGrid(grid, execute_program(program, tensor(f, g), grid), tag=tag)


# -- Cohen convolution and spectrograms ---------------------------------------

def cohen_convolve(W: TFGrid, M_A: npt.NDArray) -> TFGrid:
    """Convolve with the Cohen kernel as a Fourier-domain multiplier."""
    from .kernels import cohen_multiplier

    grid = W.grid
    if not grid.is_self_dual:
        raise GridError("Cohen convolution needs a self-dual grid (T^2 = N)")
    mult = cohen_multiplier(np.asarray(M_A, dtype=float))
    spec = centered_fft(centered_fft(W.values, grid.dx, axis=0), grid.dxi, axis=1)
    X, Y = np.meshgrid(grid.x, grid.x, indexing="ij")
    zeta = np.stack([X, Y], axis=-1)
    spec = spec * mult(zeta)
    out = centered_ifft(centered_ifft(spec, grid.dxi, axis=1), grid.dx, axis=0)
    return TFGrid(grid, out, tag="cohen", params=dict(W.params))


def generalized_spectrogram(
    f: DiscreteSignal, g: DiscreteSignal, phi: DiscreteSignal, psi: DiscreteSignal
) -> TFGrid:
    """Two-window spectrogram V_phi f * conj(V_psi g)."""
    grid = _same_grid(f, g, phi, psi)
    V1 = stft(f, phi)
    V2 = stft(g, psi)
    return TFGrid(grid, V1.values * np.conj(V2.values), tag="generalized_spectrogram")


def metaplectic_spectrogram(
    f: DiscreteSignal,
    g: DiscreteSignal,
    phi: DiscreteSignal,
    psi: DiscreteSignal,
    pA: MetaplecticProgram,
    pB: MetaplecticProgram,
) -> TFGrid:
    """W_A(f, phi) * conj(W_B(g, psi)) with both factors run as programs."""
    grid = _same_grid(f, g, phi, psi)
    WA = execute_program(pA, tensor(f, phi), grid)
    WB = execute_program(pB, tensor(g, psi), grid)
    return TFGrid(grid, WA * np.conj(WB), tag="metaplectic_spectrogram")


def chirp_stft(f: DiscreteSignal, q: float) -> TFGrid:
    """STFT against the non-periodic chirp window exp(i pi q t^2).

    A chirp window never decays, so shifting its periodized samples (as the
    plain STFT does) evaluates the wrong function in the wrap-around
    region. Instead use the exact factorization
    V(x, xi) = exp(-i pi q x^2) * hhat(xi - q x) with h = f exp(-i pi q t^2),
    where hhat is evaluated off-lattice through its trigonometric
    interpolant in xi.
    """
    grid = f.grid
    if not grid.is_self_dual:
        raise GridError("chirp-window STFT needs a self-dual grid (T^2 = N)")
    x = grid.x
    h = f.values * np.exp(-1j * np.pi * q * x * x)
    H = centered_fft(h, grid.dx)
    rows = np.broadcast_to(H[None, :], (grid.N, grid.N))
    xi_period = grid.N * grid.dxi
    V = fractional_shift(rows, -q * x, xi_period, axis=1)
    V = V * np.exp(-1j * np.pi * q * x * x)[:, None]
    return TFGrid(grid, V, tag="chirp_stft", params={"q": q})


def window_stft(f: DiscreteSignal, w: WindowSpec, epsilon: float = 0.1) -> TFGrid:
    """STFT of f against a symbolic window specification (d = 1).

    Windows with delta factors are localized once mollified, so the plain
    periodized STFT is accurate; pure chirp windows go through the exact
    chirp factorization.
    """
    if w.chirp.shape[0] != 1:
        raise DimensionError("engine realizes one-dimensional windows")
    if w.delta_set:
        return stft(f, realize_window(w, f.grid, epsilon))
    V = chirp_stft(f, float(w.chirp[0, 0]))
    vals = V.values * np.conj(w.amplitude)
    return TFGrid(f.grid, vals, tag="window_stft")


def realize_window(w: WindowSpec, grid: Grid1D, epsilon: float = 0.0) -> DiscreteSignal:
    """Sample a symbolic window; delta factors become width-epsilon mollifiers."""
    x = grid.x
    d = w.chirp.shape[0]
    if d != 1:
        raise DimensionError("engine realizes one-dimensional windows")
    vals = w.amplitude * np.exp(1j * np.pi * w.chirp[0, 0] * x * x)
    if w.delta_set:
        if epsilon <= 0:
            raise ValueError("delta factors need a positive mollifier width")
        for j in w.delta_set:
            r = w.delta_matrix[j - 1, 0]
            vals = vals * np.exp(-np.pi * ((r * x) / epsilon) ** 2) / epsilon
    return DiscreteSignal(grid, vals)


# -- standard test signals ----------------------------------------------------

def gaussian(grid: Grid1D, lam: float = 1.0, center: float = 0.0, freq: float = 0.0) -> DiscreteSignal:
    """Sampled Gaussian e^{-pi lam (x - center)^2} e^{2 pi i freq x}."""
    x = grid.x
    vals = np.exp(-np.pi * lam * (x - center) ** 2) * np.exp(2j * np.pi * freq * x)
    return DiscreteSignal(grid, vals.astype(complex))


def fourier_transform(f: DiscreteSignal) -> DiscreteSignal:
    """Fourier transform on a self-dual grid, returned on the same lattice."""
    if not f.grid.is_self_dual:
        raise GridError("signal-level Fourier transform needs a self-dual grid")
    return DiscreteSignal(f.grid, centered_fft(f.values, f.grid.dx))


def involution(f: DiscreteSignal) -> DiscreteSignal:
    """The flip (If)(x) = f(-x) on the periodic lattice."""
    return DiscreteSignal(f.grid, _flip_axis(f.values, 0))
