import numpy as np
import pytest

from metaspec.engine import (
    DiscreteSignal,
    Grid1D,
    GridError,
    centered_fft,
    centered_ifft,
    chirp_stft,
    cohen_convolve,
    execute_program,
    fourier_transform,
    fractional_shift,
    gaussian,
    generalized_spectrogram,
    inner,
    involution,
    oversample,
    program_tfgrid,
    realize_window,
    stft,
    tau_wigner,
    tensor,
    tf_inner,
    trig_coeffs,
    trig_eval,
    wigner,
    window_stft,
)
from metaspec.classify import WindowSpec, spectrogram_test
from metaspec.programs import cohen_matrix, wigner_program
from metaspec.verify import random_mixture, rel_l2


def test_grid_validation():
    with pytest.raises(GridError):
        Grid1D(100, 16.0)  # not a power of two
    with pytest.raises(GridError):
        Grid1D(4, 16.0)
    with pytest.raises(GridError):
        Grid1D(256, -1.0)
    assert Grid1D(256, 16.0).is_self_dual
    assert not Grid1D(256, 10.0).is_self_dual


def test_grid_axes(grid):
    assert grid.x[0] == pytest.approx(-8.0)
    assert grid.x[-1] == pytest.approx(8.0 - grid.dx)
    assert grid.xi[grid.N // 2] == pytest.approx(0.0)
    assert grid.dx * grid.N == pytest.approx(grid.T)


def test_centered_fft_gaussian_fixed_point(grid):
    # e^{-pi x^2} is its own Fourier transform
    v = np.exp(-np.pi * grid.x**2)
    V = centered_fft(v, grid.dx)
    assert np.allclose(V, np.exp(-np.pi * grid.xi**2), atol=1e-13)


def test_centered_ifft_inverts(grid, rng):
    v = rng.normal(size=grid.N) + 1j * rng.normal(size=grid.N)
    assert np.allclose(centered_ifft(centered_fft(v, grid.dx), grid.dx), v)


def test_trig_interpolation_reproduces_samples(grid, rng):
    v = rng.normal(size=grid.N) + 1j * rng.normal(size=grid.N)
    c = trig_coeffs(v)
    assert c.shape == (grid.N + 1,)
    assert np.allclose(trig_eval(c, grid.T, grid.x), v, atol=1e-10)


def test_oversample_matches_interpolant(grid):
    f = gaussian(grid, 1.3, center=0.5)
    v2 = oversample(f.values, 2)
    fine = -grid.T / 2 + np.arange(2 * grid.N) * grid.dx / 2
    want = trig_eval(trig_coeffs(f.values), grid.T, fine)
    assert np.allclose(v2, want, atol=1e-10)


def test_fractional_shift_lattice_shift_is_roll(grid, rng):
    v = rng.normal(size=grid.N) + 1j * rng.normal(size=grid.N)
    shifted = fractional_shift(v[None, :], np.array([3 * grid.dx]), grid.T, axis=1)
    assert np.allclose(shifted[0], np.roll(v, -3), atol=1e-10)


def test_fractional_shift_of_gaussian(grid):
    s = 0.37
    v = np.exp(-np.pi * grid.x**2)
    shifted = fractional_shift(v[None, :], np.array([s]), grid.T, axis=1)
    assert np.allclose(shifted[0], np.exp(-np.pi * (grid.x + s) ** 2), atol=1e-9)


def test_stft_gaussian_oracle(grid):
    phi = gaussian(grid)
    V = stft(phi, phi)
    X, XI = np.meshgrid(grid.x, grid.xi, indexing="ij")
    want = 2.0**-0.5 * np.exp(-np.pi * (X**2 + XI**2) / 2.0) * np.exp(-1j * np.pi * X * XI)
    assert np.max(np.abs(V.values - want)) < 1e-10


def test_wigner_gaussian_oracle(grid):
    phi = gaussian(grid)
    W = wigner(phi, phi)
    X, XI = np.meshgrid(grid.x, grid.xi, indexing="ij")
    want = np.sqrt(2.0) * np.exp(-2.0 * np.pi * (X**2 + XI**2))
    assert np.max(np.abs(W.values - want)) < 1e-10


def test_wigner_is_tau_half(grid, rng):
    f = random_mixture(rng, grid)
    g = random_mixture(rng, grid)
    assert rel_l2(wigner(f, g).values, tau_wigner(f, g, 0.5).values) < 1e-12


def test_wigner_time_marginal(grid, rng):
    f = random_mixture(rng, grid)
    W = wigner(f, f)
    marginal = grid.dxi * np.sum(W.values, axis=1)
    assert np.allclose(marginal, np.abs(f.values) ** 2, atol=1e-10)


def test_rihaczek_closed_form(grid):
    f = gaussian(grid, 1.0)
    g = gaussian(grid, 2.0)
    R = tau_wigner(f, g, 0.0)
    X, XI = np.meshgrid(grid.x, grid.xi, indexing="ij")
    ghat = 2.0**-0.5 * np.exp(-np.pi * XI**2 / 2.0)
    want = np.exp(-np.pi * X**2) * np.conj(ghat) * np.exp(-2j * np.pi * X * XI)
    assert np.max(np.abs(R.values - want)) < 1e-10


def test_moyal_identity(grid, rng):
    f1, f2, g1, g2 = (random_mixture(rng, grid) for _ in range(4))
    lhs = tf_inner(wigner(f1, f2), wigner(g1, g2))
    rhs = inner(f1, g1) * np.conj(inner(f2, g2))
    scale = f1.norm() * f2.norm() * g1.norm() * g2.norm()
    assert abs(lhs - rhs) / scale < 1e-12


def test_program_route_matches_direct_wigner(grid, rng):
    f = random_mixture(rng, grid)
    g = random_mixture(rng, grid)
    W = program_tfgrid(wigner_program(1), f, g)
    assert rel_l2(W.values, wigner(f, g).values) < 1e-10


def test_execute_program_needs_self_dual_grid(rng):
    g = Grid1D(64, 5.0)
    f = DiscreteSignal(g, np.exp(-np.pi * g.x**2).astype(complex))
    with pytest.raises(GridError):
        execute_program(wigner_program(1), tensor(f, f), g)


def test_fourier_transform_squares_to_involution(grid, rng):
    f = random_mixture(rng, grid)
    ff = fourier_transform(fourier_transform(f))
    assert rel_l2(ff.values, involution(f).values) < 1e-12


def test_cohen_convolve_zero_kernel_is_identity(grid, rng):
    W = wigner(random_mixture(rng, grid), random_mixture(rng, grid))
    out = cohen_convolve(W, np.zeros((2, 2)))
    assert rel_l2(out.values, W.values) < 1e-12


def test_chirp_stft_zero_rate_matches_flat_window(grid, rng):
    f = random_mixture(rng, grid)
    flat = DiscreteSignal(grid, np.ones(grid.N, dtype=complex))
    V = chirp_stft(f, 0.0)
    assert rel_l2(V.values, stft(f, flat).values) < 1e-10


def test_window_stft_dispatch(grid, rng):
    f = random_mixture(rng, grid)
    w = WindowSpec(amplitude=1.0, chirp=np.array([[0.4]]))
    V = window_stft(f, w)
    assert rel_l2(V.values, chirp_stft(f, 0.4).values) < 1e-12
    wd = WindowSpec(
        amplitude=1.0, chirp=np.zeros((1, 1)), delta_set=(1,), delta_matrix=np.array([[1.0]])
    )
    Vd = window_stft(f, wd, epsilon=0.1)
    assert rel_l2(Vd.values, stft(f, realize_window(wd, grid, 0.1)).values) < 1e-12


def test_realize_window_needs_width_for_deltas(grid):
    wd = WindowSpec(
        amplitude=1.0, chirp=np.zeros((1, 1)), delta_set=(1,), delta_matrix=np.array([[1.0]])
    )
    with pytest.raises(ValueError):
        realize_window(wd, grid)


def test_spectrogram_identity_end_to_end(grid, rng):
    # the windows emitted by the classifier reproduce the Cohen convolution
    # up to one global scalar
    from metaspec.classify import cohen_class_test
    from metaspec.engine import window_stft as wstft

    A = cohen_matrix(0.4, 1.0, 0.24)
    rep = spectrogram_test(A)
    M_A = cohen_class_test(A).M_A
    f = random_mixture(rng, grid, lam_range=(0.75, 1.5), mu_max=1.5, nu_max=1.0)
    g = random_mixture(rng, grid, lam_range=(0.75, 1.5), mu_max=1.5, nu_max=1.0)
    WA = cohen_convolve(wigner(f, g), M_A)
    V1 = wstft(f, rep.phi)
    V2 = wstft(g, rep.psi)
    Sp = V1.values * np.conj(V2.values)
    c = np.vdot(Sp, WA.values) / np.vdot(Sp, Sp)
    assert rel_l2(c * Sp, WA.values) < 1e-6


def test_generalized_spectrogram_definition(grid, rng):
    f = random_mixture(rng, grid)
    g = random_mixture(rng, grid)
    phi = gaussian(grid, 1.0)
    psi = gaussian(grid, 2.0)
    Sp = generalized_spectrogram(f, g, phi, psi)
    want = stft(f, phi).values * np.conj(stft(g, psi).values)
    assert np.allclose(Sp.values, want)


def test_mismatched_grids_raise(rng):
    f = DiscreteSignal(Grid1D(256, 16.0), np.ones(256, dtype=complex))
    g = DiscreteSignal(Grid1D(128, 16.0), np.ones(128, dtype=complex))
    with pytest.raises(GridError):
        stft(f, g)
    with pytest.raises(GridError):
        inner(f, g)
