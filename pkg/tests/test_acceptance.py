"""Acceptance gate: ten end-to-end criteria, one verdict line each.

Each test prints a single PASS/FAIL line with the measured quantity before
asserting, so a red run still reports every measurement.
"""

import time

import numpy as np
import pytest
from click.testing import CliRunner

from metaspec import kernels
from metaspec.classify import (
    lp_wigner_bounded,
    shift_invertibility_test,
    spectrogram_test,
    trichotomy_1d,
)
from metaspec.cli import main as cli_main
from metaspec.engine import (
    Grid1D,
    centered_fft,
    execute_program,
    gaussian,
    generalized_spectrogram,
    inner,
    involution,
    stft,
    tau_wigner,
    tensor,
    tf_inner,
    wigner,
)
from metaspec.programs import (
    A_tau,
    GeneratorStep,
    MetaplecticProgram,
    ba_cohen_matrix,
    cohen_matrix,
    stft_program,
    tau_program,
    wigner_program,
)
from metaspec.quantize import SymbolGrid, lp_norm_probe, op_metaplectic, op_tau, op_weyl
from metaspec.verify import (
    _chirp_ft_quadrature,
    _fft2c,
    _perturbed_residual,
    _random_cohen_triple,
    _reconstruction_residual,
    _tau_MA,
    _zeta,
    chirp_ft_oracle,
    chirp_ft_oracle_1d,
    random_mixture,
    rel_l2,
)

GRID = Grid1D(256, 16.0)


def verdict(num: int, name: str, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} criterion {num} ({name}): {detail}")
    return ok


def test_criterion_1_moyal_orthogonality():
    rng = np.random.default_rng(42)
    pipelines = {
        "stft": stft,
        "wigner": wigner,
        **{f"tau_{t:g}": (lambda f, g, t=t: tau_wigner(f, g, t)) for t in (0.0, 0.3, 0.5, 1.0)},
    }
    start = time.monotonic()
    worst = 0.0
    for _ in range(50):
        f1, f2, g1, g2 = (random_mixture(rng, GRID) for _ in range(4))
        rhs = inner(f1, g1) * np.conj(inner(f2, g2))
        scale = f1.norm() * f2.norm() * g1.norm() * g2.norm()
        for pipe in pipelines.values():
            lhs = tf_inner(pipe(f1, f2), pipe(g1, g2))
            worst = max(worst, abs(lhs - rhs) / scale)
    elapsed = time.monotonic() - start
    ok = worst <= 1e-6 and elapsed <= 30.0
    assert verdict(1, "orthogonality relations", ok, f"max_err={worst:.3e} tol=1e-06 elapsed={elapsed:.1f}s")


def test_criterion_2_gaussian_closed_forms():
    phi = gaussian(GRID)
    X, XI = np.meshgrid(GRID.x, GRID.xi, indexing="ij")

    V = stft(phi, phi).values
    stft_want = 2.0**-0.5 * np.exp(-np.pi * (X**2 + XI**2) / 2.0) * np.exp(-1j * np.pi * X * XI)
    e_stft = float(np.max(np.abs(V - stft_want)))

    W = wigner(phi, phi).values
    wig_want = np.sqrt(2.0) * np.exp(-2.0 * np.pi * (X**2 + XI**2))
    e_wig = float(np.max(np.abs(W - wig_want)))

    f = gaussian(GRID, 1.0)
    g = gaussian(GRID, 2.0)
    ghat = 2.0**-0.5 * np.exp(-np.pi * XI**2 / 2.0)
    fhat = np.exp(-np.pi * XI**2)
    rih_want = np.exp(-np.pi * X**2) * np.conj(ghat) * np.exp(-2j * np.pi * X * XI)
    e_rih = float(np.max(np.abs(tau_wigner(f, g, 0.0).values - rih_want)))
    crih_want = fhat * np.conj(np.exp(-np.pi * 2.0 * X**2)) * np.exp(2j * np.pi * X * XI)
    e_crih = float(np.max(np.abs(tau_wigner(f, g, 1.0).values - crih_want)))

    ok = e_stft <= 1e-6 and e_wig <= 1e-6 and e_rih <= 1e-5 and e_crih <= 1e-5
    assert verdict(
        2,
        "Gaussian closed forms",
        ok,
        f"stft={e_stft:.3e} wigner={e_wig:.3e} rihaczek={e_rih:.3e} conj_rihaczek={e_crih:.3e}",
    )


def test_criterion_3_cohen_multiplier_identity():
    rng = np.random.default_rng(42)
    f = random_mixture(rng, GRID)
    g = random_mixture(rng, GRID)
    FW = _fft2c(wigner(f, g))
    zeta = _zeta(GRID)
    mask = np.abs(FW) > 1e-8 * float(np.max(np.abs(FW)))

    worst = 0.0
    for tau in (0.0, 0.3, 1.0):
        lhs = _fft2c(tau_wigner(f, g, tau))
        rhs = kernels.cohen_multiplier(_tau_MA(tau))(zeta) * FW
        worst = max(worst, float(np.max(np.abs(lhs - rhs)[mask] / np.abs(FW)[mask])))
    from metaspec.engine import ba_distribution

    for M in (0.0, 0.5, 2.0):
        B = ba_distribution(f, g, ba_cohen_matrix(np.array([[M]])))
        rhs = kernels.cohen_multiplier(kernels.block_antidiagonal([[M]]))(zeta) * FW
        worst = max(worst, float(np.max(np.abs(_fft2c(B) - rhs)[mask] / np.abs(FW)[mask])))

    ok = worst <= 1e-5
    assert verdict(3, "Fourier multiplier identity", ok, f"max_masked_err={worst:.3e} tol=1e-05")


def test_criterion_4_spectrogram_factorization():
    rng = np.random.default_rng(42)
    f = random_mixture(rng, GRID)
    g = random_mixture(rng, GRID)
    phi = gaussian(GRID, 1.0)
    psi = gaussian(GRID, 2.0)
    Sp = generalized_spectrogram(f, g, phi, psi)
    lhs = _fft2c(Sp)
    rhs = _fft2c(wigner(f, g)) * _fft2c(wigner(involution(psi), involution(phi)))
    err = rel_l2(lhs, rhs)
    ok = err <= 1e-5
    assert verdict(4, "spectrogram frequency factorization", ok, f"rel_err={err:.3e} tol=1e-05")


def test_criterion_5_window_reconstruction():
    rng = np.random.default_rng(42)
    residuals = []
    ratios = []
    for _ in range(20):
        a = rng.uniform(0.35, 0.65)
        b = rng.uniform(1.0, 1.25)
        c = a * (1.0 - a) / b
        f = random_mixture(rng, GRID, lam_range=(0.75, 1.5), mu_max=1.5, nu_max=1.0)
        g = random_mixture(rng, GRID, lam_range=(0.75, 1.5), mu_max=1.5, nu_max=1.0)
        res = _reconstruction_residual(f, g, a, b, c, GRID)
        pert = _perturbed_residual(f, g, a, b, c, GRID)
        residuals.append(res)
        ratios.append(pert / max(res, 1e-300))
    worst = max(residuals)
    min_ratio = min(ratios)
    ok = worst <= 1e-4 and min_ratio >= 10.0
    assert verdict(
        5,
        "window synthesis reconstruction",
        ok,
        f"max_residual={worst:.3e} tol=1e-04 min_perturbation_ratio={min_ratio:.1f} floor=10",
    )


def test_criterion_6_trichotomy():
    rng = np.random.default_rng(42)
    disagreements = 0
    for i in range(10_000):
        a, b, c = _random_cohen_triple(rng, make_spectrogram=(i % 2 == 0))
        t = trichotomy_1d(a, b, c)
        A = cohen_matrix(a, b, c)
        spec = spectrogram_test(A).is_spectrogram
        invertible, _ = shift_invertibility_test(A)
        if not (t.is_spectrogram == spec == (not invertible)):
            disagreements += 1
    table_mismatches = 0
    for tau in (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0):
        if spectrogram_test(A_tau(tau, 1)).is_spectrogram != (tau in (0.0, 1.0)):
            table_mismatches += 1
    ok = disagreements == 0 and table_mismatches == 0
    assert verdict(
        6,
        "spectrogram trichotomy",
        ok,
        f"disagreements={disagreements}/10000 tau_table_mismatches={table_mismatches}/8",
    )


def test_criterion_7_chirp_fourier_kernels():
    xi = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    worst = 0.0
    for c in (1.0, -1.0, 2.0):
        got = kernels.fourier_of_chirp(np.array([[c]])).values(xi[:, None])
        want = chirp_ft_oracle_1d(c, xi)
        worst = max(worst, float(np.max(np.abs(got - want) / np.abs(want))))
    C2 = np.array([[2.0, 1.0], [1.0, 1.0]])
    pts = np.array([[u, v] for u in (-1.0, 0.0, 1.0) for v in (-0.5, 0.25, 1.0)])
    got = kernels.fourier_of_chirp(C2).values(pts)
    worst = max(worst, float(np.max(np.abs(got - chirp_ft_oracle(C2, pts)) / np.abs(got))))

    # singular branch: mollified pairing converges monotonically to the
    # symbolic delta answer
    C = np.diag([2.0, 0.0])
    cd = kernels.fourier_of_chirp(C)
    q = np.linspace(-6.0, 6.0, 2048)
    dq = q[1] - q[0]
    sym = cd.amplitude * np.sum(np.exp(1j * np.pi * cd.chirp[0, 0] * q * q) * np.exp(-np.pi * q * q)) * dq
    errs = []
    for eps in (1e-1, 1e-2, 1e-3):
        ax1 = np.sum(_chirp_ft_quadrature(2.0, q, eps, N=1 << 14, T=64.0) * np.exp(-np.pi * q * q)) * dq
        errs.append(abs(ax1 * (1.0 + eps) ** -0.5 - sym))
    monotone = errs[0] > errs[1] > errs[2]

    th = kernels.theta_M(np.array([[2.0]]))
    tp = np.array([[u, v] for u in (-1.0, 0.5, 2.0) for v in (-1.5, 0.25, 1.0)])
    th_err = float(np.max(np.abs(th.values(tp) - 0.5 * np.exp(1j * np.pi * tp[:, 0] * tp[:, 1]))))

    ok = worst <= 1e-5 and monotone and th_err <= 1e-12
    assert verdict(
        7,
        "chirp Fourier kernels",
        ok,
        f"quadrature_err={worst:.3e} tol=1e-05 singular_monotone={monotone} theta_err={th_err:.1e}",
    )


def test_criterion_8_quantization():
    rng = np.random.default_rng(42)
    X, XI = np.meshgrid(GRID.x, GRID.xi, indexing="ij")
    vals = np.zeros(X.shape, dtype=complex)
    for _ in range(3):
        l1, l2 = rng.uniform(0.5, 1.5, size=2)
        m1, m2 = rng.uniform(-1.5, 1.5, size=2)
        vals += (rng.normal() + 1j * rng.normal()) * np.exp(
            -np.pi * l1 * (X - m1) ** 2 - np.pi * l2 * (XI - m2) ** 2
        )
    a = SymbolGrid(GRID, vals)
    f = random_mixture(rng, GRID)
    g = random_mixture(rng, GRID)

    wp = wigner_program(1)
    lhs = inner(op_metaplectic(a, f, wp), g)
    rhs = GRID.dx * GRID.dxi * np.sum(a.values * np.conj(execute_program(wp, tensor(g, f), GRID)))
    dual_err = abs(lhs - rhs) / (a.norm() * f.norm() * g.norm())

    one = SymbolGrid(GRID, np.ones((GRID.N, GRID.N), dtype=complex))
    id_err = rel_l2(op_weyl(one, f).values, f.values)

    n_idx = np.arange(GRID.N)
    i2 = (2 * n_idx - GRID.N // 2) % GRID.N
    b = SymbolGrid(GRID, np.exp(4j * np.pi * X * XI) * 2.0 * a.values[np.ix_(i2, i2)])
    red_err = rel_l2(op_metaplectic(a, f, stft_program(1)).values, op_weyl(b, involution(f)).values)

    ok = dual_err <= 1e-10 and id_err <= 1e-8 and red_err <= 1e-5
    assert verdict(
        8,
        "quantization",
        ok,
        f"duality={dual_err:.3e} tol=1e-10 identity={id_err:.3e} tol=1e-08 stft_reduction={red_err:.3e} tol=1e-05",
    )


@pytest.mark.parametrize("p,q", [(2.0, 2.0), (4.0, 4.0)])
def test_criterion_9_bounded_probes(p, q):
    lambdas = [float(2.0**k) for k in range(-6, 7)]
    start = time.monotonic()
    table = lp_norm_probe(wigner_program(1), p, q, lambdas, GRID)
    elapsed = time.monotonic() - start
    ratios = [r for _, r in table]
    variation = max(ratios) / min(ratios)
    assert lp_wigner_bounded(p, q)
    ok = variation < 4.0 and elapsed <= 60.0
    assert verdict(9, f"norm probe p={p:g} q={q:g} bounded", ok, f"variation={variation:.3f} ceiling=4")


@pytest.mark.parametrize("p,q", [(2.0, 1.0), (1.0, 2.0), (4.0, 2.0)])
def test_criterion_9_unbounded_probes(p, q):
    # honest red: with the stated normalization the exact ratio for these
    # pairs varies like a bounded power of lambda over the dyadic sweep, so
    # the required tenfold growth is not reachable; the computation and the
    # threshold are kept as specified
    lambdas = [float(2.0**k) for k in range(-6, 7)]
    table = lp_norm_probe(wigner_program(1), p, q, lambdas, GRID)
    ratios = [r for _, r in table]
    variation = max(ratios) / min(ratios)
    assert not lp_wigner_bounded(p, q)
    ok = variation > 10.0
    assert verdict(9, f"norm probe p={p:g} q={q:g} unbounded", ok, f"variation={variation:.3f} floor=10")


def test_criterion_10_verify_reproducibility(tmp_path):
    runner = CliRunner()
    outs = []
    for sub in ("run1", "run2"):
        out = tmp_path / sub
        res = runner.invoke(cli_main, ["verify", "all", "--seed", "42", "--out", str(out)])
        # exit code 1 is expected while the unbounded probe cases stay red;
        # reproducibility is judged on the report bytes
        assert res.exit_code in (0, 1), res.output
        outs.append((out / "verify_all.json").read_bytes())
    ok = outs[0] == outs[1]
    assert verdict(10, "byte-stable verification", ok, f"identical={ok} bytes={len(outs[0])}")
