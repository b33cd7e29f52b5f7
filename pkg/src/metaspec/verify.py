"""Property suites tying the structural theory to the discrete engine.

Each suite runs a fixed list of checks with a seeded RNG and reports one
case per check: an id, the measured value, the tolerance, and whether the
case passed. Reports are deterministic (byte-identical JSON) for a given
(suite, seed, grid) triple.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from . import kernels
from .classify import spectrogram_test, shift_invertibility_test, trichotomy_1d, lp_wigner_bounded
from .engine import (
    DiscreteSignal,
    Grid1D,
    TFGrid,
    centered_fft,
    centered_ifft,
    cohen_convolve,
    execute_program,
    inner,
    stft,
    tau_wigner,
    tensor,
    tf_inner,
    wigner,
)
from .programs import (
    A_tau,
    GeneratorStep,
    MetaplecticProgram,
    ba_cohen_matrix,
    cohen_matrix,
    stft_program,
    tau_program,
    wigner_program,
)
from .quantize import SymbolGrid, lp_norm_probe, op_metaplectic, op_tau, op_weyl

SUITES = ("moyal", "cohen", "spectrogram", "trichotomy", "kernels", "quantization", "lp_probe", "all")

DEFAULT_GRID = Grid1D(256, 16.0)


@dataclass(frozen=True)
class Case:
    """One check: pass iff measured <= tolerance ('max') or >= ('min')."""

    case_id: str
    measured: float
    tolerance: float
    mode: str = "max"

    @property
    def passed(self) -> bool:
        if self.mode == "min":
            return bool(self.measured >= self.tolerance)
        return bool(self.measured <= self.tolerance)

    def to_json(self) -> dict:
        return {
            "id": self.case_id,
            "measured": float(self.measured),
            "tolerance": float(self.tolerance),
            "mode": self.mode,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    grid: Grid1D
    cases: tuple[Case, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json_str(self) -> str:
        obj = {
            "suite": self.suite,
            "seed": self.seed,
            "grid": {"N": self.grid.N, "T": self.grid.T},
            "passed": self.passed,
            "cases": [c.to_json() for c in sorted(self.cases, key=lambda c: c.case_id)],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"

    def summary(self) -> str:
        lines = []
        for c in sorted(self.cases, key=lambda c: c.case_id):
            verdict = "PASS" if c.passed else "FAIL"
            op = ">=" if c.mode == "min" else "<="
            lines.append(f"{verdict} {c.case_id}: measured={c.measured:.6e} {op} {c.tolerance:.6e}")
        lines.append(f"{'PASS' if self.passed else 'FAIL'} suite={self.suite} cases={len(self.cases)}")
        return "\n".join(lines)


# -- shared random data -------------------------------------------------------

def random_mixture(
    rng: np.random.Generator,
    grid: Grid1D,
    terms: int = 2,
    lam_range: tuple[float, float] = (0.5, 2.0),
    mu_max: float = 2.0,
    nu_max: float = 2.0,
) -> DiscreteSignal:
    """Random complex Gaussian mixture, well decayed at the domain boundary."""
    x = grid.x
    vals = np.zeros(grid.N, dtype=complex)
    for _ in range(terms):
        lam = rng.uniform(*lam_range)
        mu = rng.uniform(-mu_max, mu_max)
        nu = rng.uniform(-nu_max, nu_max)
        amp = rng.normal() + 1j * rng.normal()
        vals += amp * np.exp(-np.pi * lam * (x - mu) ** 2) * np.exp(2j * np.pi * nu * x)
    return DiscreteSignal(grid, vals)


def rel_l2(A: npt.NDArray, B: npt.NDArray) -> float:
    denom = float(np.linalg.norm(B))
    return float(np.linalg.norm(np.asarray(A) - np.asarray(B))) / max(denom, 1e-300)


def _fft2c(W: TFGrid) -> npt.NDArray[np.complex128]:
    return centered_fft(centered_fft(W.values, W.grid.dx, axis=0), W.grid.dxi, axis=1)


def _zeta(grid: Grid1D) -> npt.NDArray[np.float64]:
    X, Y = np.meshgrid(grid.x, grid.x, indexing="ij")
    return np.stack([X, Y], axis=-1)


def _tau_MA(tau: float) -> npt.NDArray[np.float64]:
    return np.array([[0.0, tau - 0.5], [tau - 0.5, 0.0]])


# -- suites -------------------------------------------------------------------

def _suite_moyal(seed: int, grid: Grid1D, quadruples: int = 50) -> list[Case]:
    rng = np.random.default_rng(seed)
    pipelines = {
        "stft": stft,
        "wigner": wigner,
        "tau_0": lambda f, g: tau_wigner(f, g, 0.0),
        "tau_0.3": lambda f, g: tau_wigner(f, g, 0.3),
        "tau_0.5": lambda f, g: tau_wigner(f, g, 0.5),
        "tau_1": lambda f, g: tau_wigner(f, g, 1.0),
    }
    worst = {name: 0.0 for name in pipelines}
    for _ in range(quadruples):
        f1, f2, g1, g2 = (random_mixture(rng, grid) for _ in range(4))
        rhs = inner(f1, g1) * np.conj(inner(f2, g2))
        scale = f1.norm() * f2.norm() * g1.norm() * g2.norm()
        for name, pipe in pipelines.items():
            lhs = tf_inner(pipe(f1, f2), pipe(g1, g2))
            worst[name] = max(worst[name], abs(lhs - rhs) / scale)
    cases = [Case(f"moyal/{name}", err, 1e-6) for name, err in worst.items()]

    f, h, g = (random_mixture(rng, grid) for _ in range(3))
    alpha, beta = 0.7 - 0.2j, -1.1 + 0.4j
    mix = DiscreteSignal(grid, alpha * f.values + beta * h.values)
    for name in ("stft", "wigner"):
        pipe = pipelines[name]
        direct = pipe(mix, g).values
        combined = alpha * pipe(f, g).values + beta * pipe(h, g).values
        cases.append(Case(f"sesquilinear/{name}", rel_l2(direct, combined), 1e-10))
    return cases


def _suite_cohen(seed: int, grid: Grid1D) -> list[Case]:
    rng = np.random.default_rng(seed)
    f = random_mixture(rng, grid)
    g = random_mixture(rng, grid)
    W = wigner(f, g)
    FW = _fft2c(W)
    zeta = _zeta(grid)
    peak = float(np.max(np.abs(FW)))
    mask = np.abs(FW) > 1e-8 * peak

    cases = []
    for tau in (0.0, 0.3, 1.0):
        Wt = tau_wigner(f, g, tau)
        mult = kernels.cohen_multiplier(_tau_MA(tau))(zeta)
        err = float(np.max(np.abs(_fft2c(Wt) - mult * FW)[mask] / np.abs(FW)[mask]))
        cases.append(Case(f"multiplier/tau_{tau:g}", err, 1e-5))

    from .engine import ba_distribution

    for M in (0.0, 0.5, 2.0):
        B = ba_distribution(f, g, ba_cohen_matrix(np.array([[M]])))
        mult = kernels.cohen_multiplier(kernels.block_antidiagonal([[M]]))(zeta)
        err = float(np.max(np.abs(_fft2c(B) - mult * FW)[mask] / np.abs(FW)[mask]))
        cases.append(Case(f"multiplier/ba_M_{M:g}", err, 1e-5))

    for tau in (0.0, 0.3, 0.5, 1.0):
        Wt = tau_wigner(f, g, tau)
        prog = execute_program(tau_program(tau, 1), tensor(f, g), grid)
        cases.append(Case(f"crossval/program_tau_{tau:g}", rel_l2(prog, Wt.values), 1e-5))
        conv = cohen_convolve(W, _tau_MA(tau))
        cases.append(Case(f"crossval/convolve_tau_{tau:g}", rel_l2(conv.values, Wt.values), 1e-5))
    return cases


def _window_spectrogram(f: DiscreteSignal, g: DiscreteSignal, rep) -> TFGrid:
    """V_phi f * conj(V_psi g) from a spectrogram report's symbolic windows."""
    from .engine import window_stft

    V1 = window_stft(f, rep.phi)
    V2 = window_stft(g, rep.psi)
    return TFGrid(f.grid, V1.values * np.conj(V2.values), tag="window_spectrogram")


def _reconstruction_residual(
    f: DiscreteSignal, g: DiscreteSignal, A11: float, A13: float, A21: float, grid: Grid1D
) -> float:
    """Relative L2 residual of the two-pipeline spectrogram identity after scalar fit."""
    from .classify import cohen_class_test

    A = cohen_matrix(A11, A13, A21)
    M_A = cohen_class_test(A).M_A
    WA = cohen_convolve(wigner(f, g), M_A)
    rep = spectrogram_test(A)
    if not rep.is_spectrogram:
        raise ValueError("matrix does not satisfy the spectrogram characterization")
    Sp = _window_spectrogram(f, g, rep)
    denom = complex(np.vdot(Sp.values, Sp.values))
    c = complex(np.vdot(Sp.values, WA.values)) / denom
    return rel_l2(c * Sp.values, WA.values)


def _perturbed_residual(
    f: DiscreteSignal, g: DiscreteSignal, A11: float, A13: float, A21: float, grid: Grid1D
) -> float:
    """Residual against the windows of the unperturbed matrix, A21 shifted by 1e-2."""
    from .classify import cohen_class_test

    rep = spectrogram_test(cohen_matrix(A11, A13, A21))
    A_pert = cohen_matrix(A11, A13, A21 + 1e-2)
    M_A = cohen_class_test(A_pert).M_A
    WA = cohen_convolve(wigner(f, g), M_A)
    Sp = _window_spectrogram(f, g, rep)
    c = complex(np.vdot(Sp.values, WA.values)) / complex(np.vdot(Sp.values, Sp.values))
    return rel_l2(c * Sp.values, WA.values)


def _suite_spectrogram(seed: int, grid: Grid1D, n_random: int = 5) -> list[Case]:
    rng = np.random.default_rng(seed)
    f = random_mixture(rng, grid)
    g = random_mixture(rng, grid)

    cases = [
        Case("reconstruct/fixed_a0.3_b1", _reconstruction_residual(f, g, 0.3, 1.0, 0.21, grid), 1e-4),
        Case("reconstruct/negative_control", _perturbed_residual(f, g, 0.3, 1.0, 0.21, grid), 1e-3, mode="min"),
    ]
    # Both window chirp rates a/b and (1-a)/b stay >= ~0.3 so the torus
    # images of the strip-shaped spectrogram are separated from the true
    # strip; the residual then measures only the window synthesis.
    for i in range(n_random):
        a = rng.uniform(0.35, 0.65)
        b = rng.uniform(1.0, 1.25)
        c = a * (1.0 - a) / b
        fi = random_mixture(rng, grid, lam_range=(0.75, 1.5), mu_max=1.5, nu_max=1.0)
        gi = random_mixture(rng, grid, lam_range=(0.75, 1.5), mu_max=1.5, nu_max=1.0)
        cases.append(Case(f"reconstruct/random_{i}", _reconstruction_residual(fi, gi, a, b, c, grid), 1e-4))
    return cases


def _random_cohen_triple(rng: np.random.Generator, make_spectrogram: bool) -> tuple[float, float, float]:
    if make_spectrogram:
        if rng.uniform() < 0.3:
            return float(rng.integers(0, 2)), 0.0, rng.uniform(-2.0, 2.0)
        a = rng.uniform(-1.0, 2.0)
        b = rng.uniform(0.5, 2.0) * (1 if rng.uniform() < 0.5 else -1)
        return a, b, a * (1.0 - a) / b
    while True:
        a = rng.uniform(-1.0, 2.0)
        if rng.uniform() < 0.2:
            b, c = 0.0, rng.uniform(-2.0, 2.0)
        else:
            b = rng.uniform(0.5, 2.0) * (1 if rng.uniform() < 0.5 else -1)
            c = rng.uniform(-2.0, 2.0)
        if abs(a * (1.0 - a) - c * b) >= 1e-3:
            return a, b, c


def _suite_trichotomy(seed: int, grid: Grid1D, n_triples: int = 10_000) -> list[Case]:
    rng = np.random.default_rng(seed)
    disagreements = 0
    for i in range(n_triples):
        a, b, c = _random_cohen_triple(rng, make_spectrogram=(i % 2 == 0))
        t = trichotomy_1d(a, b, c)
        A = cohen_matrix(a, b, c)
        spec = spectrogram_test(A).is_spectrogram
        invertible, _ = shift_invertibility_test(A)
        if not (t.is_spectrogram == spec == (not invertible)):
            disagreements += 1
    cases = [Case("trichotomy/agreement", float(disagreements), 0.0)]

    mismatches = 0
    for tau in (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0):
        is_spec = spectrogram_test(A_tau(tau, 1)).is_spectrogram
        if is_spec != (tau in (0.0, 1.0)):
            mismatches += 1
    cases.append(Case("trichotomy/tau_table", float(mismatches), 0.0))
    return cases


# -- kernel oracles -----------------------------------------------------------

def _chirp_ft_quadrature(
    c: float, xi: npt.NDArray, eps: float, N: int = 1 << 18, T: float = 512.0
) -> npt.NDArray[np.complex128]:
    """Riemann-sum Fourier transform of exp(i pi c x^2 - pi eps x^2) at xi."""
    dx = T / N
    x = -T / 2 + np.arange(N) * dx
    h = np.exp(1j * np.pi * c * x * x - np.pi * eps * x * x)
    phases = np.exp(-2j * np.pi * np.outer(np.asarray(xi, dtype=float), x))
    return dx * phases @ h


def chirp_ft_oracle_1d(c: float, xi: npt.NDArray) -> npt.NDArray[np.complex128]:
    """Mollified quadrature, polynomial extrapolation in the mollifier width.

    The mollified integral is analytic in eps, so Lagrange extrapolation
    through five widths removes the regularization error to fourth order.
    """
    eps = np.array([0.016, 0.008, 0.004, 0.002, 0.001])
    vals = np.array([_chirp_ft_quadrature(c, xi, e) for e in eps])
    weights = np.array(
        [np.prod([ej / (ej - ek) for ej in eps if ej != ek]) for ek in eps]
    )
    return np.tensordot(weights, vals, axes=(0, 0))


def chirp_ft_oracle(C: npt.NDArray, xi_points: npt.NDArray) -> npt.NDArray[np.complex128]:
    """Quadrature oracle for invertible C of any dimension.

    Diagonalizes C orthogonally and multiplies one-dimensional quadrature
    factors along the eigen-axes (the Fourier transform commutes with
    rotations).
    """
    from .symplectic import sym_eig

    eig = sym_eig(np.atleast_2d(np.asarray(C, dtype=float)))
    pts = np.atleast_2d(np.asarray(xi_points, dtype=float))
    rotated = pts @ eig.Sigma.T
    out = np.ones(pts.shape[0], dtype=complex)
    for j, lam in enumerate(eig.lambdas):
        if lam == 0.0:
            raise ValueError("quadrature oracle handles invertible C only")
        out = out * chirp_ft_oracle_1d(float(lam), rotated[:, j])
    return out


def _suite_kernels(seed: int, grid: Grid1D) -> list[Case]:
    rng = np.random.default_rng(seed)
    cases = []

    xi = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    for c in (1.0, -1.0, 2.0):
        cd = kernels.fourier_of_chirp(np.array([[c]]))
        got = cd.values(xi[:, None])
        want = chirp_ft_oracle_1d(c, xi)
        cases.append(Case(f"chirp_ft/quadrature_c_{c:g}", float(np.max(np.abs(got - want) / np.abs(want))), 1e-5))

    for label, C2 in (("pospos", np.array([[2.0, 1.0], [1.0, 1.0]])), ("mixed", np.array([[1.0, 0.5], [0.5, -2.0]]))):
        cd = kernels.fourier_of_chirp(C2)
        pts = np.array([[u, v] for u in (-1.0, 0.0, 1.0) for v in (-0.5, 0.25, 1.0)])
        got = cd.values(pts)
        want = chirp_ft_oracle(C2, pts)
        cases.append(Case(f"chirp_ft/quadrature_2d_{label}", float(np.max(np.abs(got - want) / np.abs(want))), 1e-5))

    cases.append(
        Case(
            "chirp_ft/fresnel_unit",
            float(abs(kernels.fourier_of_chirp(np.array([[1.0]])).amplitude - np.exp(1j * np.pi / 4))),
            1e-12,
        )
    )

    # mollified weak-limit consistency for C = diag(2, 0)
    C = np.diag([2.0, 0.0])
    cd = kernels.fourier_of_chirp(C)
    # symbolic pairing against exp(-pi |xi|^2): delta collapses the second axis
    q = np.linspace(-6.0, 6.0, 2048)
    dq = q[1] - q[0]
    sym = cd.amplitude * np.sum(np.exp(1j * np.pi * cd.chirp[0, 0] * q * q) * np.exp(-np.pi * q * q)) * dq
    errs = []
    for eps in (1e-1, 1e-2, 1e-3):
        ax1 = np.sum(_chirp_ft_quadrature(2.0, q, eps, N=1 << 14, T=64.0) * np.exp(-np.pi * q * q)) * dq
        num = ax1 * (1.0 + eps) ** -0.5
        errs.append(abs(num - sym))
    ratio = max(errs[1] / errs[0], errs[2] / errs[1])
    cases.append(Case("chirp_ft/mollified_monotone", float(ratio), 0.999))

    th = kernels.theta_M(np.array([[2.0]]))
    pts = np.array([[u, v] for u in (-1.0, 0.5, 2.0) for v in (-1.5, 0.25, 1.0)])
    want = 0.5 * np.exp(2j * np.pi * pts[:, 0] * pts[:, 1] / 2.0)
    cases.append(Case("theta/invertible_1d", float(np.max(np.abs(th.values(pts) - want))), 1e-12))

    Mr = np.array([[1.0, 0.3], [-0.2, 0.8]])
    th2 = kernels.theta_M(Mr)
    pts4 = rng.uniform(-1.5, 1.5, size=(12, 4))
    Minv = np.linalg.inv(Mr)
    want2 = np.abs(np.linalg.det(Mr)) ** -1 * np.exp(
        2j * np.pi * np.sum((pts4[:, :2] @ Minv.T) * pts4[:, 2:], axis=1)
    )
    cases.append(Case("theta/invertible_2d", float(np.max(np.abs(th2.values(pts4) - want2))), 1e-12))

    for tau in (0.0, 1.0, 2.0):
        sig = kernels.tau_kernel(tau, 1)
        th_tau = kernels.theta_M(np.array([[tau - 0.5]]))
        xs = rng.uniform(-2.0, 2.0, size=16)
        xis = rng.uniform(-2.0, 2.0, size=16)
        got = th_tau.values(np.stack([xs, xis], axis=-1))
        cases.append(Case(f"theta/tau_kernel_{tau:g}", float(np.max(np.abs(got - sig(xs, xis)))), 1e-12))

    cases.append(Case("tau_kernel/value_tau1_origin", abs(kernels.tau_kernel(1.0, 1)(0.0, 0.0) - 2.0), 1e-12))
    cases.append(
        Case("tau_kernel/value_tau0_halfhalf", abs(kernels.tau_kernel(0.0, 1)(0.5, 0.5) - (-2.0)), 1e-12)
    )
    cases.append(Case("tau_kernel/value_tau1_d2", abs(kernels.tau_kernel(1.0, 2)(np.zeros(2), np.zeros(2)) - 4.0), 1e-12))

    th0 = kernels.theta_M(np.array([[0.0]]))
    structural = 0.0 if (th0.delta_set == (1, 2) and abs(th0.amplitude - 1.0) < 1e-12) else 1.0
    cases.append(Case("theta/zero_matrix_pure_delta", structural, 0.0))
    return cases


def _suite_quantization(seed: int, grid: Grid1D) -> list[Case]:
    rng = np.random.default_rng(seed)
    N = grid.N
    x = grid.x
    xi = grid.xi
    X, XI = np.meshgrid(x, xi, indexing="ij")

    def random_symbol(g: Grid1D) -> SymbolGrid:
        gx, gxi = np.meshgrid(g.x, g.xi, indexing="ij")
        vals = np.zeros(gx.shape, dtype=complex)
        for _ in range(3):
            lam1, lam2 = rng.uniform(0.5, 1.5, size=2)
            mu1, mu2 = rng.uniform(-1.5, 1.5, size=2)
            amp = rng.normal() + 1j * rng.normal()
            vals += amp * np.exp(-np.pi * lam1 * (gx - mu1) ** 2 - np.pi * lam2 * (gxi - mu2) ** 2)
        return SymbolGrid(g, vals)

    f = random_mixture(rng, grid)
    g = random_mixture(rng, grid)
    cases = []

    one = SymbolGrid(grid, np.ones((N, N), dtype=complex))
    cases.append(Case("weyl/identity_symbol", rel_l2(op_weyl(one, f).values, f.values), 1e-8))

    m = np.exp(-np.pi * 0.8 * (xi - 0.4) ** 2)
    a_mult = SymbolGrid(grid, np.broadcast_to(m[None, :], (N, N)).astype(complex))
    want = centered_ifft(m * centered_fft(f.values, grid.dx), grid.dx)
    cases.append(Case("weyl/fourier_multiplier", rel_l2(op_weyl(a_mult, f).values, want), 1e-6))

    v = np.exp(-np.pi * 0.6 * (x + 0.3) ** 2) * np.exp(2j * np.pi * 0.5 * x)
    a_pw = SymbolGrid(grid, np.broadcast_to(v[:, None], (N, N)).astype(complex))
    cases.append(Case("weyl/pointwise_multiplier", rel_l2(op_weyl(a_pw, f).values, v * f.values), 1e-6))

    cases.append(Case("tau/kohn_nirenberg_multiplier", rel_l2(op_tau(a_mult, f, 0.0).values, want), 1e-6))
    a_half = random_symbol(grid)
    cases.append(Case("tau/half_equals_weyl", rel_l2(op_tau(a_half, f, 0.5).values, op_weyl(a_half, f).values), 1e-8))

    a = random_symbol(grid)
    for tau in (0.0, 0.3):
        lhs = inner(op_tau(a, f, tau), g)
        Wt = tau_wigner(g, f, tau)
        rhs = grid.dx * grid.dxi * np.sum(a.values * np.conj(Wt.values))
        denom = a.norm() * f.norm() * g.norm()
        cases.append(Case(f"tau/duality_tau_{tau:g}", abs(lhs - rhs) / denom, 1e-6))

    wp = wigner_program(1)
    cases.append(Case("metaplectic/weyl_program", rel_l2(op_metaplectic(a, f, wp).values, op_weyl(a, f).values), 1e-6))

    lhs = inner(op_metaplectic(a, f, wp), g)
    Wgf = execute_program(wp, tensor(g, f), grid)
    rhs = grid.dx * grid.dxi * np.sum(a.values * np.conj(Wgf))
    cases.append(Case("metaplectic/duality_exact", abs(lhs - rhs) / (a.norm() * f.norm() * g.norm()), 1e-10))

    ident = MetaplecticProgram(n=2, steps=(GeneratorStep("linear", matrix=np.eye(2)),))
    want_kernel = grid.dx * (a.values @ f.values)
    cases.append(Case("metaplectic/schwartz_kernel", rel_l2(op_metaplectic(a, f, ident).values, want_kernel), 1e-10))

    # Weyl reduction of the STFT quantization: symbol rescaled and chirped, signal flipped
    n_idx = np.arange(N)
    i2 = (2 * n_idx - N // 2) % N
    j2 = (2 * n_idx - N // 2) % N
    a_sc = 2.0 * a.values[np.ix_(i2, j2)]
    b_sym = SymbolGrid(grid, np.exp(4j * np.pi * X * XI) * a_sc)
    from .engine import involution

    reduced = op_weyl(b_sym, involution(f))
    direct = op_metaplectic(a, f, stft_program(1))
    cases.append(Case("metaplectic/stft_weyl_reduction", rel_l2(direct.values, reduced.values), 1e-5))

    ks = []
    for n_small in (128, 256):
        gsm = Grid1D(n_small, 16.0)
        rng_k = np.random.default_rng(seed + 1)
        gx, gxi = np.meshgrid(gsm.x, gsm.xi, indexing="ij")
        vals = np.zeros(gx.shape, dtype=complex)
        for _ in range(3):
            lam1, lam2 = rng_k.uniform(0.5, 1.5, size=2)
            mu1, mu2 = rng_k.uniform(-1.5, 1.5, size=2)
            amp = rng_k.normal() + 1j * rng_k.normal()
            vals += amp * np.exp(-np.pi * lam1 * (gx - mu1) ** 2 - np.pi * lam2 * (gxi - mu2) ** 2)
        a_sm = SymbolGrid(gsm, vals)
        xs = gsm.x
        f_sm = DiscreteSignal(gsm, np.exp(-np.pi * 0.9 * (xs - 0.2) ** 2) * np.exp(2j * np.pi * 0.3 * xs))
        a_norm = float(np.sqrt(gsm.dx * gsm.dxi * np.sum(np.abs(a_sm.values) ** 2)))
        ks.append(op_weyl(a_sm, f_sm).norm() / (a_norm * f_sm.norm()))
    cases.append(Case("weyl/bound_constant_stability", abs(ks[0] / ks[1] - 1.0), 0.2))
    return cases


def _suite_lp_probe(seed: int, grid: Grid1D) -> list[Case]:
    lambdas = [float(2.0 ** k) for k in range(-6, 7)]
    wp = wigner_program(1)
    cases = []
    for p, q in ((2.0, 2.0), (2.0, 1.0), (4.0, 4.0), (1.0, 2.0), (4.0, 2.0)):
        table = lp_norm_probe(wp, p, q, lambdas, grid)
        ratios = [r for _, r in table]
        variation = max(ratios) / min(ratios)
        label = f"probe/p_{p:g}_q_{q:g}"
        if lp_wigner_bounded(p, q):
            cases.append(Case(label + "_bounded", variation, 4.0))
        else:
            cases.append(Case(label + "_unbounded", variation, 10.0, mode="min"))
    return cases


_SUITE_FUNCS = {
    "moyal": _suite_moyal,
    "cohen": _suite_cohen,
    "spectrogram": _suite_spectrogram,
    "trichotomy": _suite_trichotomy,
    "kernels": _suite_kernels,
    "quantization": _suite_quantization,
    "lp_probe": _suite_lp_probe,
}


def run_suite(name: str, seed: int = 42, grid: Grid1D | None = None) -> SuiteReport:
    """Run one named suite (or 'all') with a fixed seed; deterministic output."""
    if grid is None:
        grid = DEFAULT_GRID
    if name == "all":
        cases: list[Case] = []
        for sub in ("moyal", "cohen", "spectrogram", "trichotomy", "kernels", "quantization", "lp_probe"):
            sub_cases = _SUITE_FUNCS[sub](seed, grid)
            cases.extend(Case(f"{sub}/{c.case_id}", c.measured, c.tolerance, c.mode) for c in sub_cases)
        return SuiteReport("all", seed, grid, tuple(cases))
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    return SuiteReport(name, seed, grid, tuple(_SUITE_FUNCS[name](seed, grid)))
