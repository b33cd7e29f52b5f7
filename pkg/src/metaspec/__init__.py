"""Discrete metaplectic time-frequency analysis toolkit."""

__version__ = "0.1.0"

from .classify import (
    CohenReport,
    NotCohenError,
    SpectrogramReport,
    Trichotomy1d,
    WindowSpec,
    cohen_class_test,
    lp_op_bounded,
    lp_wigner_bounded,
    shift_invertibility_test,
    spectrogram_test,
    trichotomy_1d,
)
from .engine import (
    DiscreteSignal,
    Grid1D,
    GridError,
    TFGrid,
    ba_distribution,
    cohen_convolve,
    execute_program,
    gaussian,
    generalized_spectrogram,
    metaplectic_spectrogram,
    program_tfgrid,
    realize_window,
    stft,
    tau_wigner,
    wigner,
)
from .kernels import ChirpDelta, SingularParameterError, cohen_multiplier, fourier_of_chirp, tau_kernel, theta_M
from .programs import (
    A_ST,
    A_tau,
    GeneratorStep,
    MetaplecticProgram,
    cohen_matrix,
    compose_projection,
    stft_program,
    tau_program,
    wigner_program,
)
from .quantize import lp_norm_probe, op_metaplectic, op_tau, op_weyl
from .symplectic import BlockMatrix4d, NonSymplecticError, SymplecticMatrix, is_symplectic, sym_eig
from .verify import SUITES, SuiteReport, run_suite

__all__ = [
    "A_ST",
    "A_tau",
    "BlockMatrix4d",
    "ChirpDelta",
    "CohenReport",
    "DiscreteSignal",
    "GeneratorStep",
    "Grid1D",
    "GridError",
    "MetaplecticProgram",
    "NonSymplecticError",
    "NotCohenError",
    "SUITES",
    "SingularParameterError",
    "SpectrogramReport",
    "SuiteReport",
    "SymplecticMatrix",
    "TFGrid",
    "Trichotomy1d",
    "WindowSpec",
    "ba_distribution",
    "cohen_class_test",
    "cohen_convolve",
    "cohen_matrix",
    "cohen_multiplier",
    "compose_projection",
    "execute_program",
    "fourier_of_chirp",
    "gaussian",
    "generalized_spectrogram",
    "is_symplectic",
    "lp_norm_probe",
    "lp_op_bounded",
    "lp_wigner_bounded",
    "metaplectic_spectrogram",
    "op_metaplectic",
    "op_tau",
    "op_weyl",
    "program_tfgrid",
    "realize_window",
    "run_suite",
    "shift_invertibility_test",
    "spectrogram_test",
    "stft",
    "stft_program",
    "sym_eig",
    "tau_kernel",
    "tau_program",
    "tau_wigner",
    "theta_M",
    "trichotomy_1d",
    "wigner",
    "wigner_program",
]
