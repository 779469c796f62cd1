"""Spectral solitary-wave and ground-state computation by stabilized fixed-point iterations.

The package solves discrete stationary systems L x = N(x) whose nonlinearity
is a sum of homogeneous terms, using the classical fixed-point map, the
single-factor stabilized iteration, and the per-term extended family.  It
also builds the associated iteration matrices and their spectra, and verifies
computed profiles by direct time integration.
"""

from .errors import (
    ConfigurationError,
    DegenerateIterateError,
    DimensionMismatchError,
    SolwaveError,
)
from .grid import (
    Field,
    GridSpec,
    diff_apply,
    diff_matrix,
    hadamard_power_product,
    inner,
    make_grid,
)
from .problems import (
    BoussinesqCoefficients,
    HomogeneousTerm,
    PotentialSpec,
    Problem,
    build_eboussinesq,
    build_gnls_double_well,
    build_gnls_three_term,
    build_nls_power,
    eval_N,
    eval_N_jacobian,
    exact_profile,
    power_term,
)
from .iteration import (
    FactorStrategy,
    InitialGuess,
    IterationConfig,
    IterationTrace,
    align_to_reference,
    iterate_classic,
    iterate_extended,
    iterate_petviashvili,
)
from .spectrum import (
    SpectrumReport,
    build_F_jacobian,
    build_S,
    spectrum_report,
    top_eigenvalues,
)
from .evolve import (
    EvolutionRun,
    PhaseSpeedSeries,
    modulus_drift,
    phase_speed,
    power,
    rk4_eboussinesq,
    splitstep_nls,
)

__version__ = "0.1.0"

__all__ = [
    "SolwaveError",
    "ConfigurationError",
    "DimensionMismatchError",
    "DegenerateIterateError",
    "GridSpec",
    "Field",
    "make_grid",
    "diff_apply",
    "diff_matrix",
    "inner",
    "hadamard_power_product",
    "HomogeneousTerm",
    "PotentialSpec",
    "BoussinesqCoefficients",
    "Problem",
    "power_term",
    "exact_profile",
    "build_nls_power",
    "build_gnls_double_well",
    "build_gnls_three_term",
    "build_eboussinesq",
    "eval_N",
    "eval_N_jacobian",
    "FactorStrategy",
    "InitialGuess",
    "IterationConfig",
    "IterationTrace",
    "iterate_classic",
    "iterate_petviashvili",
    "iterate_extended",
    "align_to_reference",
    "build_S",
    "build_F_jacobian",
    "top_eigenvalues",
    "SpectrumReport",
    "spectrum_report",
    "EvolutionRun",
    "PhaseSpeedSeries",
    "splitstep_nls",
    "rk4_eboussinesq",
    "phase_speed",
    "power",
    "modulus_drift",
    "__version__",
]
