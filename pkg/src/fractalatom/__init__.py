"""Hydrogen-like atoms in fractal dimensions.

Stability classification, WKB spectra of the rescaled radial problem, and
large-n scaling laws for power-law attractive potentials produced by fractal
electrostatics (or an ambient Coulomb field). Hot numerical kernels live in
a compiled extension with a pure-Python fallback selected at import time;
see :mod:`fractalatom._kernels`.
"""

from ._kernels import backend
from .asymptotics import (
    RydbergExponents,
    exponents_embedded,
    exponents_full,
    fit_loglog_slope,
    rydberg_asymptote,
    rydberg_exponents,
    theta_closed_form,
    theta_quadrature,
)
from .errors import (
    BracketError,
    ConvergenceError,
    DegenerateExponentError,
    DomainError,
    EmbeddingBoundError,
    FractalAtomError,
    GridTooSmallError,
    NearThresholdWarning,
    NoBoundStateError,
    QuadratureError,
    ScaleFreeBoundaryError,
    SpectrumError,
    UnstableFractalityError,
)
from .geometry import (
    Fractality,
    LaplacianCoefficients,
    ball_area,
    ball_volume,
    embedded_fractality,
    gradient_coefficient,
    laplacian_coefficients,
    laplacian_prefactor,
)
from .oracle import (
    ComparisonRow,
    OracleConfig,
    OracleLevel,
    compare_wkb_oracle,
    effective_equation_coefficients,
    shoot_eigenvalue,
    wavefunction_samples,
)
from .potentials import (
    Charges,
    PowerLawPotential,
    Scenario,
    classical_effective_potential,
    coulomb,
    coulomb_embedded,
    coulomb_full,
    electric_field_magnitude,
    potential_energy,
)
from .stability import (
    SCALE_FREE_TOLERANCE,
    Classification,
    StabilityReport,
    classify_classical_euclidean,
    classify_margin,
    classify_quantum,
    euclidean_fractality,
    hamiltonian_scaling_exponents,
    margin_for_scenario,
    scale_free_locus_embedded,
    scale_free_locus_full,
    stability_margin,
)
from .wkb import (
    DEFAULT_CONFIG,
    ScalingContext,
    SpectrumLevel,
    WkbConfig,
    action_integral,
    langer_momentum,
    radial_momentum,
    scaling_context,
    solve_level,
    spectrum,
    turning_points,
    wavefunction_exponent,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend",
    # geometry
    "Fractality",
    "LaplacianCoefficients",
    "ball_area",
    "ball_volume",
    "embedded_fractality",
    "gradient_coefficient",
    "laplacian_coefficients",
    "laplacian_prefactor",
    # potentials
    "Charges",
    "PowerLawPotential",
    "Scenario",
    "classical_effective_potential",
    "coulomb",
    "coulomb_embedded",
    "coulomb_full",
    "electric_field_magnitude",
    "potential_energy",
    # stability
    "Classification",
    "StabilityReport",
    "classify_classical_euclidean",
    "SCALE_FREE_TOLERANCE",
    "classify_margin",
    "classify_quantum",
    "euclidean_fractality",
    "hamiltonian_scaling_exponents",
    "margin_for_scenario",
    "scale_free_locus_embedded",
    "scale_free_locus_full",
    "stability_margin",
    # wkb
    "DEFAULT_CONFIG",
    "ScalingContext",
    "SpectrumLevel",
    "WkbConfig",
    "action_integral",
    "langer_momentum",
    "radial_momentum",
    "scaling_context",
    "solve_level",
    "spectrum",
    "turning_points",
    "wavefunction_exponent",
    # asymptotics
    "RydbergExponents",
    "exponents_embedded",
    "exponents_full",
    "fit_loglog_slope",
    "rydberg_asymptote",
    "rydberg_exponents",
    "theta_closed_form",
    "theta_quadrature",
    # oracle
    "ComparisonRow",
    "OracleConfig",
    "OracleLevel",
    "compare_wkb_oracle",
    "effective_equation_coefficients",
    "shoot_eigenvalue",
    "wavefunction_samples",
    # errors
    "BracketError",
    "ConvergenceError",
    "DegenerateExponentError",
    "DomainError",
    "EmbeddingBoundError",
    "FractalAtomError",
    "GridTooSmallError",
    "NearThresholdWarning",
    "NoBoundStateError",
    "QuadratureError",
    "ScaleFreeBoundaryError",
    "SpectrumError",
    "UnstableFractalityError",
]
