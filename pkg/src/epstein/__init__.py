"""Epstein zeta functions on Hecke congruence groups.

Ramanujan series, K-Bessel Fourier expansions, lattice sums and
elliptic-integral representations, with a registry of numerical identities.
"""

from .eichler_integrals import (
    catalan_k_integrals,
    eichler_e4_check,
    elliptic_substitution_identities,
    odd_zeta_integral,
    theorem2_epstein,
    vanishing_integral,
    zeta11_integral,
)
from .epstein_core import (
    EvalResult,
    addition_formula_residuals,
    derivative_operator,
    epstein_fourier,
    epstein_lattice_oracle,
    epstein_level1,
    epstein_levelN,
    epstein_ramanujan_level1,
    epstein_ramanujan_level4,
    laplacian_eigencheck,
)
from .errors import (
    AccuracyError,
    BranchCutError,
    ConvergenceError,
    DomainError,
    EpsteinError,
    PathError,
    PrecisionError,
    RegionError,
    TruncationBudgetError,
)
from .modular_functions import (
    HalfPlanePoint,
    TruncationPolicy,
    dedekind_eta,
    eisenstein_e4,
    modular_lambda,
)
from .quadrature import ComplexSegment, QuadratureSpec, quad_segment
from .reflection_identities import (
    ReflectionReport,
    catalan_cosh_sum,
    catalan_sinh_sum,
    reflection_notebook,
    reflection_type2,
)
from .special_functions import agm, bessel_k_half, catalan, dirichlet_beta, elliptic_k, zeta_int

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "addition_formula_residuals",
    "agm",
    "bessel_k_half",
    "BranchCutError",
    "catalan",
    "catalan_cosh_sum",
    "catalan_k_integrals",
    "catalan_sinh_sum",
    "ComplexSegment",
    "ConvergenceError",
    "dedekind_eta",
    "derivative_operator",
    "dirichlet_beta",
    "DomainError",
    "eichler_e4_check",
    "eisenstein_e4",
    "elliptic_k",
    "elliptic_substitution_identities",
    "epstein_fourier",
    "epstein_lattice_oracle",
    "epstein_level1",
    "epstein_levelN",
    "epstein_ramanujan_level1",
    "epstein_ramanujan_level4",
    "EpsteinError",
    "EvalResult",
    "HalfPlanePoint",
    "laplacian_eigencheck",
    "modular_lambda",
    "odd_zeta_integral",
    "PathError",
    "PrecisionError",
    "quad_segment",
    "QuadratureSpec",
    "reflection_notebook",
    "reflection_type2",
    "ReflectionReport",
    "RegionError",
    "theorem2_epstein",
    "TruncationBudgetError",
    "TruncationPolicy",
    "vanishing_integral",
    "zeta11_integral",
    "zeta_int",
]
