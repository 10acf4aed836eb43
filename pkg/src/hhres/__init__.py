"""Resonance and resummation toolkit for the quantum Henon-Heiles oscillator.

Pillars: exact perturbation coefficients (`poly`, `series`), the
complex-dilated Hamiltonian and its spectral checks (`oscillator`,
`resonance`), and distributional Borel-Leroy summation (`resummation`).
The `verify` module cross-checks the pillars against each other; `cli`
drives everything from the command line.
"""

__version__ = "0.1.0"

from .poly import POTENTIAL, Poly2, apply_hermite, gaussian_inner, solve_hermite
from .series import (GSeries, PerturbationSeries, growth_diagnostics,
                     perturbation_series, reindex_to_g)
from .oscillator import (BasisTruncation, ScaledHamiltonian, ScalingParams,
                         assemble, coercivity_check, numerical_range_check,
                         sector_membership)
from .resonance import (ContinuationResult, Resonance, all_eigenvalues,
                        continue_argument, converge_resonance, locate_resonance)
from .resummation import (BorelSeries, PadeApproximant, QuadConfig,
                          SummationResult, borel_transform, boundary_value,
                          distributional_sum, nevanlinna_check, pade_fit)

__all__ = [
    "__version__",
    "POTENTIAL", "Poly2", "apply_hermite", "gaussian_inner", "solve_hermite",
    "GSeries", "PerturbationSeries", "growth_diagnostics",
    "perturbation_series", "reindex_to_g",
    "BasisTruncation", "ScaledHamiltonian", "ScalingParams", "assemble",
    "coercivity_check", "numerical_range_check", "sector_membership",
    "ContinuationResult", "Resonance", "all_eigenvalues", "continue_argument",
    "converge_resonance", "locate_resonance",
    "BorelSeries", "PadeApproximant", "QuadConfig", "SummationResult",
    "borel_transform", "boundary_value", "distributional_sum",
    "nevanlinna_check", "pade_fit",
]
