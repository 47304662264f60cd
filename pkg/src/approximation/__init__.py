"""
Direct and inverse approximation theorems on the diagonal model.

Public API
----------
InequalityReport: outcome of one inequality check
bernstein_check, jackson_check, kernel_integral, kernel_check: direct side
ModulusDescriptor, power_modulus, dini, big_omega, big_omega_properties,
inverse_bound, lemma_rate_bound: modulus-type functions and their integrals
dyadic_approximants, prescribed_decay_vector, inverse_theorem_experiment,
inverse_stability, regime, regime_profile: inverse side
"""

from src.approximation.inequalities import (
    bernstein_check,
    jackson_check,
    kernel_check,
    kernel_integral,
    kernel_lower_bound,
)
from src.approximation.inverse import (
    InverseRateReport,
    StabilityReport,
    default_t_grid,
    dyadic_approximants,
    inverse_stability,
    inverse_theorem_experiment,
    prescribed_decay_vector,
    regime,
    regime_profile,
)
from src.approximation.moduli import (
    ModulusDescriptor,
    big_omega,
    big_omega_properties,
    dini,
    inverse_bound,
    lemma_rate_bound,
    power_modulus,
)
from src.approximation.reports import InequalityReport, format_context

__all__ = [
    "InequalityReport",
    "format_context",
    "bernstein_check",
    "jackson_check",
    "kernel_check",
    "kernel_integral",
    "kernel_lower_bound",
    "ModulusDescriptor",
    "power_modulus",
    "dini",
    "big_omega",
    "big_omega_properties",
    "inverse_bound",
    "lemma_rate_bound",
    "InverseRateReport",
    "StabilityReport",
    "default_t_grid",
    "dyadic_approximants",
    "prescribed_decay_vector",
    "inverse_theorem_experiment",
    "inverse_stability",
    "regime",
    "regime_profile",
]
