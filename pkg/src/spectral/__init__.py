"""
Diagonal spectral model of a self-adjoint operator with discrete simple spectrum.

Public API
----------
SpectrumModel, SpectralVector, ScalarSymbol: model types
constant_symbol, power_symbol, symbol_from_name: symbol factories
norm, b_norm, apply_function, unitary, difference, difference_binomial,
modulus, best_approx, project_exp, type_of, type_power_estimate: operations
"""

from src.spectral.model import (
    ScalarSymbol,
    SpectralVector,
    SpectrumModel,
    constant_symbol,
    power_symbol,
    symbol_from_name,
)
from src.spectral.operators import (
    apply_function,
    b_norm,
    best_approx,
    difference,
    difference_binomial,
    modulus,
    norm,
    project_exp,
    type_of,
    type_power_estimate,
    unitary,
)

__all__ = [
    "SpectrumModel",
    "SpectralVector",
    "ScalarSymbol",
    "constant_symbol",
    "power_symbol",
    "symbol_from_name",
    "norm",
    "b_norm",
    "apply_function",
    "unitary",
    "difference",
    "difference_binomial",
    "modulus",
    "best_approx",
    "project_exp",
    "type_of",
    "type_power_estimate",
]
