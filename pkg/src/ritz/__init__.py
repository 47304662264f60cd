"""
The Ritz method in the eigenbasis of a reference operator.

Public API
----------
GramProvider, DenseGram, RitzProblem, RitzSolution, EquivalenceConstants: types
solve, energy_norm, energy_functional, equivalence_constants: solver
sandwich_check, apriori_check, apriori_decay, smoothness_from_rate,
smoothness_from_power_rate: error bounds
counterexample, counterexample_problem: the rate-without-smoothness example
"""

from src.ritz.bounds import (
    DecayReport,
    SandwichReport,
    SmoothnessReport,
    apriori_check,
    apriori_decay,
    apriori_rhs,
    sandwich_check,
    smoothness_from_power_rate,
    smoothness_from_rate,
)
from src.ritz.counterexample import (
    CounterexampleReport,
    counterexample,
    counterexample_coefficients,
    counterexample_problem,
)
from src.ritz.problem import (
    DenseGram,
    EquivalenceConstants,
    GramProvider,
    RitzProblem,
    RitzSolution,
    energy_functional,
    energy_norm,
    equivalence_constants,
    solve,
)

__all__ = [
    "GramProvider",
    "DenseGram",
    "RitzProblem",
    "RitzSolution",
    "EquivalenceConstants",
    "solve",
    "energy_norm",
    "energy_functional",
    "equivalence_constants",
    "SandwichReport",
    "DecayReport",
    "SmoothnessReport",
    "sandwich_check",
    "apriori_rhs",
    "apriori_check",
    "apriori_decay",
    "smoothness_from_rate",
    "smoothness_from_power_rate",
    "CounterexampleReport",
    "counterexample",
    "counterexample_coefficients",
    "counterexample_problem",
]
