"""
Sturm-Liouville problems ``-x'' + q x = y`` on ``[0, pi]`` as Ritz problems.

Public API
----------
CosineSeries, PotentialSpec, BoundaryValueProblem, Basis: problem data
project, manufacture, check_boundary_conditions: coefficients and manufactured data
bernoulli_rhs, algebraic_solution: built-in data
assemble_gram, potential_moments, multiplication_matrix: Gram assembly
rate_experiment, RateReport: convergence-rate experiment
"""

from src.sturm_liouville.assembly import (
    METHODS,
    assemble_gram,
    multiplication_matrix,
    potential_moments,
)
from src.sturm_liouville.problem import (
    Basis,
    BoundaryValueProblem,
    PotentialSpec,
    algebraic_solution,
    bernoulli_rhs,
    check_boundary_conditions,
    manufacture,
    project,
)
from src.sturm_liouville.rates import RateReport, graph_error, rate_experiment, truncation_guard
from src.sturm_liouville.series import CosineSeries

__all__ = [
    "CosineSeries",
    "PotentialSpec",
    "BoundaryValueProblem",
    "Basis",
    "project",
    "manufacture",
    "check_boundary_conditions",
    "bernoulli_rhs",
    "algebraic_solution",
    "METHODS",
    "assemble_gram",
    "potential_moments",
    "multiplication_matrix",
    "RateReport",
    "graph_error",
    "truncation_guard",
    "rate_experiment",
]
