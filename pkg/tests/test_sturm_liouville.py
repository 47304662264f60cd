"""Tests for Sturm-Liouville problem data, Gram assembly and rate experiments."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.ritz import (
    apriori_check,
    apriori_decay,
    counterexample_coefficients,
    sandwich_check,
    solve,
)
from src.sturm_liouville import (
    Basis,
    BoundaryValueProblem,
    CosineSeries,
    PotentialSpec,
    algebraic_solution,
    assemble_gram,
    bernoulli_rhs,
    check_boundary_conditions,
    manufacture,
    multiplication_matrix,
    project,
    rate_experiment,
)
from src.utils.errors import HypothesisError, InsufficientDataError, QuadratureNotConverged

T = np.linspace(0.0, math.pi, 257)


def cosine_q() -> PotentialSpec:
    """``q = 2 + cos 2t``."""
    return PotentialSpec.from_cosine([2.0, 0.0, 1.0])


# ── Cosine series ───────────────────────────────────────────────────────────


def test_series_evaluation():
    np.testing.assert_allclose(CosineSeries([2.0, 0.0, 1.0])(T), 2.0 + np.cos(2 * T), atol=1e-14)


def test_series_product_to_sum():
    product = CosineSeries([2.0, 0.0, 1.0]) * CosineSeries([0.0, 1.0])
    np.testing.assert_allclose(product.coefficients, [0.0, 2.5, 0.0, 0.5])
    assert product.degree == 3


def test_series_negated_second_derivative():
    series = CosineSeries([1.0, 2.0, 0.0, -1.0]).negated_second_derivative()
    np.testing.assert_allclose(series.coefficients, [0.0, 2.0, 0.0, -9.0])


def test_series_orthonormal_coefficients():
    c = CosineSeries([3.0, 2.0]).orthonormal(4)
    np.testing.assert_allclose(c, [3.0 * math.sqrt(math.pi), 2.0 * math.sqrt(math.pi / 2), 0, 0])


# ── Potential and basis ─────────────────────────────────────────────────────


def test_potential_minimum_and_validation():
    assert cosine_q().min_value == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(HypothesisError, match="nonnegative"):
        PotentialSpec.from_cosine([0.5, 0.0, 1.0])


def test_potential_must_agree_with_its_expansion():
    with pytest.raises(ValueError, match="disagrees"):
        PotentialSpec(q=lambda t: 2.0 + np.cos(t), cosine=CosineSeries([2.0, 0.0, 1.0]))


def test_neumann_problem_needs_positive_potential():
    with pytest.raises(HypothesisError, match="q > 0"):
        BoundaryValueProblem(PotentialSpec.constant(0.0))
    bvp = BoundaryValueProblem(PotentialSpec.constant(0.0), basis="dirichlet")
    assert bvp.basis is Basis.DIRICHLET


def test_basis_eigenvalues():
    np.testing.assert_array_equal(Basis.NEUMANN.eigenvalues(4), [1.0, 2.0, 5.0, 10.0])
    np.testing.assert_array_equal(Basis.DIRICHLET.eigenvalues(3), [1.0, 4.0, 9.0])


def test_basis_functions_are_orthonormal():
    for basis in Basis:
        values = basis.functions(T, 6)
        weights = np.full(T.size, math.pi / (T.size - 1))
        weights[[0, -1]] /= 2
        np.testing.assert_allclose(values.T @ (weights[:, None] * values), np.eye(6), atol=1e-12)


# ── Projection ──────────────────────────────────────────────────────────────


def test_project_bernoulli_rhs():
    c = project(bernoulli_rhs, Basis.NEUMANN, 32)
    m = np.arange(1, 32, dtype=float)
    assert c[0] == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(c[1:], math.sqrt(math.pi / 2) / m**4, rtol=0, atol=1e-12)


def test_project_sine_mode():
    c = project(lambda t: np.sin(3 * t), "dirichlet", 8)
    expected = np.zeros(8)
    expected[2] = math.sqrt(math.pi / 2)
    np.testing.assert_allclose(c, expected, atol=1e-12)


def test_project_reports_slow_quadrature():
    with pytest.raises(QuadratureNotConverged, match="quadrature not converged"):
        project(lambda t: t, Basis.NEUMANN, 16)


# ── Boundary conditions and manufactured problems ───────────────────────────


def test_boundary_condition_check():
    check_boundary_conditions(np.cos, Basis.NEUMANN)
    check_boundary_conditions(np.sin, Basis.DIRICHLET)
    with pytest.raises(HypothesisError, match="boundary condition violated"):
        check_boundary_conditions(np.sin, Basis.NEUMANN)
    with pytest.raises(HypothesisError, match="boundary condition violated"):
        check_boundary_conditions(np.cos, Basis.DIRICHLET)


def test_manufacture_rejects_boundary_violation():
    bvp = BoundaryValueProblem(cosine_q(), truncation_order=16)
    with pytest.raises(HypothesisError):
        manufacture(bvp, lambda t: t**2)


def test_manufacture_symbolic_rhs():
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=16), CosineSeries([0, 1]))
    assert isinstance(bvp.rhs_function, CosineSeries)
    np.testing.assert_allclose(bvp.rhs_function.coefficients, [0.0, 3.5, 0.0, 0.5])


def test_manufacture_constant_solution_gives_potential():
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=16), CosineSeries([1.0]))
    np.testing.assert_allclose(bvp.rhs_function(T), cosine_q()(T), atol=1e-14)


def test_manufacture_spectral_rhs_matches_symbolic():
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=16), np.cos)
    np.testing.assert_allclose(
        bvp.rhs_function(T), 3.5 * np.cos(T) + 0.5 * np.cos(3 * T), atol=1e-10
    )


def test_manufactured_round_trip():
    x = algebraic_solution(4.0, 24)
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=32), x)
    problem = assemble_gram(bvp)
    solution = solve(problem, 32)
    np.testing.assert_allclose(solution.coefficients.real, x.orthonormal(32), atol=1e-8)


# ── Gram assembly ───────────────────────────────────────────────────────────


def test_constant_potential_gives_reference_operator():
    bvp = manufacture(
        BoundaryValueProblem(PotentialSpec.constant(1.0), truncation_order=32),
        algebraic_solution(3.0, 32),
    )
    problem = assemble_gram(bvp)
    np.testing.assert_allclose(problem.gram_a.full(), np.diag(problem.eigenvalues), atol=1e-14)

    constants = problem.equivalence
    assert constants.c1 == pytest.approx(1.0, rel=1e-10)
    assert constants.c2 == pytest.approx(1.0, rel=1e-10)

    x = problem.exact_solution.coefficients
    for n in (4, 8, 16):
        c = solve(problem, n).coefficients
        np.testing.assert_allclose(c, x[:n], rtol=0, atol=1e-12)


def test_cosine_potential_entries():
    gram = multiplication_matrix(cosine_q(), Basis.NEUMANN, 8)
    assert gram[0, 0] == pytest.approx(2.0, abs=1e-14)
    assert gram[1, 1] == pytest.approx(2.5, abs=1e-14)
    assert gram[0, 2] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-14)
    np.testing.assert_array_equal(gram, gram.T)


@pytest.mark.parametrize("basis", list(Basis))
def test_quadrature_assembly_matches_identity(basis):
    potential = PotentialSpec.from_cosine([3.0, 0.5, 0.25, 0.0, 0.1])
    exact = multiplication_matrix(potential, basis, 64, method="identity")
    numeric = multiplication_matrix(potential, basis, 64, method="quadrature")
    np.testing.assert_allclose(numeric, exact, rtol=0, atol=1e-9)


def test_function_potential_uses_quadrature():
    potential = PotentialSpec(q=lambda t: 2.0 + np.cos(2 * t))
    np.testing.assert_allclose(
        multiplication_matrix(potential, Basis.NEUMANN, 16),
        multiplication_matrix(cosine_q(), Basis.NEUMANN, 16),
        atol=1e-9,
    )


def test_assembly_rejects_bad_method():
    with pytest.raises(ValueError, match="unknown assembly method"):
        multiplication_matrix(cosine_q(), Basis.NEUMANN, 8, method="simpson")
    with pytest.raises(ValueError, match="cosine expansion"):
        multiplication_matrix(PotentialSpec(q=lambda t: 1.0 + 0 * t), Basis.NEUMANN, 8, "identity")


def test_assembled_gram_is_positive_definite():
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=64), CosineSeries([0, 1]))
    gram = assemble_gram(bvp).gram_a.full()
    for n in (1, 8, 32, 64):
        assert np.linalg.eigvalsh(gram[:n, :n]).min() > 0


def test_dirichlet_model_reproduces_counterexample_tail():
    N = 1000
    bvp = BoundaryValueProblem(PotentialSpec.constant(0.0), basis="dirichlet", truncation_order=N)
    problem = assemble_gram(manufacture(bvp, counterexample_coefficients(1.0, N)))
    for n in (10, 100, 500, 999):
        bound = 1.0 / (2.0 * n**2 * math.log(n + 1))
        assert solve(problem, n).energy_error ** 2 <= bound


# ── Error bounds on the cosine-potential problem ────────────────────────────


@pytest.fixture(scope="module")
def smooth_problem():
    bvp = manufacture(
        BoundaryValueProblem(cosine_q(), truncation_order=128), algebraic_solution(4.0, 128)
    )
    return assemble_gram(bvp)


@pytest.mark.parametrize("n", [2, 4, 8, 16, 32])
def test_sandwich_and_apriori_bounds(smooth_problem, n):
    assert sandwich_check(smooth_problem, n).satisfied
    assert apriori_check(smooth_problem, n, alpha=1.0, k=1).satisfied


def test_apriori_decay_on_cosine_potential(smooth_problem):
    decay = apriori_decay(smooth_problem, [2, 4, 8, 16, 32], alpha=1.0)
    assert np.all(np.diff(decay.values[-3:]) < 0)


def test_equivalence_constants_for_cosine_potential(smooth_problem):
    constants = smooth_problem.equivalence
    assert math.isfinite(constants.c1) and math.isfinite(constants.c2)
    assert constants.c3 >= 1.0


# ── Rate experiment ─────────────────────────────────────────────────────────


def test_rate_experiment_reaches_floor_for_polynomial_solution():
    x = CosineSeries([0.0, 1.0, 0.0, 0.0, 0.05])
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=64), x)
    report = rate_experiment(bvp, k=1, n_grid=[2, 3, 4, 6, 8, 16])
    assert report.floor_reached
    assert report.errors[0] > report.floor
    assert report.fit_points == 0 and math.isnan(report.slope)
    assert report.satisfied


def test_rate_experiment_manufactured_solution():
    bvp = manufacture(
        BoundaryValueProblem(cosine_q(), truncation_order=1024), algebraic_solution(6.0, 1024)
    )
    report = rate_experiment(bvp, k=1, n_grid=[4, 8, 16, 24, 32, 48, 64])
    assert report.slope <= -3.0 + 0.3
    assert report.surrogate_decreasing
    assert report.guard_ok
    assert report.satisfied


def test_rate_experiment_bernoulli_rhs():
    bvp = BoundaryValueProblem(
        cosine_q(), truncation_order=1024, rhs_function=bernoulli_rhs, name="bernoulli"
    )
    report = rate_experiment(bvp, k=1, n_grid=[4, 8, 16, 32, 48, 64])
    assert report.slope <= -3.0 + 0.3
    assert report.surrogate_decreasing
    assert report.guard_ok
    assert not report.floor_reached
    assert [row["n"] for row in report.rows()] == [4, 8, 16, 32, 48, 64]


def test_rate_experiment_needs_enough_points():
    bvp = manufacture(BoundaryValueProblem(cosine_q(), truncation_order=64), CosineSeries([0, 1]))
    with pytest.raises(InsufficientDataError, match="insufficient grid"):
        rate_experiment(bvp, k=1, n_grid=[2, 4, 8, 16, 32])


def test_rate_experiment_checks_declared_smoothness():
    bvp = BoundaryValueProblem(
        PotentialSpec(q=lambda t: 2.0 + np.cos(2 * t)),
        truncation_order=64,
        rhs_function=bernoulli_rhs,
    )
    with pytest.raises(HypothesisError):
        rate_experiment(bvp, k=1, n_grid=[2, 4, 8, 16, 24, 32])
