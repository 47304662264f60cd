"""Tests for the Ritz solver, its error bounds and the counterexample."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.approximation import power_modulus
from src.ritz import (
    DenseGram,
    GramProvider,
    RitzProblem,
    apriori_check,
    apriori_decay,
    counterexample,
    counterexample_problem,
    energy_functional,
    energy_norm,
    equivalence_constants,
    sandwich_check,
    smoothness_from_power_rate,
    smoothness_from_rate,
    solve,
)
from src.spectral import SpectrumModel, apply_function, best_approx, power_symbol
from src.utils.errors import GramNotPositiveDefinite, HypothesisError, InsufficientDataError


def manufactured_problem(gram: np.ndarray, lam: np.ndarray, x: np.ndarray) -> RitzProblem:
    spectrum = SpectrumModel(lam)
    return RitzProblem(
        b_spectrum=spectrum,
        gram_a=DenseGram(gram),
        rhs=spectrum.vector(gram @ x),
        exact=spectrum.vector(x),
    )


def diagonal_problem(N: int, x_power: float) -> RitzProblem:
    k = np.arange(1, N + 1, dtype=float)
    lam = k**2
    return manufactured_problem(np.diag(lam), lam, k**-x_power)


@pytest.fixture
def coupled_problem(rng) -> RitzProblem:
    """A = B + a dense positive semidefinite perturbation, lambda_k = k^2, x_k = k^-3."""
    N = 48
    k = np.arange(1, N + 1, dtype=float)
    lam = k**2
    m = rng.standard_normal((N, N))
    gram = np.diag(lam) + 0.5 * (m @ m.T) / N
    gram = 0.5 * (gram + gram.T)
    return manufactured_problem(gram, lam, k**-3)


# ── Gram providers and problem validation ───────────────────────────────────


def test_dense_gram_is_a_gram_provider():
    gram = DenseGram.diagonal([1.0, 2.0, 3.0])
    assert isinstance(gram, GramProvider)
    assert gram.size == 3
    np.testing.assert_array_equal(gram.block(2), np.diag([1.0, 2.0]))


def test_dense_gram_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        DenseGram([[1.0, 2.0], [0.0, 1.0]])


def test_problem_rejects_inconsistent_exact_solution():
    spectrum = SpectrumModel([1.0, 2.0])
    with pytest.raises(ValueError, match="does not satisfy"):
        RitzProblem(
            spectrum,
            DenseGram.diagonal([1.0, 2.0]),
            spectrum.vector([1.0, 1.0]),
            exact=spectrum.vector([1.0, 1.0]),
        )


def test_problem_requires_positive_reference_operator():
    spectrum = SpectrumModel([-1.0, 2.0])
    with pytest.raises(HypothesisError):
        RitzProblem(spectrum, DenseGram.diagonal([1.0, 2.0]), spectrum.vector([1.0, 1.0]))


# ── Solver ──────────────────────────────────────────────────────────────────


def test_diagonal_example():
    spectrum = SpectrumModel([1.0, 2.0, 3.0])
    problem = RitzProblem(spectrum, DenseGram.diagonal([1.0, 2.0, 3.0]), spectrum.vector([1, 1, 1]))
    np.testing.assert_allclose(problem.exact_solution.coefficients, [1.0, 0.5, 1.0 / 3.0])

    solution = solve(problem, 2)
    np.testing.assert_allclose(solution.approximation.coefficients, [1.0, 0.5, 0.0])
    assert solution.b_energy_error == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-14)


def test_solution_in_trial_space_is_reproduced(rng):
    N = 32
    lam = np.arange(1, N + 1, dtype=float) ** 2
    m = rng.standard_normal((N, N))
    gram = np.diag(lam) + (m @ m.T) / N
    gram = 0.5 * (gram + gram.T)
    x = np.zeros(N)
    x[:4] = [1.0, -0.5, 0.25, 0.125]
    problem = manufactured_problem(gram, lam, x)
    assert solve(problem, 4).energy_error <= 1e-10


def test_solve_minimises_energy_functional(coupled_problem, rng):
    for n in (3, 10, 25):
        solution = solve(coupled_problem, n)
        best = energy_functional(coupled_problem, solution.approximation)
        x = coupled_problem.exact_solution.coefficients
        for _ in range(100):
            z = np.zeros(coupled_problem.truncation_order, dtype=complex)
            z[:n] = solution.coefficients + 0.1 * rng.standard_normal(n)
            assert best <= energy_functional(coupled_problem, z) + 1e-12 * abs(best)
            assert solution.energy_error <= energy_norm(coupled_problem, x - z) * (1 + 1e-12)


def test_galerkin_orthogonality(coupled_problem):
    for n in (1, 5, 20, 47):
        assert solve(coupled_problem, n).galerkin_defect <= 1e-9


def test_energy_error_is_nonincreasing(coupled_problem):
    errors = [solve(coupled_problem, n).energy_error for n in range(1, 48)]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(errors, errors[1:]))


def test_residual_decreases_on_smooth_problem(coupled_problem):
    residuals = [solve(coupled_problem, n).residual for n in (2, 8, 32)]
    assert residuals[2] < residuals[0]


def test_indefinite_gram_block_is_reported():
    spectrum = SpectrumModel([1.0, 2.0])
    problem = RitzProblem(spectrum, DenseGram(np.diag([1.0, -1.0])), spectrum.vector([1.0, 1.0]))
    with pytest.raises(GramNotPositiveDefinite, match="Gram block not positive definite"):
        solve(problem, 2)


def test_truncation_estimate_is_half_order_error(coupled_problem):
    expected = solve(coupled_problem, 24).energy_error
    assert coupled_problem.truncation_estimate() == pytest.approx(expected, rel=1e-8)


# ── Equivalence constants ───────────────────────────────────────────────────


def test_equivalence_constants_identical_forms():
    constants = equivalence_constants(diagonal_problem(16, 3.0))
    assert constants.c1 == pytest.approx(1.0, rel=1e-10)
    assert constants.c2 == pytest.approx(1.0, rel=1e-10)


def test_equivalence_constants_scaled_form():
    lam = np.arange(1, 17, dtype=float) ** 2
    problem = manufactured_problem(2.0 * np.diag(lam), lam, 1.0 / lam)
    constants = equivalence_constants(problem)
    assert constants.c1 == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-10)
    assert constants.c2 == pytest.approx(math.sqrt(2.0), rel=1e-10)
    assert constants.c3 == pytest.approx(1.0, rel=1e-10)


def test_norm_equivalence_on_random_vectors(coupled_problem, rng):
    c1, c2 = equivalence_constants(coupled_problem)
    assert c1 * c2 >= 1.0 - 1e-12
    lam = coupled_problem.eigenvalues
    for _ in range(100):
        z = rng.standard_normal(lam.size) + 1j * rng.standard_normal(lam.size)
        b_energy = math.sqrt(float(np.sum(lam * np.abs(z) ** 2)))
        a_energy = energy_norm(coupled_problem, z)
        assert b_energy / c1 <= a_energy * (1 + 1e-10)
        assert a_energy <= c2 * b_energy * (1 + 1e-10)


# ── Error bounds ────────────────────────────────────────────────────────────


def test_sandwich_collapses_for_identical_forms():
    problem = diagonal_problem(32, 3.0)
    report = sandwich_check(problem, 8)
    assert report.lo == pytest.approx(report.mid, rel=1e-12)
    assert report.hi == pytest.approx(report.mid, rel=1e-9)
    assert report.satisfied


@pytest.mark.parametrize("n", [4, 8, 16])
def test_sandwich_holds_for_coupled_problem(coupled_problem, n):
    report = sandwich_check(coupled_problem, n)
    assert report.satisfied
    assert report.lower.slack >= 0 and report.upper.slack >= 0


def test_sandwich_lower_term_is_best_approximation(coupled_problem):
    n = 8
    root = apply_function(power_symbol(0.5), coupled_problem.exact_solution)
    expected = best_approx(float(coupled_problem.eigenvalues[n - 1]), root)
    assert sandwich_check(coupled_problem, n).lo == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("n", [2, 4, 8])
def test_apriori_bound_holds(coupled_problem, n):
    report = apriori_check(coupled_problem, n, alpha=1.0, k=1)
    assert report.satisfied, report


def test_apriori_bound_trivial_in_trial_space():
    lam = np.arange(1, 17, dtype=float) ** 2
    x = np.zeros(16)
    x[:3] = [1.0, 0.5, 0.25]
    report = apriori_check(manufactured_problem(np.diag(lam), lam, x), 3, alpha=1.0, k=2)
    assert report.lhs <= 1e-12
    assert report.satisfied


def test_apriori_rejects_small_alpha(coupled_problem):
    with pytest.raises(HypothesisError):
        apriori_check(coupled_problem, 4, alpha=0.5, k=1)


def test_apriori_decay_tends_to_zero():
    decay = apriori_decay(diagonal_problem(256, 4.0), [2, 4, 8, 16, 32, 64], alpha=1.0)
    assert decay.strictly_decreasing
    assert decay.values[-1] < 1e-2 * decay.values[0]


# ── Counterexample ──────────────────────────────────────────────────────────


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0])
def test_counterexample_tail_bound(alpha):
    report = counterexample(alpha, 2000)
    assert report.bound_respected
    assert np.all(report.scaled_error <= report.scaled_bound * (1 + 1e-10))


def test_counterexample_tail_bound_shape_for_alpha_one():
    report = counterexample(1.0, 1000, n_values=[10, 100])
    n = np.array([10.0, 100.0])
    np.testing.assert_allclose(report.tail_bound, 1.0 / (2 * n**2 * np.log(n + 1)))


def test_counterexample_scaled_error_decays():
    report = counterexample(1.0, 2000, n_values=[10, 1000])
    assert report.scaled_error[1] < report.scaled_error[0]
    assert report.decays


def test_counterexample_partial_sums_follow_lnln():
    report = counterexample(1.5, 1000, cutoffs=[1_000, 10_000, 100_000])
    increment = report.partial_sums[2] - report.partial_sums[1]
    assert increment == pytest.approx(math.log(math.log(1e5) / math.log(1e4)), abs=1e-4)
    assert np.all(report.partial_sum_ratio > 1.0)
    assert np.all(np.diff(report.partial_sum_ratio) < 0)


def test_counterexample_tail_matches_ritz_error():
    alpha, N, n = 1.0, 1000, 50
    problem = counterexample_problem(alpha, N)
    report = counterexample(alpha, N, n_values=[n])
    beyond = 1.0 / ((4 * alpha - 2) * N ** (4 * alpha - 2) * math.log(N))
    assert solve(problem, n).energy_error ** 2 == pytest.approx(report.tail[0] - beyond, rel=1e-9)


def test_counterexample_rejects_small_truncation():
    with pytest.raises(ValueError):
        counterexample(1.5, 100)


# ── Smoothness from rate ────────────────────────────────────────────────────

DECAY_GRID = [4, 8, 16, 32, 64, 128, 192, 256]


def measured_decay(problem: RitzProblem) -> np.ndarray:
    return np.array([solve(problem, n).energy_error for n in DECAY_GRID])


def test_smoothness_confirmed_for_fast_decay():
    alpha = 1.5
    problem = diagonal_problem(1024, 2 * (alpha + 1))
    report = smoothness_from_rate(
        problem, DECAY_GRID, measured_decay(problem), power_modulus(0.5), alpha
    )
    assert report.hypothesis_holds
    assert report.bounded
    assert report.membership_confirmed
    assert sorted(report.partial_sums) == [256, 512, 1024]


def test_smoothness_corollary_form():
    alpha = 1.5
    problem = diagonal_problem(1024, 2 * (alpha + 1))
    report = smoothness_from_power_rate(problem, DECAY_GRID, measured_decay(problem), alpha, 0.5)
    assert report.membership_confirmed
    assert math.isfinite(report.fitted_constant)


def test_smoothness_rejects_counterexample():
    alpha = 1.5
    problem = counterexample_problem(alpha, 2048)
    report = smoothness_from_power_rate(problem, DECAY_GRID, measured_decay(problem), alpha, 0.5)
    assert not report.bounded
    assert not report.membership_confirmed


def test_smoothness_needs_enough_samples():
    problem = diagonal_problem(64, 5.0)
    decay = [solve(problem, n).energy_error for n in range(1, 8)]
    with pytest.raises(InsufficientDataError, match="insufficient data"):
        smoothness_from_rate(problem, range(1, 8), decay, power_modulus(0.5), 1.5)
