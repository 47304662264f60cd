"""
Error bounds for the Ritz method.

* :func:`sandwich_check` compares the B-energy error of ``x_n`` with that of
  the truncated Fourier sum ``x~_n``.
* :func:`apriori_check` bounds the A-energy error by the k-modulus of
  ``B^alpha x`` at scale ``pi / lambda_{n+1}``.
* :func:`smoothness_from_rate` goes the other way: from a measured decay of
  the error back to membership ``x in D(B^alpha)``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.approximation import InequalityReport, ModulusDescriptor, power_modulus
from src.ritz.problem import RitzProblem, solve
from src.spectral import apply_function, modulus, power_symbol
from src.utils.errors import HypothesisError, InsufficientDataError
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

MIN_DECAY_POINTS = 8
GROWTH_TOLERANCE = 1.05

logger = get_logger("ritz")


# ── Reports ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SandwichReport:
    """``lo <= mid <= c3 * lo`` as two inequality reports."""

    lower: InequalityReport
    upper: InequalityReport

    @property
    def satisfied(self) -> bool:
        return self.lower.satisfied and self.upper.satisfied

    @property
    def lo(self) -> float:
        return self.lower.lhs

    @property
    def mid(self) -> float:
        return self.lower.rhs

    @property
    def hi(self) -> float:
        return self.upper.rhs


@dataclass(frozen=True)
class DecayReport:
    n: np.ndarray
    values: np.ndarray

    @property
    def strictly_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.values) < 0))


@dataclass(frozen=True)
class SmoothnessReport:
    """Outcome of the rate-to-smoothness test.

    ``ratios[i] = decay[i] * lambda_{n+1}^(alpha-1/2) / omega(1/lambda_{n+1})``;
    the hypothesis holds when the ratios do not grow from the first half of
    the data to the second. Membership is confirmed when in addition the
    partial sums ``sum_{k<=M} lambda_k^(2 alpha) |c_k|^2`` level off: the sum at
    ``M = N`` stays within 5% of the sum at ``M = N/4``.
    """

    alpha: float
    fitted_constant: float
    ratios: np.ndarray
    hypothesis_holds: bool
    partial_sums: dict[int, float]
    growth_ratio: float

    @property
    def bounded(self) -> bool:
        return self.growth_ratio < GROWTH_TOLERANCE

    @property
    def membership_confirmed(self) -> bool:
        return self.hypothesis_holds and self.bounded


# ── Public API ──────────────────────────────────────────────────────────────


def sandwich_check(problem: RitzProblem, n: int) -> SandwichReport:
    """``|||x - x~_n|||_+ <= |||x - x_n|||_+ <= c3 |||x - x~_n|||_+``."""
    if n >= problem.truncation_order:
        raise ValueError(f"n must be < truncation order {problem.truncation_order}, got {n}")

    x = problem.exact_solution.coefficients
    lam = problem.eigenvalues
    lo = float(np.sqrt(np.sum(lam[n:] * np.abs(x[n:]) ** 2)))
    mid = solve(problem, n).b_energy_error
    hi = problem.equivalence.c3 * lo

    context = {"k": "", "n": n, "c3": problem.equivalence.c3}
    return SandwichReport(
        lower=InequalityReport("sandwich_lower", lo, mid, context),
        upper=InequalityReport("sandwich_upper", mid, hi, context),
    )


def apriori_rhs(problem: RitzProblem, n: int, alpha: float, k: int) -> float:
    """Right-hand side of the a priori bound at ``lam = lambda_{n+1}``:

    ``c2 c3 sqrt(k+1) / (2^k lam^(alpha-1/2)) * omega_k(pi/lam, B^alpha x)``.
    """
    if alpha < 1:
        raise HypothesisError(f"a priori bound needs alpha >= 1, got {alpha}")
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")
    if not 1 <= n < problem.truncation_order:
        raise ValueError(f"n must be in [1, {problem.truncation_order - 1}], got {n}")

    lam_next = float(problem.eigenvalues[n])
    constants = problem.equivalence
    smooth = apply_function(power_symbol(alpha), problem.exact_solution)
    scale = math.sqrt(k + 1) / (2.0**k * lam_next ** (alpha - 0.5))
    return constants.c2 * constants.c3 * scale * modulus(k, math.pi / lam_next, smooth)


def apriori_check(problem: RitzProblem, n: int, alpha: float, k: int) -> InequalityReport:
    """Energy error of ``x_n`` against the modulus bound of :func:`apriori_rhs`.

    Raises
    ------
    HypothesisError
        If ``alpha < 1``.
    """
    rhs = apriori_rhs(problem, n, alpha, k)
    lhs = solve(problem, n).energy_error
    return InequalityReport("apriori", lhs, rhs, {"k": k, "n": n, "alpha": float(alpha)})


def apriori_decay(problem: RitzProblem, n_grid: Sequence[int], alpha: float) -> DecayReport:
    """``lambda_{n+1}^(alpha-1/2) ||x - x_n||_+`` along *n_grid*."""
    n_values = np.asarray(n_grid, dtype=int)
    lam_next = problem.eigenvalues[n_values]
    errors = np.array([solve(problem, int(n)).energy_error for n in n_values])
    return DecayReport(n=n_values, values=lam_next ** (alpha - 0.5) * errors)


def smoothness_from_rate(
    problem: RitzProblem,
    n_values: Sequence[int],
    decay: Sequence[float],
    omega: ModulusDescriptor,
    alpha: float,
) -> SmoothnessReport:
    """Test ``||x - x_n||_+ <= c omega(1/lambda_{n+1}) / lambda_{n+1}^(alpha-1/2)``
    and, when it holds, the boundedness of the ``B^alpha`` partial sums.

    Raises
    ------
    InsufficientDataError
        With fewer than 8 decay samples.
    HypothesisError
        If ``alpha <= 1`` or omega is not of modulus type.
    """
    n_values = np.asarray(n_values, dtype=int)
    decay = np.asarray(decay, dtype=float)
    if decay.size < MIN_DECAY_POINTS or n_values.size != decay.size:
        raise InsufficientDataError(
            f"insufficient data: need {MIN_DECAY_POINTS} matching samples, got {decay.size}"
        )
    if alpha <= 1:
        raise HypothesisError(f"smoothness test needs alpha > 1, got {alpha}")
    omega.require()

    lam_next = problem.eigenvalues[n_values]
    ratios = decay * lam_next ** (alpha - 0.5) / omega(1.0 / lam_next)
    half = ratios.size // 2
    hypothesis_holds = bool(np.max(ratios[half:]) <= GROWTH_TOLERANCE * np.max(ratios[:half]))

    N = problem.truncation_order
    weights = problem.eigenvalues ** (2 * alpha) * np.abs(problem.exact_solution.coefficients) ** 2
    cumulative = np.cumsum(weights)
    cutoffs = [N // 4, N // 2, N]
    partial = {M: float(cumulative[M - 1]) for M in cutoffs}
    # partial sums are nondecreasing, so the growth across all cutoffs is last / first
    first, last = partial[cutoffs[0]], partial[cutoffs[-1]]
    growth = last / first if first > 0 else math.inf

    report = SmoothnessReport(
        alpha=float(alpha),
        fitted_constant=float(np.max(ratios)),
        ratios=ratios,
        hypothesis_holds=hypothesis_holds,
        partial_sums=partial,
        growth_ratio=float(growth),
    )
    logger.debug(
        "Smoothness from rate",
        modulus=omega.name,
        alpha=alpha,
        fitted_constant=report.fitted_constant,
        growth_ratio=report.growth_ratio,
        membership=report.membership_confirmed,
    )
    return report


def smoothness_from_power_rate(
    problem: RitzProblem,
    n_values: Sequence[int],
    decay: Sequence[float],
    alpha: float,
    epsilon: float,
) -> SmoothnessReport:
    """Rate ``c / lambda_{n+1}^(alpha + epsilon - 1/2)``, i.e. ``omega(t) = t^epsilon``."""
    return smoothness_from_rate(problem, n_values, decay, power_modulus(epsilon), alpha)
