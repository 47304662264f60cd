"""
Convergence-rate experiment for the Ritz method on a Sturm-Liouville problem.

Errors are measured in the B-graph norm ``||B z|| = (sum lambda_k^2 |c_k|^2)^1/2``,
which is equivalent to the ``W_2^2`` norm in the Neumann basis. For data of
smoothness order k the error is ``o(n^-(2k+1))``; the experiment fits the
log-log slope over the second half of the grid and checks that
``n^(2k+1) e_n`` decreases there.

Usage:
    from src.sturm_liouville.rates import rate_experiment

    report = rate_experiment(bvp, k=1, n_grid=[4, 8, 16, 32, 48, 64])
    report.slope, report.satisfied
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.ritz import RitzProblem, solve
from src.spectral import b_norm
from src.sturm_liouville.assembly import assemble_gram
from src.sturm_liouville.problem import BoundaryValueProblem
from src.utils.errors import HypothesisError, InsufficientDataError
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

MIN_GRID_POINTS = 6
FLOOR_RTOL = 1e-9
SLOPE_TOLERANCE = 0.3
GUARD_RATIO = 0.01

logger = get_logger("sturm_liouville")


# ── Report ──────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class RateReport:
    """Errors ``e_n = ||B(x - x_n)||`` along the grid and their fitted rate.

    ``slope`` is NaN when fewer than two points of the fitting window lie
    above the floor; the rate claim is then vacuous.
    """

    k: int
    truncation: int
    n: np.ndarray
    errors: np.ndarray
    scaled: np.ndarray
    floor: float
    at_floor: np.ndarray
    slope: float
    fit_points: int
    surrogate_decreasing: bool
    truncation_guard: float

    @property
    def target_slope(self) -> float:
        return -(2.0 * self.k + 1.0)

    @property
    def floor_reached(self) -> bool:
        return bool(np.any(self.at_floor))

    @property
    def slope_ok(self) -> bool:
        if self.fit_points < 2:
            return True
        return bool(self.slope <= self.target_slope + SLOPE_TOLERANCE)

    @property
    def smallest_error(self) -> float:
        above = self.errors[~self.at_floor]
        return float(np.min(above)) if above.size else math.inf

    @property
    def guard_ok(self) -> bool:
        return self.truncation_guard < GUARD_RATIO * self.smallest_error

    @property
    def satisfied(self) -> bool:
        return self.slope_ok and self.surrogate_decreasing

    def rows(self) -> list[dict]:
        return [
            {"n": int(n), "graph_error": float(e), "scaled_error": float(s), "at_floor": bool(f)}
            for n, e, s, f in zip(self.n, self.errors, self.scaled, self.at_floor)
        ]


# ── Public API ──────────────────────────────────────────────────────────────


def graph_error(problem: RitzProblem, n: int) -> float:
    """``||B(x - x_n)||`` on the coefficients."""
    solution = solve(problem, n)
    return b_norm(problem.exact_solution - solution.approximation, power=1.0)


def truncation_guard(problem: RitzProblem) -> float:
    """``||B(x_N - x_{N/2})||``."""
    half = solve(problem, max(problem.truncation_order // 2, 1))
    return b_norm(problem.full_solution - half.approximation, power=1.0)


def rate_experiment(
    bvp: BoundaryValueProblem,
    k: int,
    n_grid: Sequence[int],
    problem: RitzProblem | None = None,
) -> RateReport:
    """Run the Ritz method along *n_grid* and fit the convergence rate.

    Parameters
    ----------
    bvp : BoundaryValueProblem
        Problem with either an exact solution or a right-hand side.
    k : int
        Smoothness order of the data; the target rate is ``n^-(2k+1)``.
    n_grid : sequence of int
        Strictly increasing subspace dimensions below the truncation order.
    problem : RitzProblem, optional
        Pre-assembled system for *bvp*.

    Raises
    ------
    InsufficientDataError
        With fewer than 6 grid points.
    HypothesisError
        If the potential is declared less smooth than order k.
    """
    n = np.asarray(n_grid, dtype=int)
    if n.size < MIN_GRID_POINTS:
        raise InsufficientDataError(
            f"insufficient grid: need {MIN_GRID_POINTS} points, got {n.size}"
        )
    if np.any(np.diff(n) <= 0) or n[0] < 1 or n[-1] >= bvp.truncation_order:
        raise ValueError(
            f"n_grid must increase strictly within [1, {bvp.truncation_order - 1}]"
        )
    if k < 1:
        raise ValueError(f"smoothness order must be >= 1, got {k}")
    if bvp.potential.smoothness_order < k:
        raise HypothesisError(
            f"potential declared smooth to order {bvp.potential.smoothness_order}, need {k}"
        )

    problem = problem if problem is not None else assemble_gram(bvp)
    errors = np.array([graph_error(problem, int(m)) for m in n])
    scaled = n.astype(float) ** (2 * k + 1) * errors

    floor = FLOOR_RTOL * b_norm(problem.exact_solution, power=1.0)
    at_floor = errors <= floor

    window = np.arange(n.size) >= n.size // 2
    fit = window & ~at_floor
    slope = math.nan
    if np.count_nonzero(fit) >= 2:
        slope = float(np.polyfit(np.log(n[fit]), np.log(errors[fit]), 1)[0])
    surrogate = bool(np.all(np.diff(scaled[fit]) < 0)) if np.count_nonzero(fit) >= 2 else True

    report = RateReport(
        k=k,
        truncation=bvp.truncation_order,
        n=n,
        errors=errors,
        scaled=scaled,
        floor=float(floor),
        at_floor=at_floor,
        slope=slope,
        fit_points=int(np.count_nonzero(fit)),
        surrogate_decreasing=surrogate,
        truncation_guard=truncation_guard(problem),
    )
    if report.floor_reached:
        logger.debug("Error floor reached", name=bvp.name, floor=report.floor)
    logger.debug(
        "Rate experiment",
        name=bvp.name,
        k=k,
        N=report.truncation,
        slope=report.slope,
        surrogate_decreasing=report.surrogate_decreasing,
        guard_ok=report.guard_ok,
    )
    return report
