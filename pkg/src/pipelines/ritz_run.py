"""
Pipeline: Ritz method on a Sturm-Liouville problem.

    1. build problem   → potential, basis, manufactured solution or rhs
    2. assemble        → Gram matrix at truncation N
    3. truncation guard→ ||x_N - x_{N/2}||_+ below 1% of the smallest error,
                         doubling N up to max_truncation
    4. sweep n         → errors, sandwich bounds, a priori bound
    5. rate experiment → optional B-graph-norm rate fit
    6. write           → ritz_errors.csv, rates.json, ritz_errors.plt (+ rates.csv)

Config ``parameters``::

    problem:
      name: cosine-q
      basis: neumann
      potential: {cosine: [2.0, 0.0, 1.0]}     # or {constant: 1.0}
      solution: {kind: algebraic, p: 4.0}      # or {kind: cosine, coefficients: [...]}
      # rhs: bernoulli                         # instead of a solution
    truncation: 512
    max_truncation: 2048
    method: auto
    n_grid: [2, 4, 8, 16, 32]
    alpha: 1.0
    k: 1
    rate: {k: 1, n_grid: [4, 8, 16, 24, 32, 48, 64]}

Usage:
    python -m src.pipelines.ritz_run configs/ritz_run.yaml
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.approximation import InequalityReport
from src.pipelines.common import (
    EXIT_OK,
    EXIT_VIOLATION,
    base_summary,
    parallel_map,
    summarize_reports,
)
from src.ritz import RitzProblem, apriori_rhs, energy_norm, sandwich_check, solve
from src.sturm_liouville import (
    METHODS,
    BoundaryValueProblem,
    CosineSeries,
    PotentialSpec,
    algebraic_solution,
    assemble_gram,
    bernoulli_rhs,
    manufacture,
    rate_experiment,
)
from src.sturm_liouville.rates import MIN_GRID_POINTS
from src.utils.config import ExperimentConfig
from src.utils.errors import ConfigError, TruncationTooSmall
from src.utils.logger import get_logger
from src.utils.results import save_json, write_plot_script, write_table


# ── Constants ───────────────────────────────────────────────────────────────

ERROR_COLUMNS = [
    "n",
    "energy_error",
    "b_energy_error",
    "residual",
    "sandwich_lo",
    "sandwich_hi",
    "apriori_rhs",
]
RATE_COLUMNS = ["n", "graph_error", "scaled_error", "at_floor"]

GUARD_RATIO = 0.01
ERROR_FLOOR_RTOL = 1e-10


# ── Plan ────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class RitzPlan:
    bvp: BoundaryValueProblem
    n_grid: np.ndarray
    alpha: float
    k: int
    max_truncation: int
    method: str
    rate_k: int | None = None
    rate_grid: np.ndarray | None = None


def prepare(config: ExperimentConfig) -> RitzPlan:
    """Build the boundary value problem and validate the sweep.

    Raises
    ------
    ConfigError
        On a bad grid, an unknown potential/solution kind, or parameters
        outside the a priori bound's hypotheses.
    """
    N = int(config.require("truncation"))
    max_truncation = int(config.get("max_truncation", N))
    if max_truncation < N:
        raise ConfigError(f"max_truncation {max_truncation} is below truncation {N}")

    method = str(config.get("method", "auto"))
    if method not in METHODS:
        raise ConfigError(f"Unknown assembly method {method!r}; expected one of {METHODS}")

    n_grid = config.grid("n_grid").astype(int)
    if n_grid[0] < 1 or n_grid[-1] >= N:
        raise ConfigError(f"n_grid must lie in [1, {N - 1}], got {n_grid.tolist()}")

    alpha = float(config.get("alpha", 1.0))
    k = int(config.get("k", 1))
    if alpha < 1 or k < 1:
        raise ConfigError(f"a priori bound needs alpha >= 1 and k >= 1 (got {alpha}, {k})")

    rate_k, rate_grid = None, None
    if "rate" in config.parameters:
        rate = config.section("rate")
        rate_k = int(rate.get("k", 1))
        rate_grid = config.grid("n_grid", rate).astype(int)
        if rate_grid.size < MIN_GRID_POINTS or rate_grid[0] < 1 or rate_grid[-1] >= N:
            raise ConfigError(
                f"rate n_grid needs {MIN_GRID_POINTS} points in [1, {N - 1}], "
                f"got {rate_grid.tolist()}"
            )

    bvp = build_problem(config.section("problem"), N, modes=max_truncation)
    if rate_k is not None and bvp.potential.smoothness_order < rate_k:
        raise ConfigError(
            f"potential is smooth to order {bvp.potential.smoothness_order}, rate needs {rate_k}"
        )
    return RitzPlan(bvp, n_grid, alpha, k, max_truncation, method, rate_k, rate_grid)


def build_problem(
    spec: Mapping[str, Any], N: int, modes: int | None = None
) -> BoundaryValueProblem:
    """Boundary value problem described by the ``problem`` section.

    Algebraic solutions carry *modes* cosine terms (default N) unless the
    section sets ``modes`` itself.
    """
    try:
        bvp = BoundaryValueProblem(
            potential=_potential(spec.get("potential", {"constant": 1.0})),
            basis=spec.get("basis", "neumann"),
            truncation_order=N,
            name=str(spec.get("name", "custom")),
        )
        if "solution" in spec:
            return manufacture(bvp, _solution(spec["solution"], modes or N))
        rhs = spec.get("rhs")
        if rhs == "bernoulli":
            return BoundaryValueProblem(
                bvp.potential, bvp.basis, N, rhs_function=bernoulli_rhs, name=bvp.name
            )
        if isinstance(rhs, Mapping) and "cosine" in rhs:
            series = CosineSeries([float(a) for a in rhs["cosine"]])
            return BoundaryValueProblem(
                bvp.potential, bvp.basis, N, rhs_function=series, name=bvp.name
            )
    except ValueError as exc:
        raise ConfigError(f"Invalid problem: {exc}") from exc
    raise ConfigError("problem needs a 'solution' or an 'rhs' (bernoulli or {cosine: [...]})")


# ── Execute ─────────────────────────────────────────────────────────────────


def execute(plan: RitzPlan, config: ExperimentConfig, run: Mapping[str, Any]) -> int:
    logger = get_logger("ritz_run", run_id=run["run_id"])
    out_dir = run["out_dir"]

    N = plan.bvp.truncation_order
    while True:
        bvp = plan.bvp.with_truncation(N)
        problem = assemble_gram(bvp, plan.method)
        constants = problem.equivalence
        rows = parallel_map(
            _sweep_row,
            [(problem, int(n), plan.alpha, plan.k) for n in plan.n_grid],
            config.jobs,
            f"ritz N={N}",
        )
        guard = problem.truncation_estimate()
        smallest = _smallest_error(problem, [row["energy_error"] for row in rows])
        if guard < GUARD_RATIO * smallest:
            break
        if 2 * N > plan.max_truncation:
            raise TruncationTooSmall(
                f"truncation guard failed at N={N} (estimate {guard:.3e} vs smallest error "
                f"{smallest:.3e}); raise max_truncation above {plan.max_truncation}"
            )
        logger.warning("Truncation guard failed at N={} ({:.3e}); doubling", N, guard)
        N *= 2

    logger.info(
        "Truncation N={} accepted (guard {:.3e}), c1={:.6g} c2={:.6g}",
        N,
        guard,
        constants.c1,
        constants.c2,
    )

    reports = [report for row in rows for report in row.pop("reports")]
    write_table(out_dir / "ritz_errors.csv", rows, ERROR_COLUMNS)
    write_plot_script(
        out_dir / "ritz_errors.plt",
        "ritz_errors.csv",
        "n",
        ["energy_error", "b_energy_error", "sandwich_lo", "sandwich_hi", "apriori_rhs"],
        title=f"Ritz errors ({bvp.name}, N={N})",
        xlabel="n",
        ylabel="error",
    )

    summary = {
        **base_summary(config, run),
        **summarize_reports(report.as_row() for report in reports),
        "problem": bvp.name,
        "truncation": N,
        "equivalence": {"c1": constants.c1, "c2": constants.c2, "c3": constants.c3},
        "slopes": {"energy": _fit_slope(problem, rows)},
        "monotone_energy_error": bool(
            np.all(np.diff([row["energy_error"] for row in rows]) <= 0)
        ),
        "guards": {"energy_truncation_estimate": guard, "energy_guard_ok": True},
    }

    rate_ok = True
    if plan.rate_k is not None:
        report = rate_experiment(bvp, plan.rate_k, plan.rate_grid, problem=problem)
        write_table(out_dir / "rates.csv", report.rows(), RATE_COLUMNS)
        summary["slopes"]["graph"] = report.slope
        summary["rate"] = {
            "k": report.k,
            "target_slope": report.target_slope,
            "slope_ok": report.slope_ok,
            "surrogate_decreasing": report.surrogate_decreasing,
            "floor_reached": report.floor_reached,
        }
        summary["guards"]["graph_truncation_estimate"] = report.truncation_guard
        summary["guards"]["graph_guard_ok"] = report.guard_ok
        rate_ok = report.satisfied
        if report.floor_reached:
            logger.warning("Error floor reached; rate claim holds vacuously beyond it")

    save_json(out_dir / "rates.json", summary)
    logger.info(
        "Wrote {} rows: {} pass, {} fail", len(rows), summary["pass_count"], summary["fail_count"]
    )

    if summary["fail_count"] or not rate_ok:
        for report in reports:
            if not report.satisfied:
                logger.warning("Violation {}: lhs={} rhs={}", report.check, report.lhs, report.rhs)
        return EXIT_VIOLATION
    return EXIT_OK


# ── Private helpers ─────────────────────────────────────────────────────────


def _potential(spec: Any) -> PotentialSpec:
    if isinstance(spec, Mapping) and "constant" in spec:
        return PotentialSpec.constant(float(spec["constant"]))
    if isinstance(spec, Mapping) and "cosine" in spec:
        return PotentialSpec.from_cosine([float(a) for a in spec["cosine"]])
    raise ConfigError(f"Unknown potential {spec!r}; use {{constant: c}} or {{cosine: [...]}}")


def _solution(spec: Any, N: int) -> CosineSeries:
    kind = spec.get("kind") if isinstance(spec, Mapping) else None
    if kind == "algebraic":
        return algebraic_solution(float(spec["p"]), int(spec.get("modes", N)))
    if kind == "cosine":
        return CosineSeries([float(a) for a in spec["coefficients"]])
    raise ConfigError(f"Unknown solution {spec!r}; kind must be 'algebraic' or 'cosine'")


def _sweep_row(problem: RitzProblem, n: int, alpha: float, k: int) -> dict[str, Any]:
    solution = solve(problem, n)
    sandwich = sandwich_check(problem, n)
    rhs = apriori_rhs(problem, n, alpha, k)
    apriori = InequalityReport(
        "apriori", solution.energy_error, rhs, {"k": k, "n": n, "alpha": alpha}
    )
    return {
        "n": n,
        "energy_error": solution.energy_error,
        "b_energy_error": solution.b_energy_error,
        "residual": solution.residual,
        "sandwich_lo": sandwich.lo,
        "sandwich_hi": sandwich.hi,
        "apriori_rhs": rhs,
        "reports": [sandwich.lower, sandwich.upper, apriori],
    }


def _floor(problem: RitzProblem) -> float:
    return ERROR_FLOOR_RTOL * energy_norm(problem, problem.exact_solution.coefficients)


def _smallest_error(problem: RitzProblem, errors: list[float]) -> float:
    above = [e for e in errors if e > _floor(problem)]
    return min(above) if above else float("inf")


def _fit_slope(problem: RitzProblem, rows: list[dict[str, Any]]) -> float:
    """Log-log slope of the energy error over the second half of the sweep."""
    n = np.array([row["n"] for row in rows], dtype=float)
    errors = np.array([row["energy_error"] for row in rows])
    keep = (np.arange(n.size) >= n.size // 2) & (errors > _floor(problem))
    if np.count_nonzero(keep) < 2:
        return float("nan")
    return float(np.polyfit(np.log(n[keep]), np.log(errors[keep]), 1)[0])


if __name__ == "__main__":
    from src.pipelines.cli import command_main

    raise SystemExit(command_main("ritz-run"))
