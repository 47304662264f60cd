"""
Pipeline: a smooth-looking Ritz rate without the matching smoothness.

    1. build        → x_k = 1 / (k^(2 alpha + 1/2) sqrt(ln k)), A = B, lambda_k = k^2
    2. tails        → energy tails against their closed-form bound
    3. partial sums → sum 1/(k ln k) at the cutoffs against ln ln M
    4. write        → counterexample.csv, partial_sums.csv, summary.json, counterexample.plt

Config ``parameters``::

    alpha: 1.0
    truncation: 100000
    n: {start: 1, stop: 99999, num: 64, spacing: log}     # optional
    cutoffs: [1000, 10000, 100000]

Usage:
    python -m src.pipelines.counterexample configs/counterexample.yaml
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.approximation import InequalityReport
from src.pipelines.common import EXIT_OK, EXIT_VIOLATION, base_summary, summarize_reports
from src.ritz import counterexample
from src.ritz.counterexample import DEFAULT_PARTIAL_SUM_CUTOFFS, MIN_TRUNCATION
from src.utils.config import ExperimentConfig
from src.utils.errors import ConfigError
from src.utils.logger import get_logger
from src.utils.results import save_json, write_plot_script, write_table


@dataclass(frozen=True)
class CounterexamplePlan:
    alpha: float
    truncation: int
    n_values: np.ndarray | None
    cutoffs: tuple[int, ...]


def prepare(config: ExperimentConfig) -> CounterexamplePlan:
    alpha = float(config.get("alpha", 1.0))
    N = int(config.get("truncation", 100_000))
    if alpha < 1:
        raise ConfigError(f"counterexample needs alpha >= 1, got {alpha}")
    if N < MIN_TRUNCATION:
        raise ConfigError(f"counterexample needs truncation >= {MIN_TRUNCATION}, got {N}")

    n_values = None
    if "n" in config.parameters:
        n_values = np.unique(config.grid("n").astype(int))
        if n_values[0] < 1 or n_values[-1] >= N:
            raise ConfigError(f"n must lie in [1, {N - 1}], got {n_values[0]}..{n_values[-1]}")

    cutoffs = tuple(int(M) for M in config.get("cutoffs", DEFAULT_PARTIAL_SUM_CUTOFFS))
    if not cutoffs or min(cutoffs) < 3 or list(cutoffs) != sorted(cutoffs):
        raise ConfigError(f"cutoffs must be an increasing list of integers >= 3, got {cutoffs}")
    return CounterexamplePlan(alpha, N, n_values, cutoffs)


def execute(plan: CounterexamplePlan, config: ExperimentConfig, run: Mapping[str, Any]) -> int:
    logger = get_logger("counterexample", run_id=run["run_id"])
    out_dir = run["out_dir"]

    report = counterexample(plan.alpha, plan.truncation, plan.n_values, plan.cutoffs)
    checks = [
        InequalityReport("counterexample_tail", float(tail), float(bound), {"n": int(n)})
        for n, tail, bound in zip(report.n, report.tail, report.tail_bound)
    ]

    write_table(out_dir / "counterexample.csv", report.error_rows(), ["n", "scaled_error"])
    write_table(
        out_dir / "partial_sums.csv",
        report.partial_sum_rows(),
        ["M", "partial_sum", "lnln_M", "ratio"],
    )
    write_plot_script(
        out_dir / "counterexample.plt",
        "counterexample.csv",
        "n",
        ["scaled_error"],
        title=f"lambda_n^(alpha-1/2) ||x - x_n||_+ (alpha={plan.alpha:g})",
        xlabel="n",
        ylabel="scaled error",
        loglog=False,
    )

    summary = {
        **base_summary(config, run),
        **summarize_reports(check.as_row() for check in checks),
        "alpha": plan.alpha,
        "truncation": plan.truncation,
        "bound_respected": report.bound_respected,
        "decays": report.decays,
        "first_scaled_error": float(report.scaled_error[0]),
        "last_scaled_error": float(report.scaled_error[-1]),
        "partial_sum_ratio": [float(r) for r in report.partial_sum_ratio],
    }
    save_json(out_dir / "summary.json", summary)
    logger.info(
        "Scaled error {:.4g} → {:.4g}; sum 1/(k ln k) up to {} = {:.4f}",
        summary["first_scaled_error"],
        summary["last_scaled_error"],
        plan.cutoffs[-1],
        float(report.partial_sums[-1]),
    )

    if not (report.bound_respected and report.decays):
        logger.warning(
            "Counterexample shape broken: bound_respected={}, decays={}",
            report.bound_respected,
            report.decays,
        )
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    from src.pipelines.cli import command_main

    raise SystemExit(command_main("counterexample"))
