"""
Pipeline: inverse-theorem experiment on prescribed-decay vectors.

    1. resolve  → moduli omega(t) = t^alpha, the symbol G, the t grid
    2. run      → fitted m_k at N and 2N per modulus, optionally in parallel
    3. write    → inverse_rate.csv, summary.json, inverse_rate.plt

A fitted constant that moves by more than 20% between N and 2N is reported
as unstable (exit code 2).

Config ``parameters``::

    moduli: ["power:0.5", "power:1.0", "power:1.5", "power:2.0"]
    symbol: one
    k: 1
    truncation: 4096
    t_grid: {start: 0.000244140625, stop: 0.5, num: 45, spacing: log}   # optional

Usage:
    python -m src.pipelines.inverse_rate configs/inverse_rate.yaml
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.approximation import StabilityReport, inverse_stability
from src.pipelines.common import (
    EXIT_OK,
    EXIT_VIOLATION,
    base_summary,
    parallel_map,
    resolve_modulus,
    resolve_symbols,
)
from src.utils.config import ExperimentConfig
from src.utils.errors import ConfigError
from src.utils.logger import get_logger
from src.utils.results import save_json, write_plot_script, write_table


# ── Constants ───────────────────────────────────────────────────────────────

RATE_COLUMNS = ["alpha", "N", "t", "omega_k", "envelope", "ratio", "regime_ratio"]
DEFAULT_MODULI = ("power:0.5", "power:1.0", "power:1.5", "power:2.0")


# ── Plan ────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class InversePlan:
    moduli: tuple[str, ...]
    symbol: str
    k: int
    truncation: int
    t_grid: np.ndarray | None


def prepare(config: ExperimentConfig) -> InversePlan:
    """Resolve the selectors up front so a typo fails before any output exists."""
    moduli = config.get("moduli", list(DEFAULT_MODULI))
    if isinstance(moduli, (str, int, float)):
        moduli = [moduli]
    if not moduli:
        raise ConfigError("moduli list is empty")
    for spec in moduli:
        resolve_modulus(spec).require()

    symbol = str(config.get("symbol", "one"))
    resolve_symbols(symbol)

    k = int(config.get("k", 1))
    if k < 1:
        raise ConfigError(f"order k must be >= 1, got {k}")

    t_grid = None
    if "t_grid" in config.parameters:
        t_grid = config.grid("t_grid").astype(float)
        if t_grid[0] <= 0:
            raise ConfigError("t_grid must be positive")

    N = int(config.get("truncation", 4096))
    return InversePlan(tuple(str(m) for m in moduli), symbol, k, N, t_grid)


# ── Execute ─────────────────────────────────────────────────────────────────


def execute(plan: InversePlan, config: ExperimentConfig, run: Mapping[str, Any]) -> int:
    logger = get_logger("inverse_rate", run_id=run["run_id"])
    out_dir = run["out_dir"]

    tasks = [(spec, plan.symbol, plan.k, plan.truncation, plan.t_grid) for spec in plan.moduli]
    reports: list[StabilityReport] = parallel_map(_stability, tasks, config.jobs, "moduli")

    rows = [
        row
        for report in reports
        for experiment in (report.first, report.second)
        for row in experiment.rows()
    ]
    rows.sort(key=lambda row: (row["alpha"], row["N"], row["t"]))
    write_table(out_dir / "inverse_rate.csv", rows, RATE_COLUMNS)
    write_plot_script(
        out_dir / "inverse_rate.plt",
        "inverse_rate.csv",
        "t",
        ["omega_k", "envelope"],
        title=f"omega_{plan.k}(t, G(B)x) against the inverse-theorem envelope",
        xlabel="t",
        ylabel="modulus",
    )

    fits = []
    for spec, report in zip(plan.moduli, reports):
        fits.append(
            {
                "modulus": report.first.modulus_name,
                "alpha": report.first.alpha,
                "regime": report.first.regime,
                "fitted_constant": {
                    str(report.first.truncation): report.first.fitted_constant,
                    str(report.second.truncation): report.second.fitted_constant,
                },
                "relative_change": report.relative_change,
                "stable": report.stable,
            }
        )
        logger.info(
            "{}: m_k={:.4g} (N={}) → {:.4g} (N={}), change {:.1%}",
            spec,
            report.first.fitted_constant,
            report.first.truncation,
            report.second.fitted_constant,
            report.second.truncation,
            report.relative_change,
        )

    unstable = [fit["modulus"] for fit in fits if not fit["stable"]]
    summary = {
        **base_summary(config, run),
        "symbol": plan.symbol,
        "k": plan.k,
        "truncation": plan.truncation,
        "moduli": fits,
        "pass_count": len(fits) - len(unstable),
        "fail_count": len(unstable),
    }
    save_json(out_dir / "summary.json", summary)

    if unstable:
        logger.warning("Fitted constant unstable between N and 2N for {}", ", ".join(unstable))
        return EXIT_VIOLATION
    return EXIT_OK


# ── Private helpers ─────────────────────────────────────────────────────────


def _stability(
    spec: str, symbol: str, k: int, N: int, t_grid: np.ndarray | None
) -> StabilityReport:
    omega = resolve_modulus(spec)
    (G,) = resolve_symbols(symbol)
    return inverse_stability(omega, G, k, N, t_grid)


if __name__ == "__main__":
    from src.pipelines.cli import command_main

    raise SystemExit(command_main("inverse-rate"))
