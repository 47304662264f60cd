"""
Pipeline: Bernstein, Jackson and kernel-integral inequality sweeps.

    1. draw corpus   → seeded random vectors on random increasing spectra
    2. sweep         → every (vector, symbol, k, h|r) tuple, optionally in parallel
    3. kernel sweep  → every (theta, k) pair of the kernel grid
    4. write         → inequalities.csv, summary.json

Config ``parameters``::

    corpus:    {size: 1000, truncation: 128, lam_max: 100.0}
    symbols:   [one, abs, square]
    bernstein: {k: [0, 1, 2, 3], h: [0.01, 0.1, 1.0], alpha: [1.0, 10.0]}
    jackson:   {k: [1, 2, 3], r: [1.0, 5.0, 25.0]}
    kernel:    {k: {start: 1, stop: 6, step: 1}, theta: {start: 1.0, stop: 20.0, num: 191}}

Usage:
    python -m src.pipelines.check_inequalities configs/check_inequalities.yaml
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from src.approximation import bernstein_check, jackson_check, kernel_check
from src.pipelines.common import (
    EXIT_OK,
    EXIT_VIOLATION,
    INEQUALITY_COLUMNS,
    base_summary,
    parallel_map,
    resolve_symbols,
    summarize_reports,
)
from src.spectral import ScalarSymbol, SpectralVector, SpectrumModel
from src.utils.config import ExperimentConfig
from src.utils.errors import ConfigError
from src.utils.logger import get_logger
from src.utils.results import save_json, write_table
from src.utils.seed import make_rng, set_global_seed


# ── Constants ───────────────────────────────────────────────────────────────

DEFAULT_CORPUS = {"size": 1000, "truncation": 128, "lam_max": 100.0}
MAX_LISTED_VIOLATIONS = 20


# ── Plan ────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class InequalityPlan:
    corpus: list[SpectralVector]
    symbols: list[ScalarSymbol]
    bernstein: dict[str, np.ndarray] | None
    jackson: dict[str, np.ndarray] | None
    kernel: dict[str, np.ndarray] | None


def prepare(config: ExperimentConfig) -> InequalityPlan:
    """Validate the sweep and draw the corpus.

    Raises
    ------
    ConfigError
        On an empty or unsorted grid, an unknown symbol, or no sweep at all.
    """
    bernstein = _grids(config, "bernstein", ("k", "h", "alpha"))
    jackson = _grids(config, "jackson", ("k", "r"))
    kernel = _grids(config, "kernel", ("k", "theta"))
    if bernstein is None and jackson is None and kernel is None:
        raise ConfigError("check-inequalities needs at least one of bernstein, jackson, kernel")

    corpus: list[SpectralVector] = []
    symbols: list[ScalarSymbol] = []
    if bernstein is not None or jackson is not None:
        symbols = resolve_symbols(config.get("symbols", ["one", "abs", "square"]))
        settings = {**DEFAULT_CORPUS, **config.section("corpus")}
        corpus = draw_corpus(
            config.seed,
            int(settings["size"]),
            int(settings["truncation"]),
            float(settings["lam_max"]),
        )
    return InequalityPlan(corpus, symbols, bernstein, jackson, kernel)


def draw_corpus(seed: int, size: int, truncation: int, lam_max: float) -> list[SpectralVector]:
    """*size* vectors with eigenvalues drawn increasing in ``(0, lam_max]``."""
    if size < 1 or truncation < 1 or not lam_max > 0:
        raise ConfigError(
            f"Corpus needs size, truncation >= 1 and lam_max > 0 "
            f"(got {size}, {truncation}, {lam_max})"
        )
    set_global_seed(seed)
    rng = make_rng(seed)
    corpus = []
    for _ in range(size):
        lam = np.unique(lam_max - rng.uniform(0.0, lam_max, size=truncation))
        weights = 1.0 / np.arange(1, lam.size + 1)
        coefficients = rng.standard_normal(lam.size) + 1j * rng.standard_normal(lam.size)
        coefficients *= weights
        corpus.append(SpectrumModel(lam).vector(coefficients))
    return corpus


# ── Execute ─────────────────────────────────────────────────────────────────


def execute(plan: InequalityPlan, config: ExperimentConfig, run: Mapping[str, Any]) -> int:
    logger = get_logger("check_inequalities", run_id=run["run_id"])
    out_dir = run["out_dir"]
    rows: list[dict[str, Any]] = []

    if plan.corpus:
        tasks = [
            (index, x, plan.symbols, plan.bernstein, plan.jackson)
            for index, x in enumerate(plan.corpus)
        ]
        logger.info("Checking {} vectors × {} symbols", len(plan.corpus), len(plan.symbols))
        for vector_rows in parallel_map(_check_vector, tasks, config.jobs, "corpus"):
            rows.extend(vector_rows)

    if plan.kernel is not None:
        pairs = [(float(theta), int(k)) for k in plan.kernel["k"] for theta in plan.kernel["theta"]]
        logger.info("Kernel sweep over {} (theta, k) pairs", len(pairs))
        rows.extend(parallel_map(_kernel_row, pairs, config.jobs, "kernel"))

    rows.sort(key=lambda row: (row["check"], row["k"], row["param"]))
    write_table(out_dir / "inequalities.csv", rows, INEQUALITY_COLUMNS)

    summary = {**base_summary(config, run), **summarize_reports(rows)}
    save_json(out_dir / "summary.json", summary)
    logger.info(
        "Wrote {} rows: {} pass, {} fail",
        len(rows),
        summary["pass_count"],
        summary["fail_count"],
    )

    if summary["fail_count"]:
        for row in [r for r in rows if not r["pass"]][:MAX_LISTED_VIOLATIONS]:
            logger.warning(
                "Violation {} k={} {}: lhs={} rhs={}",
                row["check"],
                row["k"],
                row["param"],
                row["lhs"],
                row["rhs"],
            )
        return EXIT_VIOLATION
    return EXIT_OK


# ── Private helpers ─────────────────────────────────────────────────────────


def _grids(
    config: ExperimentConfig, name: str, keys: Sequence[str]
) -> dict[str, np.ndarray] | None:
    if name not in config.parameters:
        return None
    section = config.section(name)
    return {key: config.grid(key, section) for key in keys}


def _check_vector(
    index: int,
    x: SpectralVector,
    symbols: list[ScalarSymbol],
    bernstein: dict[str, np.ndarray] | None,
    jackson: dict[str, np.ndarray] | None,
) -> list[dict[str, Any]]:
    rows = []
    for G in symbols:
        if bernstein is not None:
            for alpha in bernstein["alpha"]:
                for k in bernstein["k"]:
                    for h in bernstein["h"]:
                        report = bernstein_check(G, int(k), float(h), float(alpha), x, index)
                        rows.append(report.as_row())
        if jackson is not None:
            for k in jackson["k"]:
                for r in jackson["r"]:
                    rows.append(jackson_check(G, int(k), float(r), x, index).as_row())
    return rows


def _kernel_row(theta: float, k: int) -> dict[str, Any]:
    return kernel_check(theta, k).as_row()


if __name__ == "__main__":
    from src.pipelines.cli import command_main

    raise SystemExit(command_main("check-inequalities"))
