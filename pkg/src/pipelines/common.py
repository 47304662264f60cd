"""Helpers shared by the command pipelines: exit codes, selectors, fan-out, summaries."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from typing import Any

from joblib import Parallel, delayed
from tqdm import tqdm

from src.approximation import ModulusDescriptor, power_modulus
from src.spectral import ScalarSymbol, symbol_from_name
from src.utils.config import ExperimentConfig
from src.utils.errors import ConfigError


# ── Constants ───────────────────────────────────────────────────────────────

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VIOLATION = 2
EXIT_GUARD = 3

INEQUALITY_COLUMNS = ["check", "k", "param", "lhs", "rhs", "slack", "pass"]


# ── Selectors ───────────────────────────────────────────────────────────────


def resolve_symbols(names: Sequence[str] | str) -> list[ScalarSymbol]:
    """Symbols for the config selectors ``one``, ``abs``, ``square``, ``power:<m>``."""
    if isinstance(names, str):
        names = [names]
    if not names:
        raise ConfigError("Symbol list is empty")
    return [symbol_from_name(str(name)) for name in names]


def resolve_modulus(spec: Any) -> ModulusDescriptor:
    """``power:<alpha>`` (or a bare number) → ``omega(t) = t^alpha``."""
    text = str(spec)
    if text.startswith("power:"):
        text = text.split(":", 1)[1]
    try:
        alpha = float(text)
    except ValueError as exc:
        raise ConfigError(f"Unknown modulus selector {spec!r}") from exc
    if not alpha > 0:
        raise ConfigError(f"Modulus exponent must be > 0, got {alpha}")
    return power_modulus(alpha)


# ── Fan-out ─────────────────────────────────────────────────────────────────


def parallel_map(
    func: Callable[..., Any],
    tasks: Sequence[tuple],
    jobs: int,
    desc: str,
) -> list[Any]:
    """``[func(*task) for task in tasks]`` on *jobs* workers, results in task order."""
    progress = tqdm(tasks, desc=desc, unit="task", leave=False)
    if jobs <= 1:
        return [func(*task) for task in progress]
    return Parallel(n_jobs=jobs)(delayed(func)(*task) for task in progress)


# ── Summaries ───────────────────────────────────────────────────────────────


def summarize_reports(rows: Iterable[Mapping[str, Any]]) -> dict[str, Any]:
    """Pass/fail counts and worst slack over ``inequalities.csv`` records."""
    rows = list(rows)
    failed = [row for row in rows if not row["pass"]]
    slacks = [float(row["slack"]) for row in rows]
    by_check: dict[str, dict[str, int]] = {}
    for row in rows:
        counts = by_check.setdefault(row["check"], {"pass_count": 0, "fail_count": 0})
        counts["pass_count" if row["pass"] else "fail_count"] += 1
    return {
        "pass_count": len(rows) - len(failed),
        "fail_count": len(failed),
        "worst_slack": min(slacks) if slacks else None,
        "checks": by_check,
    }


def base_summary(config: ExperimentConfig, run: Mapping[str, Any]) -> dict[str, Any]:
    return {
        "command": config.command,
        "seed": config.seed,
        "run_id": run["run_id"],
        "config_sha256": run["config_sha256"],
    }
