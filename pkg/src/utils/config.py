"""
Experiment configuration loading and validation.

One YAML file describes one experiment::

    command: ritz-run
    seed: 7
    output_dir: artifacts/ritz_run
    jobs: 1
    parameters:
      truncation: 512
      n_grid: [2, 4, 8, 16, 32]
      theta: {start: 1.0, stop: 20.0, step: 1.0}
      t_grid: {start: 0.000244140625, stop: 0.5, num: 45, spacing: log}

Grids are expanded here and must come out nonempty and sorted; anything
else is a :class:`~src.utils.errors.ConfigError`.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from src.utils.errors import ConfigError


# ── Constants ───────────────────────────────────────────────────────────────

COMMANDS = ("check-inequalities", "ritz-run", "counterexample", "inverse-rate")


# ── Config object ───────────────────────────────────────────────────────────


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment config.

    Parameters
    ----------
    command : str
        One of :data:`COMMANDS`.
    seed : int
        Seed for every random corpus of the run.
    output_dir : Path
        Where tables, summaries and the config snapshot are written.
    jobs : int
        Worker count for parallel sweeps (``1`` = serial).
    parameters : mapping
        Command-specific parameter record.
    source : Path, optional
        File the config was read from.
    """

    command: str
    seed: int
    output_dir: Path
    jobs: int = 1
    parameters: Mapping[str, Any] = field(default_factory=dict)
    source: Path | None = None

    # -- accessors --------------------------------------------------------

    def get(self, name: str, default: Any = None) -> Any:
        return self.parameters.get(name, default)

    def require(self, name: str) -> Any:
        """Return parameter *name* or raise :class:`ConfigError`."""
        if name not in self.parameters:
            raise ConfigError(f"Missing parameter '{name}' for command '{self.command}'")
        return self.parameters[name]

    def section(self, name: str) -> Mapping[str, Any]:
        """Return the nested mapping *name* (empty when absent)."""
        value = self.parameters.get(name, {})
        if not isinstance(value, Mapping):
            raise ConfigError(f"Parameter '{name}' must be a mapping, got {type(value).__name__}")
        return value

    def grid(self, name: str, section: Mapping[str, Any] | None = None) -> np.ndarray:
        """Expand and validate the grid stored under *name*."""
        source = self.parameters if section is None else section
        if name not in source:
            raise ConfigError(f"Missing grid '{name}' for command '{self.command}'")
        return expand_grid(source[name], name=name)

    def with_overrides(self, output_dir: str | Path | None = None, jobs: int | None = None):
        """Return a copy with the CLI ``--out`` / ``--jobs`` overrides applied."""
        changes: dict[str, Any] = {}
        if output_dir is not None:
            changes["output_dir"] = Path(output_dir)
        if jobs is not None:
            if jobs < 1:
                raise ConfigError(f"--jobs must be >= 1, got {jobs}")
            changes["jobs"] = int(jobs)
        return replace(self, **changes)


# ── Public API ──────────────────────────────────────────────────────────────


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """Read and validate an experiment config.

    Raises
    ------
    ConfigError
        If the file is missing or malformed, names an unknown command, or
        lacks ``seed`` / ``output_dir``.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")

    try:
        with open(path, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"Config {path} is not valid YAML: {exc}") from exc

    if not isinstance(raw, Mapping):
        raise ConfigError(f"Config {path} must be a mapping at top level")

    command = raw.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"Unknown command {command!r}; expected one of {COMMANDS}")

    for key in ("seed", "output_dir"):
        if key not in raw:
            raise ConfigError(f"Config {path} lacks required key '{key}'")

    parameters = raw.get("parameters") or {}
    if not isinstance(parameters, Mapping):
        raise ConfigError("'parameters' must be a mapping")

    jobs = int(raw.get("jobs", 1))
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs}")

    return ExperimentConfig(
        command=command,
        seed=int(raw["seed"]),
        output_dir=Path(raw["output_dir"]),
        jobs=jobs,
        parameters=dict(parameters),
        source=path,
    )


def expand_grid(spec: Any, name: str = "grid") -> np.ndarray:
    """Expand a grid spec into a sorted, nonempty 1-D array.

    Accepted forms: a scalar, a list, ``{start, stop, step}`` (inclusive
    stop) or ``{start, stop, num, spacing}`` with ``spacing`` ``linear`` or
    ``log``. Integer-valued lists stay integer.
    """
    if isinstance(spec, Mapping):
        values = _expand_mapping(spec, name)
    elif isinstance(spec, (list, tuple)):
        values = np.asarray(spec)
    elif isinstance(spec, (int, float)):
        values = np.asarray([spec])
    else:
        raise ConfigError(f"Grid '{name}' has unsupported form: {spec!r}")

    if values.size == 0:
        raise ConfigError(f"Grid '{name}' is empty")
    if not np.issubdtype(values.dtype, np.number):
        raise ConfigError(f"Grid '{name}' must be numeric")
    if np.any(np.diff(values) <= 0):
        raise ConfigError(f"Grid '{name}' must be strictly increasing: {values.tolist()}")
    return values


# ── Private helpers ─────────────────────────────────────────────────────────


def _expand_mapping(spec: Mapping[str, Any], name: str) -> np.ndarray:
    try:
        start = float(spec["start"])
        stop = float(spec["stop"])
    except KeyError as exc:
        raise ConfigError(f"Grid '{name}' needs 'start' and 'stop'") from exc

    if stop < start:
        raise ConfigError(f"Grid '{name}' has stop < start ({stop} < {start})")

    if "step" in spec:
        step = float(spec["step"])
        if step <= 0:
            raise ConfigError(f"Grid '{name}' step must be positive")
        count = int(round((stop - start) / step)) + 1
        values = start + step * np.arange(count)
        if float(start).is_integer() and float(step).is_integer():
            values = values.astype(int)
        return values

    num = int(spec.get("num", 0))
    if num < 1:
        raise ConfigError(f"Grid '{name}' needs 'step' or a positive 'num'")
    spacing = spec.get("spacing", "linear")
    if spacing == "log":
        if start <= 0:
            raise ConfigError(f"Log grid '{name}' needs start > 0")
        return np.geomspace(start, stop, num)
    if spacing == "linear":
        return np.linspace(start, stop, num)
    raise ConfigError(f"Grid '{name}' has unknown spacing {spacing!r}")
