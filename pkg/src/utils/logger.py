"""
Structured logging bound to a run identifier.

Library modules grab a logger at import time with ``get_logger("<area>")``;
the CLI later installs the console and ``run.log`` sinks for one run, and
every record carries ``run_id`` and ``module_name`` from then on.

Usage:
    from src.utils.logger import get_logger

    logger = get_logger("ritz", run_id="ritz-run_3fa2b9c1")
    logger.debug("Solved Ritz system", n=16, energy_error=1.2e-7)
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Any

from loguru import logger as _loguru_logger


# ── Constants ───────────────────────────────────────────────────────────────

_FALLBACK_RUN_ID = "interactive"
_FALLBACK_LEVEL = "WARNING"

_CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> "
    "<level>{level: <7}</level> "
    "[<cyan>{extra[run_id]}</cyan>/<cyan>{extra[module_name]}</cyan>] "
    "<level>{message}</level> {extra}"
)

# run.log is excluded from output hashing, so timestamps are fine here
_FILE_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} {level: <7} "
    "{extra[module_name]}.{function}:{line} {message} {extra}"
)


# ── Module-level state ──────────────────────────────────────────────────────

_handler_ids: list[int] = []


# ── Public API ──────────────────────────────────────────────────────────────


def setup_logging(
    level: str = "INFO",
    log_file: str | Path | None = None,
    run_id: str | None = None,
) -> None:
    """Install the console sink and, optionally, a ``run.log`` sink.

    Does nothing when sinks are already installed; call :func:`reset_logging`
    first to switch to another run.

    Parameters
    ----------
    level : str
        Console level. The file sink always records ``DEBUG``.
    log_file : str | Path, optional
        Log file written next to the run's outputs (truncated on open).
    run_id : str, optional
        Default ``run_id`` for records whose logger did not bind one.
    """
    if _handler_ids:
        return

    _loguru_logger.remove()
    _loguru_logger.configure(extra={"run_id": run_id or _FALLBACK_RUN_ID, "module_name": "root"})
    _handler_ids.append(_loguru_logger.add(sys.stderr, level=level.upper(), format=_CONSOLE_FORMAT))

    if log_file is not None:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        _handler_ids.append(
            _loguru_logger.add(
                str(path), level="DEBUG", format=_FILE_FORMAT, mode="w", encoding="utf-8"
            )
        )


def get_logger(module_name: str, run_id: str | None = None) -> Any:
    """Logger bound to *module_name*; *run_id* pins the id for this logger only.

    Without *run_id* the id comes from whatever run is configured when a
    record is emitted, so module-level loggers follow the active run.
    """
    if not _handler_ids:
        setup_logging(level=_FALLBACK_LEVEL)

    if run_id is None:
        return _loguru_logger.bind(module_name=module_name)
    return _loguru_logger.bind(module_name=module_name, run_id=run_id)


def reset_logging() -> None:
    """Remove every sink installed by :func:`setup_logging`."""
    while _handler_ids:
        _loguru_logger.remove(_handler_ids.pop())
