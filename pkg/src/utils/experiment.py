"""
Run lifecycle management.

Prepares the output directory of a CLI command, derives the deterministic
run id, snapshots the config and wires logging to ``<out_dir>/run.log``.

Usage:
    from src.utils.experiment import create_run

    run = create_run("ritz-run", "configs/ritz_run.yaml", "artifacts/ritz_run")
    # run = {"run_id": "ritz-run_3fa2b9c1", "out_dir": Path(...), ...}
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from src.utils.config_snapshot import snapshot_config
from src.utils.data_version import compute_file_hash
from src.utils.logger import reset_logging, setup_logging


# ── Constants ───────────────────────────────────────────────────────────────

LOG_FILENAME = "run.log"


# ── Public API ──────────────────────────────────────────────────────────────


def create_run(
    command: str,
    config_path: str | Path,
    out_dir: str | Path,
    log_level: str = "INFO",
) -> dict[str, Any]:
    """Create *out_dir*, snapshot the config and configure logging for one run.

    The run id is ``<command>_<first 8 hex chars of the config sha256>``; it
    contains no timestamp so reruns of one config are indistinguishable.

    Returns
    -------
    dict
        ``run_id``        – deterministic identifier
        ``out_dir``       – :class:`Path` of the created directory
        ``config_sha256`` – full hex digest of the config file
        ``log_file``      – :class:`Path` of ``run.log``
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    config_sha256 = compute_file_hash(config_path)
    run_id = f"{command}_{config_sha256[:8]}"
    snapshot_config(config_path, out_dir)

    log_file = out_dir / LOG_FILENAME
    reset_logging()
    setup_logging(level=log_level, log_file=log_file, run_id=run_id)

    return {
        "run_id": run_id,
        "out_dir": out_dir,
        "config_sha256": config_sha256,
        "log_file": log_file,
    }
