"""
Config snapshot utility.

Copies the experiment config into the output directory so that every set
of tables is accompanied by the exact parameters that produced it.

Usage:
    from src.utils.config_snapshot import snapshot_config

    snapshot_config("configs/ritz_run.yaml", "artifacts/ritz_run")
"""

from __future__ import annotations

import shutil
from pathlib import Path

# ── Constants ───────────────────────────────────────────────────────────────

SNAPSHOT_NAME = "config.yaml"


# ── Public API ──────────────────────────────────────────────────────────────


def snapshot_config(
    config_path: str | Path,
    out_dir: str | Path,
    name: str = SNAPSHOT_NAME,
) -> Path:
    """Copy *config_path* byte-for-byte to ``<out_dir>/<name>``.

    Only the content is copied (no metadata), so two runs from the same
    config leave identical snapshots behind.

    Returns
    -------
    Path
        Location of the snapshot.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dst = out_dir / name
    if Path(config_path).resolve() != dst.resolve():
        shutil.copyfile(config_path, dst)
    return dst
