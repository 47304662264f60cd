"""
Content fingerprints for configs and result directories.

A config's SHA-256 goes into every summary JSON (``config_sha256``) and
feeds the run id; the directory digest is how two runs of the same command
are compared for byte-identical output.

Usage:
    from src.utils.data_version import compute_file_hash, compute_directory_hash

    compute_file_hash("configs/ritz_run.yaml")
    compute_directory_hash("artifacts/ritz_run", glob_pattern="*.csv")
"""

from __future__ import annotations

import hashlib
from pathlib import Path


# ── Constants ───────────────────────────────────────────────────────────────

_CHUNK_SIZE = 1024 * 1024  # 1 MiB read chunks


# ── Public API ──────────────────────────────────────────────────────────────


def compute_file_hash(filepath: str | Path, algorithm: str = "sha256") -> str:
    """Hex digest of a single file's bytes.

    Parameters
    ----------
    filepath : str | Path
        File to hash.
    algorithm : str
        Any algorithm accepted by :func:`hashlib.new`.
    """
    hasher = hashlib.new(algorithm)
    with open(filepath, "rb") as fh:
        for chunk in iter(lambda: fh.read(_CHUNK_SIZE), b""):
            hasher.update(chunk)
    return hasher.hexdigest()


def compute_directory_hash(
    directory: str | Path,
    glob_pattern: str = "*",
    algorithm: str = "sha256",
) -> str:
    """Single digest over every file in *directory* matching *glob_pattern*.

    Files are visited in sorted relative-path order and the relative path is
    hashed together with the content, so renames change the digest.

    Raises
    ------
    FileNotFoundError
        If *directory* does not exist.
    ValueError
        If no file matches.
    """
    directory = Path(directory)
    if not directory.exists():
        raise FileNotFoundError(f"Directory not found: {directory}")

    files = sorted(f for f in directory.rglob(glob_pattern) if f.is_file())
    if not files:
        raise ValueError(f"No files matching '{glob_pattern}' found in {directory}")

    hasher = hashlib.new(algorithm)
    for filepath in files:
        hasher.update(str(filepath.relative_to(directory)).encode("utf-8"))
        with open(filepath, "rb") as fh:
            for chunk in iter(lambda: fh.read(_CHUNK_SIZE), b""):
                hasher.update(chunk)
    return hasher.hexdigest()
