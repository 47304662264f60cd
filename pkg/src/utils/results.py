"""
Result persistence: CSV tables, JSON summaries and plot scripts.

Everything written here is part of the determinism contract: identical
inputs must produce identical bytes:

* CSV: pandas, '.' decimal, ``%.17g`` floats, LF line endings, no index
* JSON: sorted keys, 2-space indent, numpy scalars/arrays converted
* plots: a gnuplot script (``*.plt``) reading the CSV next to it

Usage:
    from src.utils.results import save_json, write_table

    write_table(out_dir / "ritz_errors.csv", rows, columns=["n", "energy_error"])
    save_json(out_dir / "rates.json", {"command": "ritz-run", "slopes": {...}})
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd


# ── Constants ───────────────────────────────────────────────────────────────

FLOAT_FORMAT = "%.17g"


# ── Public API ──────────────────────────────────────────────────────────────


def write_table(
    path: str | Path,
    rows: Iterable[Mapping[str, Any]],
    columns: Sequence[str],
) -> Path:
    """Write *rows* as CSV with exactly the given *columns*, in that order.

    Parameters
    ----------
    path : str | Path
        Destination file; parent directories are created.
    rows : iterable of mappings
        One mapping per row; keys outside *columns* are ignored.
    columns : sequence of str
        Column schema.

    Returns
    -------
    Path
        The written file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame([{c: row.get(c) for c in columns} for row in rows], columns=list(columns))
    frame.to_csv(
        path,
        index=False,
        float_format=FLOAT_FORMAT,
        lineterminator="\n",
        na_rep="nan",
        encoding="utf-8",
    )
    return path


def save_json(path: str | Path, payload: Mapping[str, Any]) -> Path:
    """Persist *payload* as sorted-key JSON (trailing newline included)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(_sanitize(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
        newline="\n",
    )
    return path


def write_plot_script(
    path: str | Path,
    data_file: str,
    x_column: str,
    y_columns: Sequence[str],
    title: str,
    xlabel: str,
    ylabel: str,
    loglog: bool = True,
) -> Path:
    """Write a gnuplot script plotting *y_columns* against *x_column* of *data_file*.

    The script refers to *data_file* by name, so it is meant to live in the
    same directory as the CSV; run it with ``gnuplot <script>``.
    """
    path = Path(path)
    png_name = path.with_suffix(".png").name
    lines = [
        "# generated by spectral-lab; run with: gnuplot " + path.name,
        'set datafile separator ","',
        "set key autotitle columnhead",
        "set terminal pngcairo size 900,650",
        f'set output "{png_name}"',
        f'set title "{title}"',
        f'set xlabel "{xlabel}"',
        f'set ylabel "{ylabel}"',
        "set grid",
    ]
    if loglog:
        lines.append("set logscale xy")
    plots = [
        f'"{data_file}" using (column("{x_column}")):(column("{y}")) '
        f'with linespoints title "{y}"'
        for y in y_columns
    ]
    lines.append("plot " + ", \\\n     ".join(plots))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


# ── Private helpers ─────────────────────────────────────────────────────────


def _sanitize(obj: Any) -> Any:
    """Recursively convert numpy types and non-finite floats to JSON-safe values."""
    if isinstance(obj, Mapping):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        # JSON has no inf/nan literals
        return value if math.isfinite(value) else str(value)
    if isinstance(obj, Path):
        return obj.as_posix()
    return obj
