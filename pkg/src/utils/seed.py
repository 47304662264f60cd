"""
Reproducibility seed control.

Every random corpus in the laboratory is drawn from a
:class:`numpy.random.Generator` created here, so a config's ``seed`` fully
determines the vectors that are checked.

Usage:
    from src.utils.seed import make_rng, set_global_seed

    set_global_seed(7)
    rng = make_rng(7)
"""

from __future__ import annotations

import os
import random

import numpy as np


def set_global_seed(seed: int = 42) -> None:
    """Pin the legacy global sources of randomness to *seed*.

    Covers the stdlib :mod:`random` module, numpy's legacy global state and
    ``PYTHONHASHSEED`` (read by subprocesses such as joblib workers).

    Parameters
    ----------
    seed : int
        Integer seed value. Default ``42``.
    """
    random.seed(seed)
    os.environ["PYTHONHASHSEED"] = str(seed)
    np.random.seed(seed)


def make_rng(seed: int | None = 42) -> np.random.Generator:
    """Return a fresh PCG64 generator seeded with *seed*.

    Generators are passed explicitly instead of relying on the global state,
    which keeps corpus draws independent of how many workers run later.
    """
    return np.random.default_rng(seed)
