"""Shared fixtures for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from src.spectral import SpectrumModel
from src.utils.logger import reset_logging


@pytest.fixture(autouse=True)
def _fresh_logging():
    """Every test starts (and ends) without loguru handlers from earlier runs."""
    reset_logging()
    yield
    reset_logging()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_vector(rng):
    """Factory for a random complex vector on a random increasing spectrum in (0, 100]."""

    def _make(n: int = 64, lam_max: float = 100.0):
        lam = np.sort(rng.uniform(0.0, lam_max, size=n))
        lam = np.unique(lam)
        spectrum = SpectrumModel(lam)
        coeffs = rng.standard_normal(lam.size) + 1j * rng.standard_normal(lam.size)
        return spectrum.vector(coeffs / np.arange(1, lam.size + 1))

    return _make
