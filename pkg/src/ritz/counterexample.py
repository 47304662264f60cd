"""
The vector showing that the a priori rate alone does not give ``x in D(B^alpha)``.

On the Dirichlet model ``lambda_k = k^2`` with ``A = B`` take

    x_k = 1 / (k^(2 alpha + 1/2) sqrt(ln k)),  k >= 2,   x_1 = 0.

Then ``lambda_n^(alpha - 1/2) ||x - x_n||_+ <= 1/sqrt((4 alpha - 2) ln(n+1)) -> 0``
while ``sum_k lambda_k^(2 alpha) x_k^2 = sum_k 1/(k ln k)`` diverges like
``ln ln M``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from src.ritz.problem import DenseGram, RitzProblem
from src.spectral import SpectrumModel
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

MIN_TRUNCATION = 1000
DEFAULT_PARTIAL_SUM_CUTOFFS = (1_000, 10_000, 100_000)

logger = get_logger("ritz")


# ── Report ──────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class CounterexampleReport:
    alpha: float
    truncation: int
    n: np.ndarray
    tail: np.ndarray
    tail_bound: np.ndarray
    scaled_error: np.ndarray
    scaled_bound: np.ndarray
    cutoffs: np.ndarray
    partial_sums: np.ndarray

    @property
    def lnln(self) -> np.ndarray:
        return np.log(np.log(self.cutoffs))

    @property
    def partial_sum_ratio(self) -> np.ndarray:
        return self.partial_sums / self.lnln

    @property
    def bound_respected(self) -> bool:
        return bool(np.all(self.tail <= self.tail_bound * (1 + 1e-10)))

    @property
    def decays(self) -> bool:
        return bool(self.scaled_error[-1] < self.scaled_error[0])

    def error_rows(self) -> list[dict]:
        return [{"n": int(n), "scaled_error": float(e)} for n, e in zip(self.n, self.scaled_error)]

    def partial_sum_rows(self) -> list[dict]:
        columns = zip(self.cutoffs, self.partial_sums, self.lnln, self.partial_sum_ratio)
        return [
            {"M": int(M), "partial_sum": float(s), "lnln_M": float(env), "ratio": float(r)}
            for M, s, env, r in columns
        ]


# ── Public API ──────────────────────────────────────────────────────────────


def counterexample_coefficients(alpha: float, N: int) -> np.ndarray:
    """``x_k`` for ``k = 1..N`` (``x_1 = 0``)."""
    k = np.arange(1, N + 1, dtype=float)
    x = np.zeros(N)
    x[1:] = 1.0 / (k[1:] ** (2 * alpha + 0.5) * np.sqrt(np.log(k[1:])))
    return x


def counterexample_problem(alpha: float, N: int) -> RitzProblem:
    """Diagonal problem ``A = B``, ``lambda_k = k^2`` whose solution is the counterexample."""
    _check_arguments(alpha, N)
    lam = np.arange(1, N + 1, dtype=float) ** 2
    spectrum = SpectrumModel(lam)
    x = counterexample_coefficients(alpha, N)
    return RitzProblem(
        b_spectrum=spectrum,
        gram_a=DenseGram.diagonal(lam),
        rhs=spectrum.vector(lam * x),
        exact=spectrum.vector(x),
    )


def counterexample(
    alpha: float,
    N: int,
    n_values: Sequence[int] | None = None,
    cutoffs: Sequence[int] = DEFAULT_PARTIAL_SUM_CUTOFFS,
) -> CounterexampleReport:
    """Scaled errors, their bound and the diverging partial sums.

    Energy tails are summed exactly up to N; the part beyond N is replaced
    by its integral majorant ``1 / ((4 alpha - 2) N^(4 alpha - 2) ln N)``.
    Partial sums ``sum_{2<=k<=M} 1/(k ln k)`` are evaluated directly for each
    cutoff, independent of N.
    """
    _check_arguments(alpha, N)
    p = 4 * alpha - 2

    if n_values is None:
        n_values = np.unique(np.geomspace(1, N - 1, 64).astype(int))
    n = np.asarray(n_values, dtype=int)
    if n.size == 0 or n[0] < 1 or n[-1] >= N:
        raise ValueError(f"n values must lie in [1, {N - 1}]")

    k = np.arange(2, N + 1, dtype=float)
    energy_terms = 1.0 / (k ** (p + 1) * np.log(k))
    beyond = 1.0 / (p * N**p * math.log(N))
    # tails[m] = sum_{k > m+1} of the energy terms, plus the part beyond N
    tails_from = np.concatenate((np.cumsum(energy_terms[::-1])[::-1], [0.0])) + beyond
    tail = tails_from[n - 1]

    tail_bound = 1.0 / (p * n.astype(float) ** p * np.log(n + 1.0))
    lam_n = n.astype(float) ** 2
    scaled_error = lam_n ** (alpha - 0.5) * np.sqrt(tail)
    scaled_bound = 1.0 / np.sqrt(p * np.log(n + 1.0))

    cutoffs = np.asarray(cutoffs, dtype=int)
    partial = np.array([_log_harmonic_sum(int(M)) for M in cutoffs])

    report = CounterexampleReport(
        alpha=float(alpha),
        truncation=N,
        n=n,
        tail=tail,
        tail_bound=tail_bound,
        scaled_error=scaled_error,
        scaled_bound=scaled_bound,
        cutoffs=cutoffs,
        partial_sums=partial,
    )
    logger.debug(
        "Counterexample built",
        alpha=alpha,
        N=N,
        bound_respected=report.bound_respected,
        decays=report.decays,
    )
    return report


# ── Private helpers ─────────────────────────────────────────────────────────


def _check_arguments(alpha: float, N: int) -> None:
    if alpha < 1:
        raise ValueError(f"counterexample needs alpha >= 1, got {alpha}")
    if N < MIN_TRUNCATION:
        raise ValueError(f"counterexample needs N >= {MIN_TRUNCATION}, got {N}")


def _log_harmonic_sum(M: int) -> float:
    """``sum_{k=2}^{M} 1 / (k ln k)``."""
    if M < 2:
        return 0.0
    k = np.arange(2, M + 1, dtype=float)
    return float(np.sum(1.0 / (k * np.log(k))))
