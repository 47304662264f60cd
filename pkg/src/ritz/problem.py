"""
Ritz approximations for ``Ax = y`` in the eigenbasis of a reference operator B.

The coordinate system is B's orthonormal eigenbasis ``{e_k}``; A enters only
through its Gram matrix ``a_jk = (A e_j, e_k)``. ``x_n`` minimises the energy
functional ``F(z) = (Az, z) - 2 Re (y, z)`` over ``H_n = span(e_1..e_n)``,
which reduces to the n x n system ``A_n c = y_n``.

Usage:
    from src.ritz.problem import DenseGram, RitzProblem, solve

    problem = RitzProblem(spectrum, DenseGram(matrix), rhs)
    solution = solve(problem, n=16)
    solution.energy_error
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Protocol, runtime_checkable

import numpy as np
from scipy import linalg

from src.spectral import SpectralVector, SpectrumModel
from src.utils.errors import GramNotPositiveDefinite, HypothesisError, PencilIterationError
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

HERMITIAN_RTOL = 1e-12
CONSISTENCY_RTOL = 1e-8

logger = get_logger("ritz")


# ── Gram providers ──────────────────────────────────────────────────────────


@runtime_checkable
class GramProvider(Protocol):
    """Entries ``(A e_j, e_k)`` of the operator in the coordinate basis."""

    @property
    def size(self) -> int: ...

    def block(self, n: int) -> np.ndarray: ...

    def full(self) -> np.ndarray: ...


class DenseGram:
    """Gram matrix held in memory; blocks are read-only views."""

    def __init__(self, matrix) -> None:
        matrix = np.array(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {matrix.shape}")
        scale = max(float(np.max(np.abs(matrix))), np.finfo(float).tiny)
        if not np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=HERMITIAN_RTOL * scale):
            raise ValueError("Gram matrix must be Hermitian")
        matrix.setflags(write=False)
        self._matrix = matrix

    @classmethod
    def diagonal(cls, values) -> DenseGram:
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def size(self) -> int:
        return int(self._matrix.shape[0])

    def block(self, n: int) -> np.ndarray:
        if not 1 <= n <= self.size:
            raise ValueError(f"block size must be in [1, {self.size}], got {n}")
        return self._matrix[:n, :n]

    def full(self) -> np.ndarray:
        return self._matrix

    def __repr__(self) -> str:
        return f"DenseGram(size={self.size})"


# ── Problem and solution ────────────────────────────────────────────────────


class EquivalenceConstants(NamedTuple):
    """``c1 = ||B^1/2 A^-1/2||`` and ``c2 = ||A^1/2 B^-1/2||`` on the truncation."""

    c1: float
    c2: float

    @property
    def c3(self) -> float:
        return self.c1 * self.c2


@dataclass(frozen=True, eq=False)
class RitzProblem:
    """Truncated problem ``Ax = y`` with an optional known solution.

    Parameters
    ----------
    b_spectrum : SpectrumModel
        Eigenvalues of B; must be positive.
    gram_a : GramProvider
        Gram matrix of A in B's eigenbasis.
    rhs : SpectralVector
        Coefficients ``y_k = (y, e_k)``.
    exact : SpectralVector, optional
        True solution; when absent it is taken from the full N x N system.
    """

    b_spectrum: SpectrumModel
    gram_a: GramProvider
    rhs: SpectralVector
    exact: SpectralVector | None = None

    def __post_init__(self) -> None:
        n = self.b_spectrum.truncation_order
        if self.gram_a.size != n or self.rhs.spectrum.truncation_order != n:
            raise ValueError(
                f"sizes disagree: spectrum {n}, Gram {self.gram_a.size}, "
                f"rhs {self.rhs.spectrum.truncation_order}"
            )
        if not self.b_spectrum.is_positive:
            raise HypothesisError("B must be positive definite (all eigenvalues > 0)")
        if self.exact is not None:
            if self.exact.spectrum.truncation_order != n:
                raise ValueError("exact solution length does not match truncation order")
            defect = self.consistency_defect
            if defect > CONSISTENCY_RTOL:
                raise ValueError(f"exact solution does not satisfy A x = y (defect {defect:.3e})")

    @property
    def truncation_order(self) -> int:
        return self.b_spectrum.truncation_order

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.b_spectrum.eigenvalues

    @property
    def consistency_defect(self) -> float:
        """``||A x - y|| / ||y||`` for the supplied exact solution (0 without one)."""
        if self.exact is None:
            return 0.0
        y = self.rhs.coefficients
        scale = max(float(np.linalg.norm(y)), np.finfo(float).tiny)
        return float(np.linalg.norm(self.gram_a.full() @ self.exact.coefficients - y) / scale)

    @cached_property
    def full_solution(self) -> SpectralVector:
        """``x_N``: solution of the full truncated system."""
        coefficients = _cholesky_solve(self.gram_a.full(), self.rhs.coefficients)
        return self.b_spectrum.vector(coefficients)

    @cached_property
    def exact_solution(self) -> SpectralVector:
        return self.exact if self.exact is not None else self.full_solution

    @cached_property
    def equivalence(self) -> EquivalenceConstants:
        return equivalence_constants(self)

    def truncation_estimate(self) -> float:
        """``||x_N - x_{N/2}||_+``, the error bar attached to every reported error."""
        half = solve(self, max(self.truncation_order // 2, 1))
        return energy_norm(self, self.full_solution.coefficients - half.approximation.coefficients)


@dataclass(frozen=True)
class RitzSolution:
    """Ritz approximation ``x_n`` with its error metrics.

    ``residual`` is ``||A x_n - y||`` in the truncated space;
    ``galerkin_defect`` is ``max_j<=n |(A(x - x_n), e_j)|`` relative to ``||y_n||``.
    """

    n: int
    coefficients: np.ndarray
    approximation: SpectralVector
    energy_error: float
    b_energy_error: float
    residual: float
    galerkin_defect: float


# ── Public API ──────────────────────────────────────────────────────────────


def energy_norm(problem: RitzProblem, z) -> float:
    """``||z||_+ = (Az, z)^1/2`` through the quadratic form."""
    z = np.asarray(getattr(z, "coefficients", z))
    form = np.vdot(z, problem.gram_a.full() @ z).real
    return float(np.sqrt(max(form, 0.0)))


def energy_functional(problem: RitzProblem, z) -> float:
    """``F(z) = (Az, z) - 2 Re (y, z)``."""
    z = np.asarray(getattr(z, "coefficients", z))
    y = problem.rhs.coefficients
    return float(np.vdot(z, problem.gram_a.full() @ z).real - 2.0 * np.vdot(z, y).real)


def solve(problem: RitzProblem, n: int) -> RitzSolution:
    """Ritz approximation on ``H_n`` by Cholesky factorisation of the leading block.

    Raises
    ------
    GramNotPositiveDefinite
        If the leading n x n block cannot be factorised.
    """
    N = problem.truncation_order
    if not 1 <= n <= N:
        raise ValueError(f"subspace dimension must be in [1, {N}], got {n}")

    y = problem.rhs.coefficients
    c = _cholesky_solve(problem.gram_a.block(n), y[:n])

    padded = np.zeros(N, dtype=complex)
    padded[:n] = c
    approximation = problem.b_spectrum.vector(padded)

    gram = problem.gram_a.full()
    error = problem.exact_solution.coefficients - padded
    weighted = gram @ error
    y_scale = max(float(np.linalg.norm(y[:n])), np.finfo(float).tiny)

    solution = RitzSolution(
        n=n,
        coefficients=c,
        approximation=approximation,
        energy_error=float(np.sqrt(max(np.vdot(error, weighted).real, 0.0))),
        b_energy_error=float(np.sqrt(np.sum(problem.eigenvalues * np.abs(error) ** 2))),
        residual=float(np.linalg.norm(gram[:, :n] @ c - y)),
        galerkin_defect=float(np.max(np.abs(weighted[:n])) / y_scale),
    )
    logger.debug(
        "Solved Ritz system",
        n=n,
        energy_error=solution.energy_error,
        b_energy_error=solution.b_energy_error,
        residual=solution.residual,
    )
    return solution


def equivalence_constants(problem: RitzProblem) -> EquivalenceConstants:
    """Extreme generalized eigenvalues of the pencil ``(B-form, A-form)``.

    ``c1 = sqrt(mu_max)`` and ``c2 = sqrt(1 / mu_min)`` where
    ``diag(lambda) v = mu A v``. Values are computed on the truncation and are
    therefore lower bounds of the infinite-dimensional norms.

    Raises
    ------
    PencilIterationError
        If the symmetric-definite eigensolver fails.
    """
    b_form = np.diag(problem.eigenvalues)
    try:
        mu = linalg.eigh(b_form, problem.gram_a.full(), eigvals_only=True)
    except linalg.LinAlgError as exc:
        raise PencilIterationError(f"pencil iteration failed: {exc}") from exc

    if not np.all(np.isfinite(mu)) or mu[0] <= 0:
        raise PencilIterationError("pencil iteration failed: non-positive generalized eigenvalue")

    constants = EquivalenceConstants(c1=float(np.sqrt(mu[-1])), c2=float(np.sqrt(1.0 / mu[0])))
    logger.debug("Equivalence constants", c1=constants.c1, c2=constants.c2, c3=constants.c3)
    return constants


# ── Private helpers ─────────────────────────────────────────────────────────


def _cholesky_solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        factor = linalg.cho_factor(matrix, lower=False, check_finite=True)
    except linalg.LinAlgError as exc:
        raise GramNotPositiveDefinite(
            f"Gram block not positive definite (n={matrix.shape[0]}): {exc}"
        ) from exc
    return linalg.cho_solve(factor, rhs)
