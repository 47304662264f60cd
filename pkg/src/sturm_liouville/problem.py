"""
Boundary value problems ``-x'' + q x = y`` on ``[0, pi]``.

Two coordinate systems are supported:

* Neumann, ``x'(0) = x'(pi) = 0``: ``e_0 = 1/sqrt(pi)``,
  ``e_k = sqrt(2/pi) cos(kt)``, reference operator ``B = -d^2/dt^2 + 1`` with
  ``lambda_k = k^2 + 1``, ``k = 0, 1, ...``.
* Dirichlet, ``x(0) = x(pi) = 0``: ``e_k = sqrt(2/pi) sin(kt)``,
  ``B = -d^2/dt^2`` with ``lambda_k = k^2``, ``k = 1, 2, ...``.

Usage:
    from src.sturm_liouville.problem import BoundaryValueProblem, PotentialSpec, manufacture
    from src.sturm_liouville.series import CosineSeries

    bvp = BoundaryValueProblem(PotentialSpec.from_cosine([2.0, 0.0, 1.0]), truncation_order=256)
    bvp = manufacture(bvp, CosineSeries([0.0, 1.0]))
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property

import numpy as np

from src.spectral import SpectrumModel
from src.sturm_liouville.quadrature import cosine_moments, sine_moments
from src.sturm_liouville.series import CosineSeries
from src.utils.errors import HypothesisError
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

POTENTIAL_GRID_POINTS = 10_000
POTENTIAL_AGREEMENT_TOL = 1e-10
BOUNDARY_STEP = 1e-3
BOUNDARY_TOL = 1e-8

logger = get_logger("sturm_liouville")

RealFunction = Callable[[np.ndarray], np.ndarray]


# ── Basis ───────────────────────────────────────────────────────────────────


class Basis(str, Enum):
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"

    def indices(self, N: int) -> np.ndarray:
        """Frequencies of the first N basis functions."""
        return np.arange(N) if self is Basis.NEUMANN else np.arange(1, N + 1)

    def eigenvalues(self, N: int) -> np.ndarray:
        k = self.indices(N).astype(float)
        return k**2 + 1.0 if self is Basis.NEUMANN else k**2

    def functions(self, t, N: int) -> np.ndarray:
        """Matrix ``E[i, j] = e_j(t_i)``."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        k = self.indices(N)
        if self is Basis.DIRICHLET:
            return math.sqrt(2.0 / math.pi) * np.sin(np.outer(t, k))
        values = math.sqrt(2.0 / math.pi) * np.cos(np.outer(t, k))
        values[:, 0] = 1.0 / math.sqrt(math.pi)
        return values


# ── Potential ───────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class PotentialSpec:
    """Potential ``q(t) >= 0`` on ``[0, pi]``.

    Parameters
    ----------
    q : callable, optional
        Vectorised ``t -> q(t)``. Defaults to the cosine expansion.
    cosine : CosineSeries, optional
        Finite expansion ``q_0 + sum q_m cos(mt)``; enables exact Gram assembly.
    smoothness_order : float
        Declared k with ``q in C^{2k}`` and vanishing odd derivatives at both
        ends up to order ``2k+1``. Cosine polynomials satisfy every order.
    """

    q: RealFunction | None = None
    cosine: CosineSeries | None = None
    smoothness_order: float = 0

    def __post_init__(self) -> None:
        if self.q is None and self.cosine is None:
            raise ValueError("potential needs a function or a cosine expansion")
        if self.q is None:
            object.__setattr__(self, "q", self.cosine)

        grid = np.linspace(0.0, math.pi, POTENTIAL_GRID_POINTS)
        values = self(grid)
        if not np.all(np.isfinite(values)):
            raise HypothesisError("potential must be finite on [0, pi]")
        if np.min(values) < 0:
            raise HypothesisError(f"potential must be nonnegative (min {np.min(values):.3e})")
        if self.cosine is not None and self.q is not self.cosine:
            gap = float(np.max(np.abs(values - self.cosine(grid))))
            if gap > POTENTIAL_AGREEMENT_TOL:
                raise ValueError(f"potential disagrees with its cosine expansion by {gap:.3e}")
        object.__setattr__(self, "_min_value", float(np.min(values)))

    @classmethod
    def constant(cls, value: float) -> PotentialSpec:
        return cls.from_cosine([float(value)])

    @classmethod
    def from_cosine(cls, coefficients, smoothness_order: float = math.inf) -> PotentialSpec:
        return cls(cosine=CosineSeries(coefficients), smoothness_order=smoothness_order)

    @property
    def min_value(self) -> float:
        """Minimum of q over the validation grid."""
        return self._min_value

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(self.q(t), dtype=float), t.shape)


# ── Problem ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class BoundaryValueProblem:
    """``-x'' + q x = y`` truncated to the first N basis functions.

    ``exact`` is a cosine series, a vectorised function or an array of
    orthonormal coefficients; when present the truncated system is
    manufactured from it.
    """

    potential: PotentialSpec
    basis: Basis = Basis.NEUMANN
    truncation_order: int = 256
    rhs_function: RealFunction | None = None
    exact: CosineSeries | RealFunction | np.ndarray | None = None
    name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", Basis(self.basis))
        if self.truncation_order < 2:
            raise ValueError(f"truncation order must be >= 2, got {self.truncation_order}")
        if self.basis is Basis.NEUMANN and not self.potential.min_value > 0:
            raise HypothesisError(
                f"Neumann problem needs q > 0 on [0, pi] (min {self.potential.min_value:.3e})"
            )

    @property
    def spectrum(self) -> SpectrumModel:
        return SpectrumModel(self.basis.eigenvalues(self.truncation_order))

    def with_truncation(self, N: int) -> BoundaryValueProblem:
        return replace(self, truncation_order=int(N))

    @cached_property
    def exact_coefficients(self) -> np.ndarray | None:
        """Orthonormal coefficients of the exact solution, length N (None when unknown)."""
        N = self.truncation_order
        if self.exact is None:
            return None
        if isinstance(self.exact, CosineSeries):
            return self.exact.orthonormal(N)
        if isinstance(self.exact, np.ndarray):
            c = np.zeros(N)
            head = self.exact[:N]
            c[: head.size] = head
            return c
        return project(self.exact, self.basis, N)

    @cached_property
    def rhs_coefficients(self) -> np.ndarray:
        if self.rhs_function is None:
            raise ValueError(f"problem {self.name!r} has no right-hand side")
        return project(self.rhs_function, self.basis, self.truncation_order)


# ── Public API ──────────────────────────────────────────────────────────────


def project(function: RealFunction, basis: Basis | str, N: int) -> np.ndarray:
    """Orthonormal coefficients ``(f, e_k)`` of the first N basis functions.

    Raises
    ------
    QuadratureNotConverged
        If the trapezoid self-estimate exceeds its tolerance.
    """
    basis = Basis(basis)
    scale = math.sqrt(2.0 / math.pi)
    if basis is Basis.DIRICHLET:
        return scale * sine_moments(function, N)
    moments = cosine_moments(function, N)
    c = scale * moments
    c[0] = moments[0] / math.sqrt(math.pi)
    return c


def manufacture(
    bvp: BoundaryValueProblem, x_exact: CosineSeries | RealFunction | np.ndarray
) -> BoundaryValueProblem:
    """Attach the exact solution *x_exact* and set ``y = -x'' + q x``.

    A cosine series with a cosine potential gives ``y`` symbolically as a
    :class:`CosineSeries`; otherwise ``-x''`` is taken spectrally on the
    first N modes.

    Raises
    ------
    HypothesisError
        If a function *x_exact* violates the boundary conditions by more than
        ``1e-8``.
    """
    q = bvp.potential
    N = bvp.truncation_order

    if isinstance(x_exact, CosineSeries):
        if bvp.basis is not Basis.NEUMANN:
            raise ValueError("a cosine series solution needs the Neumann basis")
        if q.cosine is not None:
            rhs = x_exact.negated_second_derivative() + q.cosine * x_exact
        else:
            curvature = x_exact.negated_second_derivative()

            def rhs(t):
                return curvature(t) + q(t) * x_exact(t)

    else:
        if isinstance(x_exact, np.ndarray):
            coefficients = np.zeros(N)
            head = np.asarray(x_exact, dtype=float)[:N]
            coefficients[: head.size] = head
            values_of = _synthesis(bvp.basis, coefficients)
        else:
            check_boundary_conditions(x_exact, bvp.basis)
            coefficients = project(x_exact, bvp.basis, N)
            values_of = x_exact
        curvature = _synthesis(bvp.basis, coefficients * bvp.basis.indices(N) ** 2)

        def rhs(t):
            return curvature(t) + q(t) * values_of(t)

    logger.debug("Manufactured problem", name=bvp.name, basis=bvp.basis.value, N=N)
    return replace(bvp, exact=x_exact, rhs_function=rhs)


def check_boundary_conditions(x: RealFunction, basis: Basis | str) -> None:
    """Reject *x* unless ``x'`` (Neumann) or ``x`` (Dirichlet) vanishes at 0 and pi.

    Derivatives use one-sided five-point differences with step ``1e-3``.
    """
    basis = Basis(basis)
    h = BOUNDARY_STEP
    steps = np.arange(5) * h
    left = np.broadcast_to(np.asarray(x(steps), dtype=float), steps.shape)
    right = np.broadcast_to(np.asarray(x(math.pi - steps), dtype=float), steps.shape)

    if basis is Basis.DIRICHLET:
        values = (float(left[0]), float(right[0]))
        kind = "x"
    else:
        weights = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
        values = (float(weights @ left), float(-(weights @ right)))
        kind = "x'"

    worst = max(abs(v) for v in values)
    if worst > BOUNDARY_TOL:
        raise HypothesisError(
            f"boundary condition violated: |{kind}| = {worst:.3e} at an endpoint "
            f"({basis.value} basis)"
        )


def bernoulli_rhs(t) -> np.ndarray:
    """``sum_{m>=1} cos(mt) / m^4`` in closed form on ``[0, pi]``.

    ``pi^4/90 - pi^2 t^2/12 + pi t^3/12 - t^4/48``; its first derivative
    vanishes at both ends.
    """
    t = np.asarray(t, dtype=float)
    return math.pi**4 / 90.0 - math.pi**2 * t**2 / 12.0 + math.pi * t**3 / 12.0 - t**4 / 48.0


def algebraic_solution(p: float, M: int) -> CosineSeries:
    """``sum_{m<M} (1+m)^(-p) cos(mt)``."""
    if M < 1:
        raise ValueError(f"mode count must be >= 1, got {M}")
    return CosineSeries((1.0 + np.arange(M, dtype=float)) ** (-float(p)))


# ── Private helpers ─────────────────────────────────────────────────────────


def _synthesis(basis: Basis, coefficients: np.ndarray) -> RealFunction:
    """``t -> sum_k c_k e_k(t)``."""

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        return (basis.functions(t.ravel(), coefficients.size) @ coefficients).reshape(t.shape)

    return evaluate
