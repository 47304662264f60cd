"""
Verifiers for the Bernstein-type and Jackson-type inequalities.

Each check evaluates both sides on the diagonal model and returns an
:class:`~src.approximation.reports.InequalityReport`; a failed inequality is
data, not an exception. Exceptions are reserved for inputs that fall outside
the hypotheses (odd or decreasing symbols, ``G(r) = 0``).
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from src.approximation.reports import InequalityReport
from src.spectral import (
    ScalarSymbol,
    SpectralVector,
    apply_function,
    best_approx,
    difference,
    modulus,
    norm,
    project_exp,
)
from src.utils.errors import DegenerateBoundError, QuadratureNotConverged, SymbolHypothesisError
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

KERNEL_EPSABS = 1e-10
KERNEL_LIMIT = 400

logger = get_logger("approximation")


# ── Bernstein ───────────────────────────────────────────────────────────────


def bernstein_check(
    G: ScalarSymbol,
    k: int,
    h: float,
    alpha: float,
    x: SpectralVector,
    vector_id: str | int = "",
) -> InequalityReport:
    """``||Delta_h^k G(B) x|| <= h^k alpha^k G(alpha) ||x||`` for x of type <= alpha.

    *x* is first replaced by ``project_exp(alpha, x)`` so the type
    hypothesis holds by construction.

    Raises
    ------
    SymbolHypothesisError
        If G is not declared even and nondecreasing on the positive half-line.
    """
    if not G.satisfies_bernstein_hypothesis:
        raise SymbolHypothesisError(f"symbol hypothesis violated for G={G.name}")
    if k < 0:
        raise ValueError(f"order k must be >= 0, got {k}")
    if not h > 0:
        raise ValueError(f"step h must be > 0, got {h}")

    entire = project_exp(alpha, x)
    lhs = norm(difference(k, h, apply_function(G, entire)))
    rhs = (h * alpha) ** k * float(G(alpha)) * norm(entire)

    context = {"k": k, "h": float(h), "alpha": float(alpha), "G": G.name, "vector": vector_id}
    return InequalityReport("bernstein", lhs, rhs, context)


# ── Jackson ─────────────────────────────────────────────────────────────────


def jackson_check(
    G: ScalarSymbol,
    k: int,
    r: float,
    x: SpectralVector,
    vector_id: str | int = "",
) -> InequalityReport:
    """``E_r(x) <= sqrt(k+1) / (2^k G(r)) * omega_k(pi/r, G(B) x)``.

    With ``G(lambda) = |lambda|^m`` this is the bound in terms of
    ``omega_k(pi/r, |B|^m x)`` and the factor ``r^-m``.

    Raises
    ------
    DegenerateBoundError
        If ``G(r) == 0``.
    FunctionalCalculusOverflow
        If ``G(B) x`` is not finite.
    """
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")
    g_r = float(G(r))
    if g_r == 0.0:
        raise DegenerateBoundError(f"bound degenerate at r={r:g} (G={G.name})")

    smoothed = apply_function(G, x)
    lhs = best_approx(r, x)
    rhs = math.sqrt(k + 1) / (2.0**k * g_r) * modulus(k, math.pi / r, smoothed)

    context = {"k": k, "r": float(r), "G": G.name, "vector": vector_id}
    return InequalityReport("jackson", lhs, rhs, context)


# ── Kernel integral ─────────────────────────────────────────────────────────


def kernel_lower_bound(k: int) -> float:
    """``2^(k+1) / (k+1)``."""
    return 2.0 ** (k + 1) / (k + 1)


def kernel_integral(theta: float, k: int) -> float:
    """``int_0^pi (1 - cos(theta t))^k sin t dt`` by adaptive quadrature.

    Raises
    ------
    QuadratureNotConverged
        If quad cannot reach the absolute tolerance.
    """
    if theta < 1:
        raise ValueError(f"theta must be >= 1, got {theta}")
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")

    # breakpoints at the periods of cos(theta t)
    periods = np.arange(1, int(theta // 2) + 1) * 2.0 * math.pi / theta
    periods = periods[periods < math.pi]
    points = periods if periods.size else None

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, _ = quad(
                lambda t: (1.0 - math.cos(theta * t)) ** k * math.sin(t),
                0.0,
                math.pi,
                epsabs=KERNEL_EPSABS,
                epsrel=0.0,
                limit=KERNEL_LIMIT,
                points=points,
            )
        except IntegrationWarning as exc:
            raise QuadratureNotConverged(f"kernel integral theta={theta}, k={k}: {exc}") from exc
    return float(value)


def kernel_check(theta: float, k: int) -> InequalityReport:
    """``2^(k+1)/(k+1) <= kernel_integral(theta, k)`` as a report."""
    return InequalityReport(
        "kernel",
        kernel_lower_bound(k),
        kernel_integral(theta, k),
        {"k": k, "theta": float(theta)},
    )
