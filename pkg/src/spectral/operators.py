"""
Operations on spectral vectors: functional calculus, the unitary group
``U(h) = exp(ihB)``, k-th differences, the k-modulus of continuity, best
approximation by exponential-type entire vectors, and the type sigma(x, B).

All functions are pure: they return new vectors and never mutate inputs,
so they are safe to call from parallel sweeps.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import comb, logsumexp

from src.spectral.model import ScalarSymbol, SpectralVector
from src.utils.errors import FunctionalCalculusOverflow
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

MODULUS_GRID_POINTS = 1024
MODULUS_FINE_POINTS = 33  # samples across each screened coarse bracket
MODULUS_BAND_SLACK = 1e-9
MODULUS_REFINE_BRACKETS = 16
MODULUS_REFINE_XTOL = 1e-10  # relative to t
TYPE_POWER_ITERATIONS = 50

_CHUNK_ENTRIES = 1 << 22  # rows x modes evaluated per block in the modulus grid

logger = get_logger("spectral")


# ── Norms ───────────────────────────────────────────────────────────────────


def norm(x: SpectralVector) -> float:
    """Parseval norm ``(sum |c_k|^2)^(1/2)``."""
    return float(np.linalg.norm(x.coefficients))


def b_norm(x: SpectralVector, power: float = 0.5) -> float:
    """``|| |B|^power x ||``; ``power=0.5`` is the energy norm of B."""
    weights = np.abs(x.eigenvalues) ** (2.0 * power)
    return float(np.sqrt(np.sum(weights * np.abs(x.coefficients) ** 2)))


# ── Functional calculus and the unitary group ───────────────────────────────


def apply_function(G: ScalarSymbol, x: SpectralVector) -> SpectralVector:
    """``G(B)x``: multiply each coefficient by ``G(lambda_k)``.

    Raises
    ------
    FunctionalCalculusOverflow
        If any ``G(lambda_k) * c_k`` is not finite.
    """
    try:
        with np.errstate(over="raise"):
            values = G(x.eigenvalues)
            scaled = values * x.coefficients
    except FloatingPointError as exc:
        raise FunctionalCalculusOverflow(f"functional calculus overflow for G={G.name}") from exc

    if not np.all(np.isfinite(scaled)):
        raise FunctionalCalculusOverflow(f"functional calculus overflow for G={G.name}")
    return x.with_coefficients(scaled)


def unitary(h: float, x: SpectralVector) -> SpectralVector:
    """``U(h)x = exp(ihB)x``."""
    return x.with_coefficients(np.exp(1j * h * x.eigenvalues) * x.coefficients)


def difference(k: int, h: float, x: SpectralVector) -> SpectralVector:
    """k-th difference ``(U(h) - I)^k x``; ``k = 0`` returns *x*.

    Uses ``exp(i theta) - 1 = 2i sin(theta/2) exp(i theta/2)`` so that the
    magnitude ``2|sin(theta/2)|`` is computed without cancellation.
    """
    if k < 0:
        raise ValueError(f"difference order must be >= 0, got {k}")
    if k == 0:
        return x
    half = 0.5 * h * x.eigenvalues
    factor = 2j * np.sin(half) * np.exp(1j * half)
    return x.with_coefficients(factor**k * x.coefficients)


def difference_binomial(k: int, h: float, x: SpectralVector) -> SpectralVector:
    """Oracle form ``sum_j (-1)^(k-j) C(k, j) U(jh) x`` of :func:`difference`."""
    if k < 0:
        raise ValueError(f"difference order must be >= 0, got {k}")
    total = np.zeros_like(x.coefficients)
    for j in range(k + 1):
        sign = -1.0 if (k - j) % 2 else 1.0
        total = total + sign * comb(k, j, exact=True) * unitary(j * h, x).coefficients
    return x.with_coefficients(total)


# ── Modulus of continuity ───────────────────────────────────────────────────


def modulus(k: int, t: float, x: SpectralVector, grid_points: int = MODULUS_GRID_POINTS) -> float:
    """``omega_k(t, x, B) = sup_{0 < tau <= t} ||Delta_tau^k x||``.

    The sup is located in three passes:

        1. scan    → uniform grid of ``grid_points`` step sizes in ``(0, t]``,
                     densified until it has more than two samples per
                     oscillation of the fastest mode
        2. screen  → every grid local maximum whose value could still hide the
                     sup (within the sampling loss of the coarse grid) gets a
                     fine grid over its bracket
        3. refine  → bounded scalar search on the best few fine
                     brackets that could still hold the sup

    A single mode loses at most a factor ``cos(delta)^k`` at a sample that sits
    ``delta = lam_max * spacing / 2`` away from its peak in phase; that factor
    sets the screening band of each pass.
    """
    if k < 1:
        raise ValueError(f"modulus order must be >= 1, got {k}")
    if not t > 0:
        raise ValueError(f"modulus needs t > 0, got {t}")

    lam, weights = _support(x)
    if lam.size == 0:
        return 0.0

    lam_max = float(np.max(np.abs(lam)))
    needed = 2.0 * t * lam_max / math.pi
    points = grid_points
    if points <= needed:
        points = int(math.ceil(needed)) + 2
        logger.debug("Densified modulus grid", t=t, lam_max=lam_max, points=points)

    taus = t * np.arange(1, points + 1) / points
    values = _difference_norms(k, taus, lam, weights)
    best = float(values.max())
    if best == 0.0:
        return 0.0

    # ── screen coarse local maxima ──
    peaks = _local_maxima(values)
    band = _sampling_band(k, lam_max * t / points)
    peaks = peaks[values[peaks] >= band * best]

    padded = np.concatenate(([0.0], taus, [t]))
    lo, hi = padded[peaks], padded[peaks + 2]
    fine = lo[:, None] + (hi - lo)[:, None] * np.linspace(0.0, 1.0, MODULUS_FINE_POINTS)
    fine_values = _difference_norms(k, fine.ravel(), lam, weights).reshape(fine.shape)

    rows = np.arange(peaks.size)
    columns = np.argmax(fine_values, axis=1)
    row_best = fine_values[rows, columns]
    best = max(best, float(row_best.max()))

    # ── refine the fine brackets ──
    fine_step = (hi - lo).max() / (MODULUS_FINE_POINTS - 1)
    fine_band = _sampling_band(k, lam_max * fine_step)
    candidates = rows[row_best >= fine_band * best]
    order = np.argsort(-row_best[candidates], kind="stable")
    candidates = candidates[order][:MODULUS_REFINE_BRACKETS]
    logger.debug("Modulus brackets", k=k, t=t, peaks=int(peaks.size), refined=int(candidates.size))

    last = MODULUS_FINE_POINTS - 1
    for row in candidates:
        column = columns[row]
        a = fine[row, max(column - 1, 0)]
        b = fine[row, min(column + 1, last)]
        if not b > a:
            continue
        result = minimize_scalar(
            lambda tau: -_difference_norms(k, np.array([tau]), lam, weights)[0],
            bounds=(a, b),
            method="bounded",
            options={"xatol": MODULUS_REFINE_XTOL * t},
        )
        if result.success:
            best = max(best, -float(result.fun))
    return best


def _local_maxima(values: np.ndarray) -> np.ndarray:
    """Indices of samples not below either neighbour (ends compare against -inf)."""
    left = np.concatenate(([-np.inf], values[:-1]))
    right = np.concatenate((values[1:], [-np.inf]))
    return np.flatnonzero((values >= left) & (values >= right))


def _sampling_band(k: int, step_phase: float) -> float:
    """Smallest fraction of a peak a sample ``step_phase`` radians apart can still see."""
    delta = min(0.5 * step_phase, 0.5 * math.pi)
    return math.cos(delta) ** k * (1.0 - MODULUS_BAND_SLACK)


def _support(x: SpectralVector) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and squared magnitudes of the nonzero coefficients."""
    weights = np.abs(x.coefficients) ** 2
    mask = weights > 0
    return x.eigenvalues[mask], weights[mask]


def _difference_norms(k: int, taus: np.ndarray, lam: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``||Delta_tau^k x||`` for every tau, via ``sum (2 sin(lam tau/2))^(2k) |c|^2``."""
    out = np.empty(taus.size)
    rows = max(1, _CHUNK_ENTRIES // max(lam.size, 1))
    for start in range(0, taus.size, rows):
        block = taus[start : start + rows]
        kernel = (2.0 * np.sin(0.5 * np.outer(block, lam))) ** (2 * k)
        out[start : start + rows] = np.sqrt(kernel @ weights)
    return out


# ── Best approximation and exponential type ─────────────────────────────────


def best_approx(r: float, x: SpectralVector) -> float:
    """``E_r(x, B) = ||x - E([-r, r])x||``: norm of the tail ``|lambda_k| > r``."""
    if not r > 0:
        raise ValueError(f"best_approx needs r > 0, got {r}")
    tail = np.abs(x.eigenvalues) > r
    return float(np.linalg.norm(x.coefficients[tail]))


def project_exp(alpha: float, x: SpectralVector) -> SpectralVector:
    """``E([-alpha, alpha])x``: the entire vector of type <= alpha closest to *x*."""
    if not alpha > 0:
        raise ValueError(f"project_exp needs alpha > 0, got {alpha}")
    keep = np.abs(x.eigenvalues) <= alpha
    return x.with_coefficients(np.where(keep, x.coefficients, 0.0))


def type_of(x: SpectralVector) -> float:
    """``sigma(x, B)``: largest ``|lambda_k|`` with ``c_k != 0``; 0 for the zero vector."""
    lam, _ = _support(x)
    if lam.size == 0:
        return 0.0
    return float(np.max(np.abs(lam)))


def type_power_estimate(x: SpectralVector, n_max: int = TYPE_POWER_ITERATIONS) -> float:
    """``||B^n x||^(1/n)`` at ``n = n_max``, the iterative estimate of sigma(x, B).

    Evaluated in log space so that ``lambda^n`` never overflows.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    lam, weights = _support(x)
    nonzero = lam != 0
    if not np.any(nonzero):
        return 0.0
    log_terms = 2.0 * n_max * np.log(np.abs(lam[nonzero])) + np.log(weights[nonzero])
    log_norm = 0.5 * float(logsumexp(log_terms))
    return float(np.exp(log_norm / n_max))
