"""
Trapezoidal cosine/sine moments on ``[0, pi]`` through the DCT-I and DST-I.

On the uniform grid ``t_i = i pi / P`` the composite trapezoid rule for
``int_0^pi f(t) cos(p t) dt`` is ``pi / (2P)`` times the type-1 DCT of the
samples; the sine moments use the type-1 DST of the interior samples. Every
call also evaluates the rule on the every-other-node grid ``P/2`` and raises
when the two disagree.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from scipy import fft

from src.utils.errors import QuadratureNotConverged
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

PANELS = 2**14
SELF_ESTIMATE_TOL = 1e-9

logger = get_logger("sturm_liouville")


# ── Public API ──────────────────────────────────────────────────────────────


def cosine_moments(
    function: Callable[[np.ndarray], np.ndarray], count: int, panels: int = PANELS
) -> np.ndarray:
    """``int_0^pi f(t) cos(p t) dt`` for ``p = 0 .. count-1``.

    Raises
    ------
    QuadratureNotConverged
        If the halved-grid estimate differs by more than ``1e-9`` (relative
        to the largest moment, absolute below 1).
    """
    values, panels = _samples(function, count, panels)
    fine = _dct_moments(values, panels)[:count]
    coarse = _dct_moments(values[::2], panels // 2)[:count]
    _check_self_estimate(fine, coarse, "cosine")
    return fine


def sine_moments(
    function: Callable[[np.ndarray], np.ndarray], count: int, panels: int = PANELS
) -> np.ndarray:
    """``int_0^pi f(t) sin(p t) dt`` for ``p = 1 .. count``."""
    values, panels = _samples(function, count, panels)
    fine = _dst_moments(values, panels)[:count]
    coarse = _dst_moments(values[::2], panels // 2)[:count]
    _check_self_estimate(fine, coarse, "sine")
    return fine


# ── Private helpers ─────────────────────────────────────────────────────────


def _samples(function, count: int, panels: int) -> tuple[np.ndarray, int]:
    if count < 1:
        raise ValueError(f"moment count must be >= 1, got {count}")
    # the coarse grid must still resolve every requested frequency
    panels = max(int(panels), 4 * count)
    panels += panels % 2
    t = np.linspace(0.0, math.pi, panels + 1)
    values = np.broadcast_to(np.asarray(function(t), dtype=float), t.shape)
    if not np.all(np.isfinite(values)):
        raise QuadratureNotConverged("quadrature not converged: integrand is not finite")
    return np.ascontiguousarray(values), panels


def _dct_moments(values: np.ndarray, panels: int) -> np.ndarray:
    return fft.dct(values, type=1) * (math.pi / (2.0 * panels))


def _dst_moments(values: np.ndarray, panels: int) -> np.ndarray:
    return fft.dst(values[1:-1], type=1) * (math.pi / (2.0 * panels))


def _check_self_estimate(fine: np.ndarray, coarse: np.ndarray, kind: str) -> None:
    estimate = float(np.max(np.abs(fine - coarse)))
    tolerance = SELF_ESTIMATE_TOL * max(1.0, float(np.max(np.abs(fine))))
    logger.debug("Trapezoid moments", kind=kind, count=fine.size, self_estimate=estimate)
    if estimate > tolerance:
        raise QuadratureNotConverged(
            f"quadrature not converged: {kind} self-estimate {estimate:.3e} > {tolerance:.1e}"
        )
