"""
Inverse-theorem machinery: dyadic entire approximants, vectors with a
prescribed decay of best approximation, and the fitted envelope constant.

The experiment builds ``x`` on the spectrum ``1..N`` with one mode at each
``lambda = 2^j`` so that the tail beyond ``2^j - 0`` equals
``target(2^j) = omega(2^-j) / G(2^j)`` exactly, then measures
``omega_k(t, G(B) x)`` against ``I1(t) + I2(t)`` on a log grid of t.

Usage:
    from src.approximation.inverse import inverse_theorem_experiment
    from src.approximation.moduli import power_modulus
    from src.spectral import constant_symbol

    report = inverse_theorem_experiment(power_modulus(1.0), constant_symbol(), k=1, N=4096)
    report.fitted_constant
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from src.approximation.moduli import ModulusDescriptor, inverse_bound
from src.spectral import (
    ScalarSymbol,
    SpectralVector,
    SpectrumModel,
    apply_function,
    modulus,
    project_exp,
)
from src.utils.errors import DegenerateBoundError, TruncationTooSmall
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

T_MIN_EXPONENT = -12
T_STEPS_PER_OCTAVE = 4
STABILITY_RTOL = 0.2

REGIMES = ("k<alpha", "k=alpha", "k>alpha")

logger = get_logger("approximation")


# ── Reports ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class InverseRateReport:
    """Measured modulus against the inverse-theorem envelope.

    ``fitted_constant`` is the least ``m`` with ``omega_k <= m (I1 + I2)`` on
    the grid; ``slack = m (I1 + I2) - omega_k`` is zero at the worst point.
    """

    modulus_name: str
    symbol: str
    k: int
    truncation: int
    t: np.ndarray
    omega_k: np.ndarray
    envelope: np.ndarray
    ratio: np.ndarray
    fitted_constant: float
    slack: np.ndarray
    alpha: float | None = None
    regime: str | None = None
    regime_ratio: np.ndarray | None = None

    def rows(self) -> list[dict]:
        """One ``inverse_rate.csv`` record per t."""
        regime_ratio = self.regime_ratio
        if regime_ratio is None:
            regime_ratio = np.full_like(self.t, np.nan)
        return [
            {
                "alpha": self.alpha if self.alpha is not None else float("nan"),
                "modulus": self.modulus_name,
                "N": self.truncation,
                "t": float(t),
                "omega_k": float(w),
                "envelope": float(e),
                "ratio": float(q),
                "regime_ratio": float(rr),
            }
            for t, w, e, q, rr in zip(self.t, self.omega_k, self.envelope, self.ratio, regime_ratio)
        ]


@dataclass(frozen=True)
class StabilityReport:
    first: InverseRateReport
    second: InverseRateReport

    @property
    def relative_change(self) -> float:
        a, b = self.first.fitted_constant, self.second.fitted_constant
        return abs(b - a) / a

    @property
    def stable(self) -> bool:
        return self.relative_change <= STABILITY_RTOL


# ── Public API ──────────────────────────────────────────────────────────────


def dyadic_approximants(x: SpectralVector, j_max: int) -> list[SpectralVector]:
    """``[project_exp(2^j, x) for j = 0..j_max]``, the optimal entire approximants."""
    if j_max < 0:
        raise ValueError(f"j_max must be >= 0, got {j_max}")
    return [project_exp(2.0**j, x) for j in range(j_max + 1)]


def default_t_grid() -> np.ndarray:
    """``2^(-12 + i/4)`` for ``i = 0..44``, i.e. ``[2^-12, 1/2]``."""
    steps = (-1 - T_MIN_EXPONENT) * T_STEPS_PER_OCTAVE
    return 2.0 ** (T_MIN_EXPONENT + np.arange(steps + 1) / T_STEPS_PER_OCTAVE)


def prescribed_decay_vector(omega: ModulusDescriptor, G: ScalarSymbol, N: int) -> SpectralVector:
    """Vector on ``1..N`` whose ``E_r`` equals ``omega(1/r)/G(r)`` just below ``r = 2^j``.

    ``|c_j|^2 = target(2^j)^2 - target(2^(j+1))^2`` for ``j < J`` and the last
    mode ``j = J = floor(log2 N)`` carries ``target(2^J)^2`` so the tail sums
    telescope.

    Raises
    ------
    TruncationTooSmall
        If ``N < 2^12``: the t grid would reach below the highest mode's scale.
    DegenerateBoundError
        If ``G`` vanishes at a dyadic point.
    """
    if N < 2**-T_MIN_EXPONENT:
        raise TruncationTooSmall(
            f"truncation too small: N={N} < {2 ** -T_MIN_EXPONENT} "
            f"needed for t >= 2^{T_MIN_EXPONENT}"
        )

    J = int(math.floor(math.log2(N)))
    radii = 2.0 ** np.arange(J + 1)
    g = G(radii)
    if np.any(g == 0):
        raise DegenerateBoundError(f"bound degenerate at r={radii[np.argmax(g == 0)]:g}")
    target = omega(1.0 / radii) / g

    mass = np.empty(J + 1)
    mass[:-1] = target[:-1] ** 2 - target[1:] ** 2
    mass[-1] = target[-1] ** 2
    mass = np.clip(mass, 0.0, None)

    spectrum = SpectrumModel(np.arange(1.0, N + 1.0))
    coefficients = np.zeros(N, dtype=complex)
    coefficients[radii.astype(int) - 1] = np.sqrt(mass)
    return spectrum.vector(coefficients)


def regime(k: int, alpha: float) -> str:
    """Rate regime of ``omega(t) = t^alpha`` seen by the k-th modulus."""
    if math.isclose(k, alpha, rel_tol=1e-12):
        return "k=alpha"
    return "k<alpha" if k < alpha else "k>alpha"


def regime_profile(k: int, alpha: float, t: np.ndarray) -> np.ndarray:
    """``t^k``, ``t^k |ln t|`` or ``t^alpha`` according to :func:`regime`."""
    t = np.asarray(t, dtype=float)
    name = regime(k, alpha)
    if name == "k<alpha":
        return t**k
    if name == "k=alpha":
        return t**k * np.abs(np.log(t))
    return t**alpha


def inverse_theorem_experiment(
    omega: ModulusDescriptor,
    G: ScalarSymbol,
    k: int,
    N: int,
    t_grid: np.ndarray | None = None,
) -> InverseRateReport:
    """Fit ``m_k`` in ``omega_k(t, G(B) x) <= m_k (I1(t) + I2(t))``.

    Raises
    ------
    ModulusConditionError, DiniConditionError
        If omega is not of modulus type.
    TruncationTooSmall
        If N cannot realise the dyadic decay down to the smallest t.
    """
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")
    omega.require()
    if G.doubling_bound is None or not math.isfinite(G.doubling_bound):
        raise DegenerateBoundError(f"symbol {G.name} has no finite doubling bound")

    ts = default_t_grid() if t_grid is None else np.asarray(t_grid, dtype=float)
    x = prescribed_decay_vector(omega, G, N)
    smoothed = apply_function(G, x)

    measured = np.array([modulus(k, float(t), smoothed) for t in ts])
    envelope = np.array([sum(inverse_bound(omega, k, float(t))) for t in ts])
    ratio = measured / envelope
    fitted = float(np.max(ratio))

    regime_name, regime_ratio = None, None
    if omega.exponent is not None:
        regime_name = regime(k, omega.exponent)
        regime_ratio = measured / regime_profile(k, omega.exponent, ts)

    logger.debug(
        "Inverse experiment", modulus=omega.name, G=G.name, k=k, N=N, fitted_constant=fitted
    )
    return InverseRateReport(
        modulus_name=omega.name,
        symbol=G.name,
        k=k,
        truncation=N,
        t=ts,
        omega_k=measured,
        envelope=envelope,
        ratio=ratio,
        fitted_constant=fitted,
        slack=fitted * envelope - measured,
        alpha=omega.exponent,
        regime=regime_name,
        regime_ratio=regime_ratio,
    )


def inverse_stability(
    omega: ModulusDescriptor,
    G: ScalarSymbol,
    k: int,
    N: int,
    t_grid: np.ndarray | None = None,
) -> StabilityReport:
    """Run the experiment at ``N`` and ``2N`` and compare the fitted constants."""
    return StabilityReport(
        first=inverse_theorem_experiment(omega, G, k, N, t_grid),
        second=inverse_theorem_experiment(omega, G, k, 2 * N, t_grid),
    )
