"""
Functions of the type of a modulus of continuity and the integrals built on them.

A :class:`ModulusDescriptor` carries ``omega(t)`` together with its doubling
constant and, optionally, an analytic certificate for the Dini integral
below ``DINI_EPSILON``. The integrals

    I1(t) = t^k  int_t^1 omega(tau) / tau^(k+1) dtau
    I2(t) =      int_0^t omega(tau) / tau       dtau  ( = Omega(t) )

are evaluated with ``scipy.integrate.quad`` after the substitution
``tau = exp(s)``, which turns the ``1/tau`` weight into a smooth integrand.

Usage:
    from src.approximation.moduli import inverse_bound, power_modulus

    omega = power_modulus(0.5)
    i1, i2 = inverse_bound(omega, k=1, t=0.25)
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from src.utils.errors import DiniConditionError, ModulusConditionError
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

DINI_EPSILON = 1e-12
# relative tolerance only: the integrals span many decades as t shrinks
QUAD_EPSABS = 0.0
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200
DYADIC_DEPTH = 40

_ORIGIN_PROBE = 1e-300

logger = get_logger("approximation")


# ── Descriptor ──────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class ModulusDescriptor:
    """A candidate modulus ``omega`` for the inverse theorem.

    Parameters
    ----------
    name : str
        Identifier used in tables (``"t^0.5"``).
    evaluate : callable
        Vectorised ``t -> omega(t) >= 0``.
    doubling_constant : float
        ``c`` with ``omega(2t) <= c * omega(t)``.
    tail : callable, optional
        ``eps -> int_0^eps omega(u)/u du`` in closed form, used below
        :data:`DINI_EPSILON`.
    exponent : float, optional
        ``alpha`` when ``omega(t) = t^alpha``; enables the rate
        classification.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    doubling_constant: float
    tail: Callable[[float], float] | None = field(default=None, repr=False)
    exponent: float | None = None

    def __call__(self, t):
        values = np.asarray(self.evaluate(np.asarray(t, dtype=float)), dtype=float)
        return float(values) if values.ndim == 0 else values

    @cached_property
    def dini_integral(self) -> float:
        """``int_0^1 omega(t)/t dt``; raises :class:`DiniConditionError` if infinite."""
        return dini(self, 1.0)

    @cached_property
    def _conditions(self) -> dict[str, bool]:
        samples = np.geomspace(2.0**-DYADIC_DEPTH, 1.0, 10 * DYADIC_DEPTH + 1)
        values = self(samples)
        scale = max(float(np.max(np.abs(values))), 1.0)

        dyadic = 2.0 ** -np.arange(DYADIC_DEPTH + 1)
        ratio_ok = self(2 * dyadic) <= self.doubling_constant * self(dyadic) * (1 + 1e-12)

        try:
            dini_ok = math.isfinite(self.dini_integral)
        except DiniConditionError:
            dini_ok = False

        return {
            "zero_at_origin": abs(self(_ORIGIN_PROBE)) <= 1e-12 * scale,
            "nonnegative": bool(np.all(values >= 0) and np.all(np.isfinite(values))),
            "nondecreasing": bool(np.all(np.diff(values) >= -1e-14 * scale)),
            "doubling": bool(np.all(ratio_ok)),
            "dini": dini_ok,
        }

    def check_conditions(self) -> dict[str, bool]:
        """Flags for continuity at 0, monotonicity, doubling and the Dini condition."""
        return dict(self._conditions)

    def require(self) -> None:
        """Raise on the first failing condition."""
        flags = self._conditions
        for key in ("zero_at_origin", "nonnegative", "nondecreasing", "doubling"):
            if not flags[key]:
                raise ModulusConditionError(f"modulus {self.name} fails condition '{key}'")
        if not flags["dini"]:
            raise DiniConditionError(f"Dini condition violated for {self.name}")


def power_modulus(alpha: float) -> ModulusDescriptor:
    """``omega(t) = t^alpha`` with doubling constant ``2^alpha`` and tail ``eps^alpha/alpha``."""
    if not alpha > 0:
        raise ValueError(f"power modulus needs alpha > 0, got {alpha}")
    return ModulusDescriptor(
        name=f"t^{alpha:g}",
        evaluate=lambda t: np.power(t, alpha),
        doubling_constant=2.0**alpha,
        tail=lambda eps: eps**alpha / alpha,
        exponent=float(alpha),
    )


# ── Integrals ───────────────────────────────────────────────────────────────


def dini(omega: ModulusDescriptor, upper: float) -> float:
    """``int_0^upper omega(u)/u du``.

    Raises
    ------
    DiniConditionError
        If quadrature reports divergence or returns a non-finite value.
    """
    if not upper > 0:
        raise ValueError(f"upper limit must be > 0, got {upper}")

    if omega.tail is not None:
        if upper <= DINI_EPSILON:
            return float(omega.tail(upper))
        head = float(omega.tail(DINI_EPSILON))
        body = _log_quad(omega, math.log(DINI_EPSILON), math.log(upper), weight_power=0)
        return head + body

    return _log_quad(omega, -np.inf, math.log(upper), weight_power=0)


def big_omega(omega: ModulusDescriptor, t: float) -> float:
    """``Omega(t) = int_0^t omega(u)/u du``; ``Omega(0) = 0``."""
    if t < 0:
        raise ValueError(f"Omega needs t >= 0, got {t}")
    if t == 0:
        return 0.0
    return dini(omega, t)


def big_omega_properties(omega: ModulusDescriptor, j_max: int = DYADIC_DEPTH) -> dict[str, bool]:
    """Check ``Omega(0) = 0``, monotonicity and ``Omega(2t) <= c Omega(t)`` on ``t = 2^-j``."""
    ts = 2.0 ** -np.arange(j_max, -1, -1)
    values = np.array([big_omega(omega, t) for t in ts])
    doubled = np.array([big_omega(omega, 2 * t) for t in ts])
    scale = max(float(values[-1]), 1.0)
    return {
        "zero_at_origin": big_omega(omega, _ORIGIN_PROBE) <= 1e-12 * scale,
        "nondecreasing": bool(np.all(np.diff(values) >= -1e-12 * scale)),
        "doubling": bool(np.all(doubled <= omega.doubling_constant * values * (1 + 1e-8))),
    }


def lemma_rate_bound(omega: ModulusDescriptor, k: int, t: float) -> float:
    """``t^k int_t^1 omega(tau)/tau^(k+1) dtau``."""
    _check_order_and_t(k, t)
    return t**k * _log_quad(omega, math.log(t), 0.0, weight_power=k)


def inverse_bound(omega: ModulusDescriptor, k: int, t: float) -> tuple[float, float]:
    """The pair ``(I1, I2)`` whose sum, times a constant, bounds ``omega_k``."""
    _check_order_and_t(k, t)
    return lemma_rate_bound(omega, k, t), big_omega(omega, t)


# ── Private helpers ─────────────────────────────────────────────────────────


def _check_order_and_t(k: int, t: float) -> None:
    if k < 1:
        raise ValueError(f"order k must be >= 1, got {k}")
    if not 0 < t <= 0.5:
        raise ValueError(f"t must lie in (0, 1/2], got {t}")


def _log_quad(omega: ModulusDescriptor, lo: float, hi: float, weight_power: int) -> float:
    """``int_{e^lo}^{e^hi} omega(tau) tau^(-weight_power-1) dtau`` with ``tau = e^s``."""
    if lo >= hi:
        return 0.0

    def integrand(s: float) -> float:
        return omega(math.exp(s)) * math.exp(-weight_power * s)

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, error = quad(
                integrand, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
            )
        except (IntegrationWarning, OverflowError) as exc:
            raise DiniConditionError(f"Dini condition violated for {omega.name}: {exc}") from exc

    if not math.isfinite(value):
        raise DiniConditionError(f"Dini condition violated for {omega.name}")
    logger.debug("Modulus integral", modulus=omega.name, lo=lo, hi=hi, value=value, error=error)
    return float(value)
