"""
Finite cosine series ``f(t) = a_0 + sum_m a_m cos(m t)`` on ``[0, pi]``.

``cos(m t) = T_m(cos t)``, so a cosine series is a Chebyshev series in
``cos t``: evaluation is :func:`~numpy.polynomial.chebyshev.chebval` and the
product-to-sum identity ``cos a cos b = (cos(a+b) + cos(a-b)) / 2`` is
:func:`~numpy.polynomial.chebyshev.chebmul`.

Usage:
    from src.sturm_liouville.series import CosineSeries

    q = CosineSeries([2.0, 0.0, 1.0])      # 2 + cos 2t
    y = CosineSeries([0.0, 1.0]).negated_second_derivative() + q * CosineSeries([0.0, 1.0])
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev


@dataclass(frozen=True, eq=False)
class CosineSeries:
    """Plain (not normalised) cosine coefficients ``a_0, a_1, ...``."""

    coefficients: np.ndarray

    def __post_init__(self) -> None:
        a = np.atleast_1d(np.asarray(self.coefficients, dtype=float))
        if a.ndim != 1 or a.size == 0:
            raise ValueError("cosine series needs a nonempty 1-D coefficient sequence")
        if not np.all(np.isfinite(a)):
            raise ValueError("cosine coefficients must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "coefficients", a)

    @property
    def degree(self) -> int:
        nonzero = np.flatnonzero(self.coefficients)
        return int(nonzero[-1]) if nonzero.size else 0

    def __call__(self, t):
        values = chebyshev.chebval(np.cos(np.asarray(t, dtype=float)), self.coefficients)
        return float(values) if np.ndim(values) == 0 else values

    def __add__(self, other: CosineSeries) -> CosineSeries:
        return CosineSeries(chebyshev.chebadd(self.coefficients, other.coefficients))

    def __mul__(self, other: CosineSeries | float) -> CosineSeries:
        if isinstance(other, CosineSeries):
            return CosineSeries(chebyshev.chebmul(self.coefficients, other.coefficients))
        return CosineSeries(self.coefficients * float(other))

    __rmul__ = __mul__

    def negated_second_derivative(self) -> CosineSeries:
        """``-f''``: ``a_m -> m^2 a_m``."""
        m = np.arange(self.coefficients.size, dtype=float)
        return CosineSeries(m**2 * self.coefficients)

    def orthonormal(self, N: int) -> np.ndarray:
        """Coefficients in the Neumann basis ``1/sqrt(pi), sqrt(2/pi) cos(kt)``, length N.

        Terms of degree >= N are dropped.
        """
        c = np.zeros(N)
        head = self.coefficients[:N]
        c[: head.size] = head * math.sqrt(math.pi / 2.0)
        c[0] = self.coefficients[0] * math.sqrt(math.pi)
        return c

    def __repr__(self) -> str:
        return f"CosineSeries(degree={self.degree})"
