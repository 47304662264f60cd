"""
Diagonal model of a self-adjoint operator with discrete simple spectrum.

``B`` is represented by its ordered eigenvalues; a vector ``x`` by its
coefficients ``c_k = (x, e_k)`` in B's orthonormal eigenbasis. Every norm,
projection and function of ``B`` then acts coefficient-wise.

Public types
------------
SpectrumModel: strictly increasing eigenvalues lambda_1 < ... < lambda_N
SpectralVector: complex coefficients tied to a SpectrumModel
ScalarSymbol: a function G(lambda) with the flags the theorems rely on
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from src.utils.errors import ConfigError


# ── Spectrum ────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class SpectrumModel:
    """Ordered simple eigenvalues of ``B`` truncated at order ``N``.

    Parameters
    ----------
    eigenvalues : array-like of float
        Strictly increasing, finite.
    """

    eigenvalues: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.eigenvalues, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("eigenvalues must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise ValueError("eigenvalues must be finite")
        if np.any(np.diff(values) <= 0):
            raise ValueError("eigenvalues must be strictly increasing (simple spectrum)")
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    @property
    def truncation_order(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def is_positive(self) -> bool:
        """``True`` when every eigenvalue is > 0 (required for Ritz usage)."""
        return bool(self.eigenvalues[0] > 0)

    def __len__(self) -> int:
        return self.truncation_order

    def zeros(self) -> SpectralVector:
        return SpectralVector(np.zeros(self.truncation_order, dtype=complex), self)

    def vector(self, coefficients) -> SpectralVector:
        """Wrap *coefficients* (length N) as a vector of this spectrum."""
        return SpectralVector(coefficients, self)


# ── Vectors ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class SpectralVector:
    """Coefficients of ``x`` in B's eigenbasis.

    Coefficients are stored as a read-only complex array; the unitary group
    makes them complex even when an experiment starts from real data.
    """

    coefficients: np.ndarray
    spectrum: SpectrumModel

    def __post_init__(self) -> None:
        c = np.array(self.coefficients, dtype=complex)
        if c.ndim != 1:
            raise ValueError("coefficients must be 1-D")
        if c.size != self.spectrum.truncation_order:
            raise ValueError(
                f"coefficient count {c.size} does not match truncation order "
                f"{self.spectrum.truncation_order}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    def with_coefficients(self, coefficients) -> SpectralVector:
        return SpectralVector(coefficients, self.spectrum)

    def __add__(self, other: SpectralVector) -> SpectralVector:
        _check_same_spectrum(self, other)
        return self.with_coefficients(self.coefficients + other.coefficients)

    def __sub__(self, other: SpectralVector) -> SpectralVector:
        _check_same_spectrum(self, other)
        return self.with_coefficients(self.coefficients - other.coefficients)

    def __mul__(self, scalar: complex) -> SpectralVector:
        return self.with_coefficients(scalar * self.coefficients)

    __rmul__ = __mul__


def _check_same_spectrum(a: SpectralVector, b: SpectralVector) -> None:
    if a.spectrum is not b.spectrum and not np.array_equal(a.eigenvalues, b.eigenvalues):
        raise ValueError("vectors belong to different spectra")


# ── Symbols G(lambda) ───────────────────────────────────────────────────────


@dataclass(frozen=True)
class ScalarSymbol:
    """A function ``G`` of the operator, evaluated on eigenvalues.

    Parameters
    ----------
    name : str
        Identifier used in reports and configs.
    evaluate : callable
        Vectorised map ``lambda -> G(lambda) >= 0``.
    is_even : bool
        ``G(lambda) == G(-lambda)``.
    is_nondecreasing_on_positives : bool
        ``G`` does not decrease on ``[0, inf)``.
    doubling_bound : float, optional
        ``sup_{lambda > 0} G(2 lambda) / G(lambda)`` when finite.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    is_even: bool = True
    is_nondecreasing_on_positives: bool = True
    doubling_bound: float | None = None

    def __call__(self, lam) -> np.ndarray:
        return np.asarray(self.evaluate(np.asarray(lam, dtype=float)), dtype=float)

    @property
    def satisfies_bernstein_hypothesis(self) -> bool:
        return self.is_even and self.is_nondecreasing_on_positives

    def spot_check(self, grid: np.ndarray | None = None, rtol: float = 1e-12) -> dict[str, bool]:
        """Check the declared flags on a sample grid.

        Returns flags ``nonnegative``, ``even``, ``nondecreasing`` and
        ``doubling`` (the last only constrained when a bound is declared).
        """
        if grid is None:
            grid = np.concatenate(([0.0], np.geomspace(1e-6, 1e6, 241)))
        grid = np.sort(np.abs(np.asarray(grid, dtype=float)))
        pos, neg = self(grid), self(-grid)
        scale = np.maximum(np.abs(pos), 1.0)

        flags = {
            "nonnegative": bool(np.all(pos >= 0) and np.all(neg >= 0)),
            "even": bool(np.all(np.abs(pos - neg) <= rtol * scale)),
            "nondecreasing": bool(np.all(np.diff(pos) >= -rtol * scale[1:])),
            "doubling": True,
        }
        if self.doubling_bound is not None:
            positive = grid[grid > 0]
            ratio = self(2 * positive) / np.maximum(self(positive), np.finfo(float).tiny)
            flags["doubling"] = bool(np.all(ratio <= self.doubling_bound * (1 + rtol)))
        return flags


def constant_symbol(value: float = 1.0) -> ScalarSymbol:
    """``G == value`` (``value >= 0``)."""
    if value < 0:
        raise ValueError(f"constant symbol must be nonnegative, got {value}")
    return ScalarSymbol(
        name="one" if value == 1.0 else f"const:{value:g}",
        evaluate=lambda lam: np.full_like(lam, value, dtype=float),
        doubling_bound=1.0,
    )


def power_symbol(m: float) -> ScalarSymbol:
    """``G(lambda) = |lambda|^m`` for ``m >= 0``; doubling bound ``2^m``."""
    if m < 0:
        raise ValueError(f"power symbol exponent must be >= 0, got {m}")
    if m == 0:
        return constant_symbol(1.0)
    names = {1.0: "abs", 2.0: "square"}
    return ScalarSymbol(
        name=names.get(float(m), f"power:{m:g}"),
        evaluate=lambda lam: np.abs(lam) ** m,
        doubling_bound=2.0**m,
    )


def symbol_from_name(name: str) -> ScalarSymbol:
    """Resolve a config selector: ``one``, ``abs``, ``square`` or ``power:<m>``."""
    if name == "one":
        return constant_symbol(1.0)
    if name == "abs":
        return power_symbol(1.0)
    if name == "square":
        return power_symbol(2.0)
    if name.startswith("power:"):
        try:
            return power_symbol(float(name.split(":", 1)[1]))
        except ValueError as exc:
            raise ConfigError(f"Bad power symbol selector {name!r}") from exc
    raise ConfigError(f"Unknown symbol selector {name!r}")
