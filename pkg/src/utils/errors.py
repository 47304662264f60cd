"""
Exception hierarchy for the spectral laboratory.

Three families map onto the CLI exit-code contract:

* :class:`ConfigError`         → exit 1 (bad experiment config)
* :class:`HypothesisError`     → a theorem's hypothesis does not hold
* :class:`NumericalGuardError` → exit 3 (a numerical guard tripped)

Inequality *violations* are never raised; they travel as reports and the
pipelines turn them into exit 2.
"""

from __future__ import annotations


class SpectralLabError(Exception):
    """Root of every error raised by this package."""


# ── Configuration ───────────────────────────────────────────────────────────


class ConfigError(SpectralLabError, ValueError):
    """Experiment config is unreadable, incomplete or inconsistent."""


# ── Theorem hypotheses ──────────────────────────────────────────────────────


class HypothesisError(SpectralLabError, ValueError):
    """An input does not satisfy the hypothesis of the statement being checked."""


class SymbolHypothesisError(HypothesisError):
    """G is not even / nonnegative / nondecreasing on the positive half-line."""


class DegenerateBoundError(HypothesisError):
    """The right-hand side of a bound has a zero denominator."""


class ModulusConditionError(HypothesisError):
    """A modulus-type function fails continuity, monotonicity or doubling."""


class DiniConditionError(HypothesisError):
    """The integral of omega(t)/t near zero is not finite."""


class InsufficientDataError(HypothesisError):
    """Too few samples to fit or to judge a trend."""


# ── Numerical guards ────────────────────────────────────────────────────────


class NumericalGuardError(SpectralLabError, ArithmeticError):
    """A numerical safeguard failed; results would not be trustworthy."""


class FunctionalCalculusOverflow(NumericalGuardError):
    """G(lambda_k) * c_k overflowed."""


class GramNotPositiveDefinite(NumericalGuardError):
    """Cholesky factorisation of a leading Gram block failed."""


class PencilIterationError(NumericalGuardError):
    """The generalized eigenvalue solver for the (B, A) pencil failed."""


class QuadratureNotConverged(NumericalGuardError):
    """A quadrature self-estimate exceeded its tolerance."""


class TruncationTooSmall(NumericalGuardError):
    """The truncation order cannot represent the requested experiment."""
