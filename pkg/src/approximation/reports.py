"""Inequality reports shared by every verifier."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any


# ── Constants ───────────────────────────────────────────────────────────────

SLACK_RTOL = 1e-10


# ── Reports ─────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of checking ``lhs <= rhs`` for one parameter tuple.

    Parameters
    ----------
    check : str
        Name of the inequality (``"jackson"``, ``"bernstein"``, ``"kernel"`` …).
    lhs, rhs : float
        Both sides as computed.
    context : mapping
        Parameter record: order k, step/radius, symbol id, vector id.
    """

    check: str
    lhs: float
    rhs: float
    context: Mapping[str, Any] = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + SLACK_RTOL)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def as_row(self) -> dict[str, Any]:
        """Flat record in the ``inequalities.csv`` schema."""
        return {
            "check": self.check,
            "k": self.context.get("k", ""),
            "param": format_context(self.context),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": self.satisfied,
        }


def format_context(context: Mapping[str, Any]) -> str:
    """``key=value;...`` in sorted key order, floats as ``%.17g``; ``k`` is its own column."""
    parts = []
    for key in sorted(context):
        if key == "k":
            continue
        value = context[key]
        if isinstance(value, float):
            value = f"{value:.17g}"
        parts.append(f"{key}={value}")
    return ";".join(parts)
