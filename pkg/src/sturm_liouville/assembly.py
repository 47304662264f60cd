"""
Gram matrix assembly for ``A = -d^2/dt^2 + q`` in the Neumann or Dirichlet basis.

All multiplication entries come from the potential moments
``Q(p) = int_0^pi q(t) cos(pt) dt``:

    Neumann    (q e_j, e_k) = s_j s_k (Q(j+k) + Q(|j-k|)) / pi,  s_0 = 1/sqrt(2), s_k = 1
    Dirichlet  (q e_j, e_k) = (Q(|j-k|) - Q(j+k)) / pi

so that ``a_jk = k^2 delta_jk + (q e_j, e_k)``. The moments are exact when q
carries a cosine expansion and trapezoidal otherwise.

Usage:
    from src.sturm_liouville.assembly import assemble_gram

    problem = assemble_gram(bvp)            # RitzProblem
    problem = assemble_gram(bvp, method="quadrature")
"""

from __future__ import annotations

import math

import numpy as np

from src.ritz import DenseGram, RitzProblem
from src.sturm_liouville.problem import Basis, BoundaryValueProblem, PotentialSpec
from src.sturm_liouville.quadrature import cosine_moments
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

METHODS = ("auto", "identity", "quadrature")

logger = get_logger("sturm_liouville")


# ── Public API ──────────────────────────────────────────────────────────────


def potential_moments(potential: PotentialSpec, count: int, method: str = "auto") -> np.ndarray:
    """``Q(p)`` for ``p = 0 .. count-1``."""
    if method not in METHODS:
        raise ValueError(f"unknown assembly method {method!r}; expected one of {METHODS}")
    if method == "identity" and potential.cosine is None:
        raise ValueError("identity assembly needs a cosine expansion of q")

    if method == "quadrature" or potential.cosine is None:
        return cosine_moments(potential, count)

    a = potential.cosine.coefficients[:count]
    moments = np.zeros(count)
    moments[: a.size] = a * (math.pi / 2.0)
    moments[0] = a[0] * math.pi
    return moments


def multiplication_matrix(potential: PotentialSpec, basis: Basis, N: int, method: str = "auto"):
    """``(q e_j, e_k)`` for the first N basis functions."""
    basis = Basis(basis)
    k = basis.indices(N)
    Q = potential_moments(potential, int(2 * k[-1]) + 1, method)
    J, K = np.meshgrid(k, k, indexing="ij")
    if basis is Basis.DIRICHLET:
        return (Q[np.abs(J - K)] - Q[J + K]) / math.pi

    s = np.ones(N)
    s[0] = 1.0 / math.sqrt(2.0)
    return np.outer(s, s) * (Q[J + K] + Q[np.abs(J - K)]) / math.pi


def assemble_gram(bvp: BoundaryValueProblem, method: str = "auto") -> RitzProblem:
    """Truncated Ritz problem of *bvp* in its own basis.

    With a known exact solution the right-hand side is ``A_N x``, which
    makes the truncated system consistent; otherwise it is the projection
    of ``y``.

    Raises
    ------
    QuadratureNotConverged
        If a trapezoid self-estimate exceeds ``1e-9``.
    """
    N = bvp.truncation_order
    k = bvp.basis.indices(N).astype(float)
    gram = np.diag(k**2) + multiplication_matrix(bvp.potential, bvp.basis, N, method)

    spectrum = bvp.spectrum
    exact = bvp.exact_coefficients
    if exact is not None:
        problem = RitzProblem(
            spectrum,
            DenseGram(gram),
            spectrum.vector(gram @ exact),
            exact=spectrum.vector(exact),
        )
    else:
        problem = RitzProblem(spectrum, DenseGram(gram), spectrum.vector(bvp.rhs_coefficients))

    logger.debug(
        "Assembled Gram matrix",
        name=bvp.name,
        basis=bvp.basis.value,
        N=N,
        method=method,
        manufactured=exact is not None,
    )
    return problem
