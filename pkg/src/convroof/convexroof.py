"""Pure-state decompositions parameterized by Stiefel matrices and the
convex-sum objective h(U) with its analytic gradient."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import SpectralData, density_eig
from .measures import MeasureHandle

__all__ = [
    "ObjectivePair",
    "ps_decomposition",
    "convex_sum",
    "grad_convex_sum",
    "create_convex_functions",
]

_P_TOL = 1e-14


@dataclass(frozen=True)
class ObjectivePair:
    """Objective and gradient closures over a single matrix/vector argument."""

    value_fn: Callable[[np.ndarray], float]
    gradient_fn: Callable[[np.ndarray], np.ndarray]


def _first_r_columns(u, r: int) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2:
        raise ValueError("parameterization must be a matrix")
    if u.shape[1] < r:
        raise ValueError(
            f"parameterization has {u.shape[1]} columns but rank is {r}"
        )
    if u.shape[0] < r:
        raise ValueError(f"need at least {r} rows, got {u.shape[0]}")
    return u[:, :r]


def ps_decomposition(u, spectral: SpectralData) -> tuple[np.ndarray, np.ndarray]:
    """Pure-state decomposition (p_i, psi_i) parameterized by ``u``.

    Only the first ``spectral.rank`` columns of ``u`` are used, so a full
    k-by-k unitary is accepted.  Returns the probabilities as a length-k
    vector and the states as the columns of a d-by-k matrix.  Rows of ``u``
    giving p_i = 0 yield a placeholder basis state with zero weight.
    """
    r = spectral.rank
    ur = _first_r_columns(u, r)
    # psi_tilde_i = sum_j U_ij sqrt(lambda_j) chi_j
    tilde = spectral.eigenvectors @ (ur * np.sqrt(spectral.eigenvalues)).T
    p = np.sum(np.abs(tilde) ** 2, axis=0)
    states = np.empty_like(tilde)
    for i in range(tilde.shape[1]):
        if p[i] > _P_TOL:
            states[:, i] = tilde[:, i] / math.sqrt(p[i])
        else:
            states[:, i] = 0.0
            states[0, i] = 1.0
    return p, states


def convex_sum(u, measure: MeasureHandle, spectral: SpectralData) -> float:
    """Objective h(U) = sum_i p_i(U) m(psi_i(U)); terms with p_i ~ 0 are skipped."""
    p, states = ps_decomposition(u, spectral)
    total = 0.0
    for i in range(p.size):
        if p[i] > _P_TOL:
            total += p[i] * measure.evaluate(states[:, i])
    return total


def grad_convex_sum(
    u,
    measure: MeasureHandle,
    spectral: SpectralData,
) -> np.ndarray:
    """Combined complex gradient of h(U) over the entries of ``u``.

    The returned matrix matches the shape of ``u``; columns beyond the rank
    carry zero gradient (h does not depend on them).  Rows with vanishing
    weight p_alpha contribute only through terms that themselves vanish, so
    they are skipped to avoid the 1/p_alpha singularity.
    """
    u = np.asarray(u, dtype=complex)
    r = spectral.rank
    ur = _first_r_columns(u, r)
    lam = spectral.eigenvalues
    chi = spectral.eigenvectors
    p, states = ps_decomposition(ur, spectral)
    k = ur.shape[0]

    m_vals = np.zeros(k)
    a_vals = np.zeros(k)  # Re <psi_alpha | grad m(psi_alpha)>
    w = np.zeros((k, r), dtype=complex)  # W[alpha, beta] = <chi_beta | grad m(psi_alpha)>
    for alpha in range(k):
        if p[alpha] <= _P_TOL:
            continue
        psi = states[:, alpha]
        gm = measure.gradient(psi)
        m_vals[alpha] = measure.evaluate(psi)
        a_vals[alpha] = np.real(np.vdot(psi, gm))
        w[alpha, :] = chi.conj().T @ gm

    grad_r = ((2.0 * m_vals - a_vals)[:, None] * lam[None, :]) * ur
    grad_r += np.sqrt(np.outer(p, lam)) * w

    grad = np.zeros_like(u)
    grad[:, :r] = grad_r
    return grad


def create_convex_functions(
    rho,
    measure: MeasureHandle,
    truncation_tol: float = 1e-12,
    max_rank: int | None = None,
) -> ObjectivePair:
    """Bundle eigendecomposition, h(U) and grad h(U) into closures over U."""
    spectral = density_eig(rho, truncation_tol=truncation_tol, max_rank=max_rank)
    return ObjectivePair(
        value_fn=lambda u: convex_sum(u, measure, spectral),
        gradient_fn=lambda u: grad_convex_sum(u, measure, spectral),
    )
