"""Angle chart of the complex Stiefel manifold St(k, r).

A point is parameterized by a real vector X of length dim St(k, r)
= 2kr - r^2, split into theta / phi Givens angles and r column phases chi.
The chart product and its derivatives are evaluated by a compiled kernel
when available (see :func:`chart_backend`); set CONVROOF_PURE_PYTHON=1 to
force the numpy fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Callable

import numpy as np

from .convexroof import ObjectivePair, convex_sum, grad_convex_sum
from .linalg import density_eig
from .measures import MeasureHandle

if os.environ.get("CONVROOF_PURE_PYTHON"):
    from . import _givens_py as _kernels
else:
    try:
        from . import _givens_cy as _kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _givens_py as _kernels

__all__ = [
    "chart_backend",
    "dim_st",
    "build_unitary",
    "grad_build_unitary",
    "decompose_unitary",
    "grad_eh_adapt",
    "create_eh_functions",
]


def chart_backend() -> str:
    """Name of the active chart kernel backend ("compiled" or "pure-python")."""
    return _kernels.BACKEND


def _validate_kr(k: int, r: int) -> None:
    if r < 1 or k < r:
        raise ValueError(f"need k >= r >= 1, got k={k}, r={r}")


def dim_st(k: int, r: int) -> int:
    """Real dimension of St(k, r): 2kr - r^2."""
    _validate_kr(k, r)
    return 2 * k * r - r * r


@lru_cache(maxsize=None)
def _chart_layout(k: int, r: int):
    """Factor list of the chart product in left-to-right product order.

    Returns (s0, col, slot, n_pairs): for factor f, s0[f] is the 0-based upper
    row of the 2x2 Givens block, col[f] the 0-based column the factor belongs
    to when peeling, slot[f] the 0-based index into the theta (and phi) angle
    blocks.  The slot map (i-1)(k - i/2) + j is verified to be a bijection.
    """
    n_pairs = r * k - r * (r + 1) // 2
    s0, col, slot = [], [], []
    seen: set[int] = set()
    for i in range(1, r + 1):
        for j in range(1, k - i + 1):
            num = (i - 1) * (2 * k - i)
            assert num % 2 == 0, "angle index map produced a non-integer slot"
            c = num // 2 + j
            assert 1 <= c <= n_pairs and c not in seen, "angle index map is not a bijection"
            seen.add(c)
            s0.append(k - j - 1)
            col.append(i - 1)
            slot.append(c - 1)
    assert len(seen) == n_pairs
    return (
        np.asarray(s0, dtype=np.int64),
        np.asarray(col, dtype=np.int64),
        np.asarray(slot, dtype=np.int64),
        n_pairs,
    )


def _split_angles(x, k: int, r: int):
    x = np.asarray(x, dtype=float).reshape(-1)
    d = dim_st(k, r)
    if x.size != d:
        raise ValueError(f"angle vector must have length {d}, got {x.size}")
    s0, _, slot, n_pairs = _chart_layout(k, r)
    theta = np.ascontiguousarray(x[:n_pairs][slot])
    phi = np.ascontiguousarray(x[n_pairs : 2 * n_pairs][slot])
    chi = np.ascontiguousarray(x[2 * n_pairs :])
    return theta, phi, chi, s0, slot, n_pairs


def build_unitary(x, k: int, r: int) -> np.ndarray:
    """Stiefel matrix U(X) built from Givens angle factors and column phases."""
    theta, phi, chi, s0, _, _ = _split_angles(x, k, r)
    return _kernels.build_unitary_kernel(theta, phi, chi, s0, k, r)


def grad_build_unitary(x, k: int, r: int) -> np.ndarray:
    """All coordinate derivatives dU/dX_m, stacked as an array (dim, k, r)."""
    theta, phi, chi, s0, slot, _ = _split_angles(x, k, r)
    _, du = _kernels.grad_build_unitary_kernel(theta, phi, chi, s0, slot, k, r)
    return du


def decompose_unitary(u) -> np.ndarray:
    """Angle vector X with build_unitary(X, k, r) == u (roundtrip contract).

    The chart is not injective, so only the roundtrip is guaranteed.  Givens
    factors are peeled in product order, each zeroing one subdiagonal entry;
    an already-zero target yields theta = phi = 0.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2:
        raise ValueError("input must be a matrix")
    k, r = u.shape
    _validate_kr(k, r)
    if np.max(np.abs(u.conj().T @ u - np.eye(r))) > 1e-8:
        raise ValueError("input is not a Stiefel matrix (columns not orthonormal)")

    s0, col, slot, n_pairs = _chart_layout(k, r)
    m = u.copy()
    theta = np.zeros(n_pairs)
    phi = np.zeros(n_pairs)
    for f in range(len(s0)):
        s, i = int(s0[f]), int(col[f])
        a = m[s, i]
        b = m[s + 1, i]
        th = np.arctan2(abs(b), abs(a))
        ph = 0.5 * np.angle(b * np.conj(a)) if abs(a) > 0.0 and abs(b) > 0.0 else 0.0
        theta[slot[f]] = th
        phi[slot[f]] = ph
        # apply G_s (the factor's inverse), which zeroes m[s+1, i]
        ct, st = np.cos(th), np.sin(th)
        em, ep = np.exp(-1j * ph), np.exp(1j * ph)
        top = m[s].copy()
        bot = m[s + 1]
        m[s] = ep * ct * top + em * st * bot
        m[s + 1] = -ep * st * top + em * ct * bot
        m[s + 1, i] = 0.0
    chi = np.angle(np.diagonal(m)[:r])
    return np.concatenate([theta, phi, chi])


def grad_eh_adapt(x, k: int, r: int, matrix_gradient_fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Chain rule from a matrix-entry gradient of h(U) to angle coordinates.

    ``matrix_gradient_fn(U)`` must return the combined complex gradient of h
    over the entries of U (as from ``grad_convex_sum``).
    """
    u = build_unitary(x, k, r)
    gu = np.asarray(matrix_gradient_fn(u), dtype=complex)[:, :r]
    if gu.shape != (k, r):
        raise ValueError(f"matrix gradient has shape {gu.shape}, expected ({k}, {r})")
    du = grad_build_unitary(x, k, r)
    # sum of dh/dRe * dRe + dh/dIm * dIm over all entries
    return np.real(np.einsum("mij,ij->m", du.conj(), gu))


def create_eh_functions(
    rho,
    k: int,
    r: int | None = None,
    *,
    measure: MeasureHandle,
    truncation_tol: float = 1e-12,
) -> ObjectivePair:
    """Objective/gradient closures over the angle vector for a given rho.

    ``r`` defaults to the rank of rho; passing a smaller value truncates the
    spectral decomposition to the r largest eigenvalues.
    """
    spectral = density_eig(rho, truncation_tol=truncation_tol, max_rank=r)
    rr = spectral.rank
    _validate_kr(k, rr)

    def value_fn(x):
        return convex_sum(build_unitary(x, k, rr), measure, spectral)

    def gradient_fn(x):
        return grad_eh_adapt(x, k, rr, lambda u: grad_convex_sum(u, measure, spectral))

    return ObjectivePair(value_fn=value_fn, gradient_fn=gradient_fn)
