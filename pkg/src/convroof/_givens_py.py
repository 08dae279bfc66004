"""Pure-Python (numpy) kernels for the inverse-Givens chart of St(k, r).

Same contract as the compiled module ``_givens_cy``; used as fallback when
the extension is unavailable or when CONVROOF_PURE_PYTHON is set.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure-python"


def _apply_ginv(m: np.ndarray, s: int, th: float, ph: float) -> None:
    ct, st = np.cos(th), np.sin(th)
    em, ep = np.exp(-1j * ph), np.exp(1j * ph)
    top = m[s].copy()
    bot = m[s + 1]
    m[s] = em * (ct * top - st * bot)
    m[s + 1] = ep * (st * top + ct * bot)


def build_unitary_kernel(theta, phi, chi, s0, k: int, r: int) -> np.ndarray:
    """U(X) = [prod_f Ginv_{s_f}(theta_f, phi_f)] R with the factors given in
    product order; the product is applied right-to-left to the k-by-r block R."""
    m = np.zeros((k, r), dtype=complex)
    m[np.arange(r), np.arange(r)] = np.exp(1j * chi)
    for f in range(len(s0) - 1, -1, -1):
        _apply_ginv(m, s0[f], theta[f], phi[f])
    return m


def grad_build_unitary_kernel(theta, phi, chi, s0, c, k: int, r: int):
    """Returns (U, dU) with dU of shape (2*P + r, k, r).

    Coordinate m of dU is the derivative of U with respect to angle slot m:
    theta slots first (P of them), then phi slots, then the r column phases.
    Product rule via suffix row-pairs and an incrementally updated k-by-k
    prefix operator; each coordinate costs O(k*r).
    """
    n_f = len(s0)
    n_pairs = len(theta)
    dim = 2 * n_pairs + r

    m = np.zeros((k, r), dtype=complex)
    m[np.arange(r), np.arange(r)] = np.exp(1j * chi)
    suffix = np.empty((n_f, 2, r), dtype=complex)
    for f in range(n_f - 1, -1, -1):
        suffix[f, 0] = m[s0[f]]
        suffix[f, 1] = m[s0[f] + 1]
        _apply_ginv(m, s0[f], theta[f], phi[f])
    u = m.copy()

    out = np.zeros((dim, k, r), dtype=complex)
    prefix = np.eye(k, dtype=complex)
    for f in range(n_f):
        s = s0[f]
        ct, st = np.cos(theta[f]), np.sin(theta[f])
        em, ep = np.exp(-1j * phi[f]), np.exp(1j * phi[f])
        a, b = suffix[f, 0], suffix[f, 1]
        col_s = prefix[:, s]
        col_s1 = prefix[:, s + 1]

        dth_top = em * (-st * a - ct * b)
        dth_bot = ep * (ct * a - st * b)
        out[c[f]] = np.outer(col_s, dth_top) + np.outer(col_s1, dth_bot)

        g_top = em * (ct * a - st * b)
        g_bot = ep * (st * a + ct * b)
        out[n_pairs + c[f]] = np.outer(col_s, -1j * g_top) + np.outer(col_s1, 1j * g_bot)

        new_s = ct * em * col_s + st * ep * col_s1
        new_s1 = -st * em * col_s + ct * ep * col_s1
        prefix[:, s] = new_s
        prefix[:, s + 1] = new_s1

    for i in range(r):
        out[2 * n_pairs + i, :, i] = 1j * np.exp(1j * chi[i]) * prefix[:, i]
    return u, out
