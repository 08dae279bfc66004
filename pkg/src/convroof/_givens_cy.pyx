# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the inverse-Givens chart of St(k, r).

Same contract as the pure-Python module ``_givens_py``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND = "compiled"

ctypedef double complex cplx


cdef inline cplx _expi(double x) noexcept:
    return cos(x) + 1j * sin(x)


cdef void _apply_ginv(cplx[:, ::1] m, Py_ssize_t s, double th, double ph, Py_ssize_t r) noexcept:
    cdef double ct = cos(th), st = sin(th)
    cdef cplx em = _expi(-ph), ep = _expi(ph)
    cdef cplx top, bot
    cdef Py_ssize_t j
    for j in range(r):
        top = m[s, j]
        bot = m[s + 1, j]
        m[s, j] = em * (ct * top - st * bot)
        m[s + 1, j] = ep * (st * top + ct * bot)


def build_unitary_kernel(double[::1] theta, double[::1] phi, double[::1] chi,
                         long[::1] s0, int k, int r):
    cdef cnp.ndarray[cplx, ndim=2] m_arr = np.zeros((k, r), dtype=np.complex128)
    cdef cplx[:, ::1] m = m_arr
    cdef Py_ssize_t i, f
    for i in range(r):
        m[i, i] = _expi(chi[i])
    for f in range(s0.shape[0] - 1, -1, -1):
        _apply_ginv(m, s0[f], theta[f], phi[f], r)
    return m_arr


def grad_build_unitary_kernel(double[::1] theta, double[::1] phi, double[::1] chi,
                              long[::1] s0, long[::1] c, int k, int r):
    cdef Py_ssize_t n_f = s0.shape[0]
    cdef Py_ssize_t n_pairs = theta.shape[0]
    cdef Py_ssize_t dim = 2 * n_pairs + r

    cdef cnp.ndarray[cplx, ndim=2] u_arr = np.zeros((k, r), dtype=np.complex128)
    cdef cplx[:, ::1] m = u_arr
    cdef cnp.ndarray[cplx, ndim=3] suf_arr = np.empty((max(n_f, 1), 2, r), dtype=np.complex128)
    cdef cplx[:, :, ::1] suf = suf_arr
    cdef cnp.ndarray[cplx, ndim=3] out_arr = np.zeros((dim, k, r), dtype=np.complex128)
    cdef cplx[:, :, ::1] out = out_arr
    cdef cnp.ndarray[cplx, ndim=2] pref_arr = np.eye(k, dtype=np.complex128)
    cdef cplx[:, ::1] pref = pref_arr

    cdef Py_ssize_t i, j, f, s, slot
    cdef double ct, st
    cdef cplx em, ep, a, b, dth_top, dth_bot, g_top, g_bot, ps, ps1, rot

    for i in range(r):
        m[i, i] = _expi(chi[i])
    for f in range(n_f - 1, -1, -1):
        s = s0[f]
        for j in range(r):
            suf[f, 0, j] = m[s, j]
            suf[f, 1, j] = m[s + 1, j]
        _apply_ginv(m, s, theta[f], phi[f], r)

    for f in range(n_f):
        s = s0[f]
        slot = c[f]
        ct = cos(theta[f])
        st = sin(theta[f])
        em = _expi(-phi[f])
        ep = _expi(phi[f])
        for i in range(k):
            ps = pref[i, s]
            ps1 = pref[i, s + 1]
            for j in range(r):
                a = suf[f, 0, j]
                b = suf[f, 1, j]
                dth_top = em * (-st * a - ct * b)
                dth_bot = ep * (ct * a - st * b)
                out[slot, i, j] = ps * dth_top + ps1 * dth_bot
                g_top = em * (ct * a - st * b)
                g_bot = ep * (st * a + ct * b)
                out[n_pairs + slot, i, j] = -1j * ps * g_top + 1j * ps1 * g_bot
            # prefix update: pref <- pref @ G_f (columns s, s+1 only)
            pref[i, s] = ct * em * ps + st * ep * ps1
            pref[i, s + 1] = -st * em * ps + ct * ep * ps1

    for i in range(r):
        rot = 1j * _expi(chi[i])
        for j in range(k):
            out[2 * n_pairs + i, j, i] = rot * pref[j, i]
    return u_arr.copy(), out_arr
