"""Minimization of convex-sum objectives: geodesic conjugate gradient on the
unitary group and BFGS over the Stiefel angle chart, with shared Wolfe line
searches and termination logic."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import line_search as _wolfe_line_search
from scipy.optimize._linesearch import LineSearchWarning

from .convexroof import ObjectivePair, create_convex_functions
from .linalg import as_rng, complete_gram_schmidt, density_eig, rand_unitary
from .measures import MeasureHandle
from .stiefel import create_eh_functions, dim_st

__all__ = [
    "TerminationOptions",
    "OptimizationResult",
    "riemannian_gradient",
    "minimize1d_exp",
    "minimize1d_lin",
    "cg_min",
    "bfgs_min",
    "check_termination",
    "convex_roof_minimize",
]

STATUS_MAX_ITER = "max-iter"
STATUS_TOL_FUN = "tol-fun"
STATUS_TOL_G = "tol-g"
STATUS_TOL_X = "tol-x"

_UNITARITY_DRIFT = 1e-8


@dataclass(frozen=True)
class TerminationOptions:
    max_iter: int = 1000
    tol_fun: float = 1e-12
    tol_g: float = 1e-10
    tol_x: float = 1e-10
    reset_interval: int = 10  # mod-2pi angle reset period (BFGS only)

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if min(self.tol_fun, self.tol_g, self.tol_x) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class OptimizationResult:
    value: float
    point: np.ndarray
    status: str
    fvals: list[float] = field(default_factory=list)
    xvals: list[np.ndarray] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.fvals) - 1


def check_termination(iteration: int, df: float, gnorm: float, dxnorm: float,
                      options: TerminationOptions) -> str | None:
    """First satisfied criterion in the fixed order max-iter, tol-fun, tol-g, tol-x."""
    if iteration >= options.max_iter:
        return STATUS_MAX_ITER
    if abs(df) < options.tol_fun:
        return STATUS_TOL_FUN
    if gnorm < options.tol_g:
        return STATUS_TOL_G
    if dxnorm < options.tol_x:
        return STATUS_TOL_X
    return None


def riemannian_gradient(u, euclidean_grad) -> np.ndarray:
    """Anti-Hermitian gradient on the unitary group from the Euclidean one.

    G = (A - A^T)/2 + i (S + S^T)/2 with A = ReU^T gR + ImU^T gI and
    S = ReU^T gI - ImU^T gR, where g = gR + i gI is the combined gradient.
    """
    u = np.asarray(u, dtype=complex)
    g = np.asarray(euclidean_grad, dtype=complex)
    if u.shape != g.shape or u.shape[0] != u.shape[1]:
        raise ValueError(f"shape mismatch: U {u.shape}, gradient {g.shape}")
    ur, ui = u.real, u.imag
    gr, gi = g.real, g.imag
    a = ur.T @ gr + ui.T @ gi
    s = ur.T @ gi - ui.T @ gr
    return 0.5 * (a - a.T) + 0.5j * (s + s.T)


def _real_pairing(a, b) -> float:
    # sum of Re(a)Re(b) + Im(a)Im(b) over entries
    return float(np.real(np.vdot(a, b)))


def _scalar_wolfe(phi, dphi, phi0, dphi0, t_scale, c2):
    """Strong-Wolfe search on a scalar function via scipy's line_search.

    Returns (t, phi_t) with t = 0 on failure (caller falls back to Armijo)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LineSearchWarning)
        res = _wolfe_line_search(
            lambda z: phi(z[0]),
            lambda z: np.array([dphi(z[0])]),
            np.array([0.0]),
            np.array([t_scale]),
            gfk=np.array([dphi0 / t_scale]) if t_scale != 0 else None,
            old_fval=phi0,
            c1=1e-4,
            c2=c2,
            maxiter=25,
        )
    alpha = res[0]
    if alpha is None or not np.isfinite(res[3]):
        return 0.0, phi0
    return alpha * t_scale, float(res[3])


def _armijo_backtrack(phi, phi0, dphi0, t0, max_halvings=30):
    t = t0
    for _ in range(max_halvings):
        ft = phi(t)
        if np.isfinite(ft) and ft <= phi0 + 1e-4 * t * dphi0:
            return t, float(ft)
        t *= 0.5
    return 0.0, phi0


class _Geodesic:
    """t -> exp(t X) for anti-Hermitian X from a single eigendecomposition."""

    def __init__(self, x):
        w, v = np.linalg.eigh(1j * np.asarray(x, dtype=complex))
        self._w = w
        self._v = v

    def __call__(self, t: float) -> np.ndarray:
        v = self._v
        return (v * np.exp(-1j * t * self._w)) @ v.conj().T


def minimize1d_exp(value_fn, grad_fn, u, x_dir, *, c2=0.4, f0=None, g0=None):
    """Derivative-based minimization of t -> value_fn(U exp(t X)).

    Returns (t, U_new, f_new, geo).  A non-descent direction yields t = 0.
    Strong Wolfe conditions are enforced; falls back to Armijo backtracking.
    ``f0``/``g0`` may carry precomputed objective/gradient values at ``u``.
    """
    geo = _Geodesic(x_dir)
    f0 = value_fn(u) if f0 is None else f0
    g0 = grad_fn(u) if g0 is None else g0
    dphi0 = _real_pairing(u @ x_dir, g0)
    if dphi0 >= 0.0:
        return 0.0, u, f0, geo

    cache: dict[float, np.ndarray] = {}

    def point(t):
        if t not in cache:
            cache[t] = u @ geo(t)
        return cache[t]

    def phi(t):
        return value_fn(point(t))

    def dphi(t):
        ut = point(t)
        return _real_pairing(ut @ x_dir, grad_fn(ut))

    xnorm = np.linalg.norm(x_dir)
    t_scale = 1.0 / xnorm if xnorm > 0 else 1.0
    t, ft = _scalar_wolfe(phi, dphi, f0, dphi0, t_scale, c2)
    if t == 0.0:
        t, ft = _armijo_backtrack(phi, f0, dphi0, t_scale)
    if t == 0.0:
        return 0.0, u, f0, geo
    return t, point(t), ft, geo


def minimize1d_lin(value_fn, grad_fn, x, s_dir, *, c2=0.9, f0=None, g0=None):
    """Derivative-based minimization of t -> value_fn(X + t S)."""
    x = np.asarray(x, dtype=float)
    s_dir = np.asarray(s_dir, dtype=float)
    f0 = value_fn(x) if f0 is None else f0
    g0 = grad_fn(x) if g0 is None else g0
    dphi0 = float(np.dot(g0, s_dir))
    if dphi0 >= 0.0:
        return 0.0, x, f0

    def phi(t):
        return value_fn(x + t * s_dir)

    def dphi(t):
        return float(np.dot(grad_fn(x + t * s_dir), s_dir))

    t, ft = _scalar_wolfe(phi, dphi, f0, dphi0, 1.0, c2)
    if t == 0.0:
        t, ft = _armijo_backtrack(phi, f0, dphi0, 1.0)
    if t == 0.0:
        return 0.0, x, f0
    return t, x + t * s_dir, ft


def _frob(m) -> float:
    return float(np.linalg.norm(m))


def cg_min(value_fn, grad_fn, u0, options: TerminationOptions | None = None) -> OptimizationResult:
    """Geodesic conjugate gradient on the unitary group U(k).

    ``grad_fn`` must return the combined complex Euclidean gradient over the
    entries of U.  Uses the modified Polak-Ribiere parameter with the previous
    gradient parallel-transported along the accepted geodesic step.
    """
    opts = options or TerminationOptions()
    u = np.asarray(u0, dtype=complex)
    k = u.shape[0]
    if u.ndim != 2 or u.shape[1] != k:
        raise ValueError("initial point must be a square unitary matrix")
    if np.max(np.abs(u.conj().T @ u - np.eye(k))) > 1e-8:
        raise ValueError("initial point is not unitary")

    f = float(value_fn(u))
    if not np.isfinite(f):
        raise ValueError("objective is not finite at the initial point")
    ge = grad_fn(u)
    g = riemannian_gradient(u, ge)
    fvals = [f]
    xvals = [u.copy()]
    if _frob(g) < opts.tol_g:
        return OptimizationResult(value=f, point=u, status=STATUS_TOL_G, fvals=fvals, xvals=xvals)

    x_dir = -g
    restart_period = 5 * dim_st(k, k)
    status = STATUS_MAX_ITER
    best_f, best_u = f, u.copy()
    for it in range(1, opts.max_iter + 1):
        if _real_pairing(u @ x_dir, ge) >= 0.0:
            x_dir = -g  # non-descent CG direction: restart to steepest descent
        t, u_new, f_new, geo = minimize1d_exp(value_fn, grad_fn, u, x_dir, f0=f, g0=ge)

        drift = np.max(np.abs(u_new.conj().T @ u_new - np.eye(k)))
        if drift > _UNITARITY_DRIFT:
            u_new = complete_gram_schmidt(u_new)
            f_new = float(value_fn(u_new))

        ge_new = grad_fn(u_new)
        g_new = riemannian_gradient(u_new, ge_new)
        df = f - f_new
        dx = _frob(u_new - u)
        if f_new < best_f:
            best_f, best_u = f_new, u_new.copy()
        fvals.append(best_f)
        xvals.append(u_new.copy())

        tag = check_termination(it, df, _frob(g_new), dx, opts)
        if tag is not None:
            status = tag
            break

        gg = _real_pairing(g, g)
        transported = geo(t / 2.0) @ g @ geo(-t / 2.0)
        gamma = _real_pairing(g_new - transported, g_new) / gg if gg > 0 else 0.0
        gamma = max(gamma, 0.0)
        if it % restart_period == 0:
            gamma = 0.0
        x_dir = -g_new + gamma * x_dir
        u, f, ge, g = u_new, f_new, ge_new, g_new

    return OptimizationResult(value=best_f, point=best_u, status=status, fvals=fvals, xvals=xvals)


def bfgs_min(value_fn, grad_fn, x0, options: TerminationOptions | None = None) -> OptimizationResult:
    """BFGS quasi-Newton minimization over a real angle vector.

    Standard rank-two inverse-Hessian update with a curvature guard; the
    angles are reduced modulo 2*pi every ``options.reset_interval`` iterations
    (the objective is 2*pi-periodic in every coordinate).
    """
    opts = options or TerminationOptions()
    x = np.asarray(x0, dtype=float).reshape(-1).copy()
    n = x.size

    f = float(value_fn(x))
    if not np.isfinite(f):
        raise ValueError("objective is not finite at the initial point")
    g = np.asarray(grad_fn(x), dtype=float)
    fvals = [f]
    xvals = [x.copy()]
    if np.linalg.norm(g) < opts.tol_g:
        return OptimizationResult(value=f, point=x, status=STATUS_TOL_G, fvals=fvals, xvals=xvals)

    h = np.eye(n)
    s_dir = -g
    status = STATUS_MAX_ITER
    best_f, best_x = f, x.copy()
    for it in range(1, opts.max_iter + 1):
        if float(np.dot(g, s_dir)) >= 0.0:
            h = np.eye(n)
            s_dir = -g
        t, x_new, f_new = minimize1d_lin(value_fn, grad_fn, x, s_dir, f0=f, g0=g)
        g_new = np.asarray(grad_fn(x_new), dtype=float)
        df = f - f_new
        dx = float(np.linalg.norm(x_new - x))
        if f_new < best_f:
            best_f, best_x = f_new, x_new.copy()
        fvals.append(best_f)
        xvals.append(x_new.copy())

        tag = check_termination(it, df, float(np.linalg.norm(g_new)), dx, opts)
        if tag is not None:
            status = tag
            break

        delta = x_new - x
        gamma = g_new - g
        dg = float(np.dot(delta, gamma))
        if dg > 1e-12 * np.linalg.norm(delta) * np.linalg.norm(gamma):
            hg = h @ gamma
            h = (
                h
                + (1.0 + float(np.dot(gamma, hg)) / dg) * np.outer(delta, delta) / dg
                - (np.outer(delta, hg) + np.outer(hg, delta)) / dg
            )
        s_dir = -(h @ g_new)
        x, f, g = x_new, f_new, g_new
        if opts.reset_interval > 0 and it % opts.reset_interval == 0:
            x = np.mod(x, 2.0 * math.pi)

    return OptimizationResult(value=best_f, point=best_x, status=status, fvals=fvals, xvals=xvals)


def convex_roof_minimize(
    rho,
    measure: MeasureHandle,
    *,
    algorithm: str = "cg",
    k: int | None = None,
    rank: int | None = None,
    restarts: int = 5,
    seed=None,
    options: TerminationOptions | None = None,
) -> OptimizationResult:
    """Multi-restart driver around cg_min / bfgs_min for a density matrix.

    ``k`` defaults to rank + 4.  Each restart draws a fresh random initial
    point from the given seed; the best run (lowest final value) is returned.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    spectral = density_eig(rho, max_rank=rank)
    r = spectral.rank
    kk = (r + 4) if k is None else int(k)
    if kk < r:
        raise ValueError(f"cardinality k={kk} is below the rank {r}")
    rng = as_rng(seed)

    best: OptimizationResult | None = None
    if algorithm == "cg":
        pair = create_convex_functions(rho, measure, max_rank=rank)
        for _ in range(restarts):
            u0 = rand_unitary(kk, kk, rng)
            res = cg_min(pair.value_fn, pair.gradient_fn, u0, options)
            if best is None or res.value < best.value:
                best = res
    elif algorithm == "bfgs":
        pair = create_eh_functions(rho, kk, r, measure=measure)
        d = dim_st(kk, r)
        for _ in range(restarts):
            x0 = 2.0 * math.pi * rng.standard_normal(d)
            res = bfgs_min(pair.value_fn, pair.gradient_fn, x0, options)
            if best is None or res.value < best.value:
                best = res
    else:
        raise ValueError(f"unknown algorithm {algorithm!r} (expected 'cg' or 'bfgs')")
    return best
