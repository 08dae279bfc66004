"""Benchmark states with analytically known convex-roof values.

Two families: isotropic states (entanglement of formation known in closed
form for all dimensions) and GHZ/W mixtures (closed-form three-tangle).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "max_entangled_state",
    "isotropic_state",
    "ghz_state",
    "w_state",
    "ghzw_mixture",
    "eof_isotropic",
    "tangle_ghzw",
]


def max_entangled_state(d: int) -> np.ndarray:
    """(1/sqrt(d)) sum_i |ii> on two d-dimensional subsystems."""
    if d < 2:
        raise ValueError("d must be >= 2")
    psi = np.zeros(d * d, dtype=complex)
    psi[np.arange(d) * (d + 1)] = 1.0 / math.sqrt(d)
    return psi


def isotropic_state(d: int, f: float) -> np.ndarray:
    """Isotropic state: fidelity-f mixture of |psi+><psi+| with white noise."""
    if not 0.0 <= f <= 1.0:
        raise ValueError("f must lie in [0, 1]")
    psi = max_entangled_state(d)
    proj = np.outer(psi, psi.conj())
    return (1.0 - f) / (d * d - 1.0) * (np.eye(d * d) - proj) + f * proj


def ghz_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[0] = psi[7] = 1.0 / math.sqrt(2.0)
    return psi


def w_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[1] = psi[2] = psi[4] = 1.0 / math.sqrt(3.0)
    return psi


def ghzw_mixture(p: float) -> np.ndarray:
    """rho_p = p |GHZ><GHZ| + (1-p) |W><W|."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    g = ghz_state()
    w = w_state()
    return p * np.outer(g, g.conj()) + (1.0 - p) * np.outer(w, w.conj())


def _h2(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def eof_isotropic(f: float, d: int) -> float:
    """Closed-form entanglement of formation of the isotropic state.

    Zero up to the separability threshold f = 1/d, then an entropic branch,
    and for d > 2 a final linear branch that reaches log2(d) at f = 1.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 0.0 <= f <= 1.0:
        raise ValueError("f must lie in [0, 1]")
    if f <= 1.0 / d:
        return 0.0
    f_lin = 4.0 * (d - 1.0) / (d * d)
    if d > 2 and f > f_lin:
        return (d * math.log2(d - 1.0)) / (d - 2.0) * (f - 1.0) + math.log2(d)
    gamma = (math.sqrt(f) + math.sqrt((d - 1.0) * (1.0 - f))) ** 2 / d
    return _h2(gamma) + (1.0 - gamma) * math.log2(d - 1.0)


def _g1(p: float) -> float:
    # lower branch of the GHZ/W three-tangle
    return p * p - (8.0 * math.sqrt(6.0) / 9.0) * math.sqrt(p * (1.0 - p) ** 3)


def _g1_prime(p: float) -> float:
    q = p * (1.0 - p) ** 3
    return 2.0 * p - (8.0 * math.sqrt(6.0) / 9.0) * (1.0 - p) ** 2 * (1.0 - 4.0 * p) / (
        2.0 * math.sqrt(q)
    )


@lru_cache(maxsize=1)
def _tangent_point() -> tuple[float, float]:
    """Point p1 where the line through (1, 1) is tangent to the lower branch."""
    p0 = 4.0 * 2.0 ** (1.0 / 3.0) / (3.0 + 4.0 * 2.0 ** (1.0 / 3.0))

    def cond(p):
        return _g1_prime(p) * (1.0 - p) - (1.0 - _g1(p))

    p1 = brentq(cond, p0 + 1e-9, 1.0 - 1e-9, xtol=1e-15, rtol=8.9e-16)
    return p1, _g1_prime(p1)


def tangle_ghzw(p: float) -> float:
    """Closed-form three-tangle of the GHZ/W mixture rho_p.

    Vanishes on the low-p plateau, follows the analytic lower branch up to
    the tangent point p1 ~ 0.7087, then the tangent line through (1, 1).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    p1, slope = _tangent_point()
    if p <= p1:
        return max(0.0, _g1(p))
    return 1.0 - slope * (1.0 - p)
