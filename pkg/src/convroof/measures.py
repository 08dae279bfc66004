"""Pure-state entanglement monotones and their analytic gradients.

Gradients follow the combined-real convention: entry j of a gradient is
``df/dRe(psi_j) + i * df/dIm(psi_j)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import ptrace

__all__ = [
    "MeasureHandle",
    "NonSmoothPointWarning",
    "entropy_of_entanglement",
    "grad_entropy_of_entanglement",
    "eof2x2",
    "tangle",
    "grad_tangle",
    "meyer_wallach",
    "grad_meyer_wallach",
    "get_measure",
    "register_measure",
    "measure_names",
]

_LN2 = math.log(2.0)
# Loose enough to admit finite-difference probes (step 1e-5) off the unit
# sphere; the analytic gradients treat all amplitudes as free variables.
_NORM_TOL = 1e-4
_EIG_CLAMP = 1e-14


class NonSmoothPointWarning(UserWarning):
    """Gradient requested at a point where the measure is not differentiable."""


@dataclass(frozen=True)
class MeasureHandle:
    """An entanglement monotone bundled with its gradient."""

    name: str
    evaluate: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray]


def _check_state(psi, dim=None) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if dim is not None and psi.size != dim:
        raise ValueError(f"state must have dimension {dim}, got {psi.size}")
    if abs(np.linalg.norm(psi) - 1.0) > _NORM_TOL:
        raise ValueError("state vector is not normalized")
    return psi


def _bipartite_shape(psi, dims) -> tuple[int, int]:
    if len(dims) != 2:
        raise ValueError("entropy of entanglement needs exactly two subsystem dims")
    d1, d2 = int(dims[0]), int(dims[1])
    if d1 * d2 != psi.size:
        raise ValueError(f"dims {dims} do not match state dimension {psi.size}")
    return d1, d2


def entropy_of_entanglement(psi, dims) -> float:
    """Von Neumann entropy (base 2) of the reduced state of the first subsystem."""
    psi = _check_state(psi)
    d1, d2 = _bipartite_shape(psi, dims)
    m = psi.reshape(d1, d2)
    red = m @ m.conj().T
    mu = np.linalg.eigvalsh(red)
    mu = mu[mu > 0.0]
    return float(-np.sum(mu * np.log2(mu)))


def grad_entropy_of_entanglement(psi, dims) -> np.ndarray:
    """Analytic gradient of :func:`entropy_of_entanglement`.

    The matrix derivative of -tr(X log X) is -log(X^T) - I in natural log;
    the result is rescaled by 1/ln(2) to match the base-2 value.  Eigenvalues
    of the reduced state are clamped at 1e-14 before the logarithm.
    """
    psi = _check_state(psi)
    d1, d2 = _bipartite_shape(psi, dims)
    m = psi.reshape(d1, d2)
    red = m @ m.conj().T
    mu, v = np.linalg.eigh(red)
    if np.min(mu) < _EIG_CLAMP:
        warnings.warn(
            "reduced state is near-singular; entropy gradient is clamped",
            NonSmoothPointWarning,
            stacklevel=2,
        )
    mu = np.maximum(mu, _EIG_CLAMP)
    log_red = (v * np.log(mu)) @ v.conj().T
    # grad_X of -tr(X log X) is -log(X^T) - I; Hermitian since X is.
    gs = (-log_red.conj() - np.eye(d1)) / _LN2
    return (2.0 * gs.T @ m).reshape(-1)


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


_SY_SY = None


def eof2x2(rho) -> float:
    """Entanglement of formation of a two-qubit density matrix (Wootters)."""
    global _SY_SY
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("eof2x2 requires a 4x4 density matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8 or abs(np.trace(rho).real - 1.0) > 1e-8:
        raise ValueError("input is not a valid density matrix")
    if _SY_SY is None:
        sy = np.array([[0.0, -1j], [1j, 0.0]])
        _SY_SY = np.kron(sy, sy)
    rho_tilde = _SY_SY @ rho.conj() @ _SY_SY
    ev = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sqrt(np.clip(ev.real, 0.0, None))
    lam = np.sort(lam)[::-1]
    c = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
    return _binary_entropy((1.0 + math.sqrt(max(0.0, 1.0 - c * c))) / 2.0)


# Monomials of the tangle polynomial d = d1 - 2*d2 + 4*d3, as
# (coefficient, 0-based amplitude indices).
_TANGLE_TERMS = (
    [(1.0, (0, 0, 7, 7)), (1.0, (1, 1, 6, 6)), (1.0, (2, 2, 5, 5)), (1.0, (4, 4, 3, 3))]
    + [
        (-2.0, (0, 7, 3, 4)),
        (-2.0, (0, 7, 5, 2)),
        (-2.0, (0, 7, 6, 1)),
        (-2.0, (3, 4, 5, 2)),
        (-2.0, (3, 4, 6, 1)),
        (-2.0, (5, 2, 6, 1)),
    ]
    + [(4.0, (0, 6, 5, 3)), (4.0, (7, 1, 2, 4))]
)

_TANGLE_SMOOTH_TOL = 1e-10


def _tangle_poly(psi) -> complex:
    d = 0.0 + 0.0j
    for c, idx in _TANGLE_TERMS:
        d += c * psi[idx[0]] * psi[idx[1]] * psi[idx[2]] * psi[idx[3]]
    return d


def tangle(psi) -> float:
    """Three-tangle of a three-qubit pure state, tau = 4 |d1 - 2 d2 + 4 d3|."""
    psi = _check_state(psi, dim=8)
    return 4.0 * abs(_tangle_poly(psi))


def grad_tangle(psi) -> np.ndarray:
    """Analytic gradient of the three-tangle.

    At tau = 0 the modulus is not differentiable; a zero vector is returned
    (zero lies in the subdifferential there) and a NonSmoothPointWarning is
    emitted.
    """
    psi = _check_state(psi, dim=8)
    d = _tangle_poly(psi)
    if abs(d) <= _TANGLE_SMOOTH_TOL:
        warnings.warn(
            "tangle is non-differentiable at tau = 0; returning zero gradient",
            NonSmoothPointWarning,
            stacklevel=2,
        )
        return np.zeros(8, dtype=complex)
    dd = np.zeros(8, dtype=complex)
    for c, idx in _TANGLE_TERMS:
        for pos in range(4):
            rest = c
            for q in range(4):
                if q != pos:
                    rest = rest * psi[idx[q]]
            dd[idx[pos]] += rest
    return (4.0 / abs(d)) * dd.conj() * d


def _qubit_count(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or (1 << n) != dim:
        raise ValueError(f"state dimension {dim} is not a power of two")
    return n


def meyer_wallach(psi, n_qubits: int | None = None) -> float:
    """Meyer-Wallach measure 2*[1 - (1/N) sum_k tr(rho_k^2)] for N qubits."""
    psi = _check_state(psi)
    n = _qubit_count(psi.size) if n_qubits is None else int(n_qubits)
    if psi.size != 1 << n:
        raise ValueError(f"state dimension {psi.size} does not match {n} qubits")
    rho = np.outer(psi, psi.conj())
    dims = [2] * n
    purity_sum = 0.0
    for k in range(1, n + 1):
        rk = ptrace(rho, dims, keep=[k])
        purity_sum += np.trace(rk @ rk).real
    return 2.0 * (1.0 - purity_sum / n)


def grad_meyer_wallach(psi, n_qubits: int | None = None) -> np.ndarray:
    """Analytic gradient of the Meyer-Wallach measure."""
    psi = _check_state(psi)
    n = _qubit_count(psi.size) if n_qubits is None else int(n_qubits)
    if psi.size != 1 << n:
        raise ValueError(f"state dimension {psi.size} does not match {n} qubits")
    grad = np.zeros(psi.size, dtype=complex)
    for k in range(1, n + 1):
        left = 1 << (k - 1)
        right = 1 << (n - k)
        t = psi.reshape(left, 2, right)
        rho_k = np.einsum("aib,ajb->ij", t, t.conj())
        grad += np.einsum("ajb,ij->aib", t, rho_k).reshape(-1)
    return (-8.0 / n) * grad


# --- registry -------------------------------------------------------------

_REGISTRY: dict[str, Callable[[int], MeasureHandle]] = {}


def register_measure(name: str, factory: Callable[[int], MeasureHandle]) -> None:
    """Register a measure factory keyed by name.

    ``factory(dim)`` must return a MeasureHandle whose evaluate/gradient pair
    accepts state vectors of the given Hilbert-space dimension.
    """
    _REGISTRY[name] = factory


def measure_names() -> list[str]:
    return sorted(_REGISTRY)


def get_measure(name: str, dim: int, dims=None) -> MeasureHandle:
    """Look up a measure by name for states of dimension ``dim``.

    For "entropy" the bipartition can be given via ``dims``; it defaults to
    the square split (sqrt(dim), sqrt(dim)).
    """
    if name == "entropy":
        if dims is None:
            d1 = math.isqrt(dim)
            if d1 * d1 != dim:
                raise ValueError(
                    f"dimension {dim} is not a perfect square; pass explicit dims"
                )
            dims = (d1, d1)
        dims = (int(dims[0]), int(dims[1]))
        if dims[0] * dims[1] != dim:
            raise ValueError(f"dims {dims} do not match dimension {dim}")
        return MeasureHandle(
            name="entropy",
            evaluate=lambda psi, _d=dims: entropy_of_entanglement(psi, _d),
            gradient=lambda psi, _d=dims: grad_entropy_of_entanglement(psi, _d),
        )
    if name not in _REGISTRY:
        raise KeyError(f"unknown measure {name!r}; known: {['entropy'] + measure_names()}")
    return _REGISTRY[name](dim)


def _tangle_factory(dim: int) -> MeasureHandle:
    if dim != 8:
        raise ValueError("tangle requires Hilbert-space dimension 8")
    return MeasureHandle(name="tangle", evaluate=tangle, gradient=grad_tangle)


def _meyer_wallach_factory(dim: int) -> MeasureHandle:
    n = _qubit_count(dim)
    return MeasureHandle(
        name="meyer-wallach",
        evaluate=lambda psi: meyer_wallach(psi, n),
        gradient=lambda psi: grad_meyer_wallach(psi, n),
    )


register_measure("tangle", _tangle_factory)
register_measure("meyer-wallach", _meyer_wallach_factory)
