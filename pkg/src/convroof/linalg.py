"""Dense complex linear algebra, subsystem index arithmetic and randomness.

All matrices are plain ``numpy.ndarray`` objects with dtype ``complex128``.
Subsystem indices are 1-based in the public API, with the first factor of a
Kronecker product being the most significant one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectralData",
    "as_rng",
    "ptrace",
    "density_eig",
    "rand_state",
    "rand_unitary",
    "rand_density_matrix",
    "complete_gram_schmidt",
    "expm_antihermitian",
]

HERMITICITY_TOL = 1e-10
NEGATIVITY_TOL = 1e-8


@dataclass(frozen=True)
class SpectralData:
    """Truncated spectral decomposition of a density matrix.

    ``eigenvalues`` are strictly positive and sorted in decreasing order;
    the columns of ``eigenvectors`` are the matching orthonormal vectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        chi = self.eigenvectors
        return (chi * self.eigenvalues) @ chi.conj().T


def as_rng(rng) -> np.random.Generator:
    """Coerce a seed or Generator into a ``numpy.random.Generator``."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _validate_dims(dims) -> list[int]:
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    return dims


def ptrace(rho, dims, *, keep=None, trace_out=None) -> np.ndarray:
    """Partial trace of ``rho`` over a selection of subsystems.

    ``dims`` lists the subsystem dimensions (most significant factor first).
    Exactly one of ``keep`` / ``trace_out`` must be given, as an iterable of
    1-based subsystem indices.  The retained subsystems keep their original
    relative order.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = _validate_dims(dims)
    n = len(dims)
    total = math.prod(dims)
    if rho.shape != (total, total):
        raise ValueError(
            f"rho has shape {rho.shape} but subsystem dims {dims} require "
            f"({total}, {total})"
        )

    if (keep is None) == (trace_out is None):
        raise ValueError("specify exactly one of keep= or trace_out=")
    selected = sorted({int(i) for i in (keep if keep is not None else trace_out)})
    if any(i < 1 or i > n for i in selected):
        raise ValueError(f"subsystem indices {selected} out of range 1..{n}")
    if keep is not None:
        kept = selected
    else:
        kept = [i for i in range(1, n + 1) if i not in selected]
        if not selected:
            raise ValueError("trace_out set must be nonempty")
    if not kept:
        raise ValueError("cannot trace out every subsystem")

    kept0 = [i - 1 for i in kept]
    traced0 = [i for i in range(n) if i not in set(kept0)]
    dk = math.prod(dims[i] for i in kept0)
    dt = math.prod(dims[i] for i in traced0)

    t = rho.reshape(dims + dims)
    perm = kept0 + traced0 + [n + i for i in kept0] + [n + i for i in traced0]
    t = np.transpose(t, perm).reshape(dk, dt, dk, dt)
    return np.trace(t, axis1=1, axis2=3)


def density_eig(rho, truncation_tol: float = 1e-12, max_rank: int | None = None) -> SpectralData:
    """Nonzero eigenvalues/eigenvectors of a density matrix, sorted decreasing.

    Eigenvalues below ``truncation_tol`` are discarded; ``max_rank`` further
    truncates to the largest eigenvalues (useful to drop low-probability
    sectors of the state).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise ValueError("density matrix is not Hermitian within tolerance")

    w, v = np.linalg.eigh(rho)
    if w[0] < -NEGATIVITY_TOL:
        raise ValueError(f"density matrix has significantly negative eigenvalue {w[0]}")

    order = np.argsort(w)[::-1]
    w = w[order]
    v = v[:, order]
    r = int(np.sum(w > truncation_tol))
    if max_rank is not None:
        if max_rank < 1:
            raise ValueError("max_rank must be >= 1")
        r = min(r, int(max_rank))
    if r == 0:
        raise ValueError("density matrix has no eigenvalue above the truncation tolerance")
    return SpectralData(eigenvalues=w[:r].copy(), eigenvectors=v[:, :r].copy(), rank=r)


def rand_state(dim: int, rng=None) -> np.ndarray:
    """Haar-random pure state of dimension ``dim`` (normalized column vector)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    g = as_rng(rng)
    z = g.standard_normal(dim) + 1j * g.standard_normal(dim)
    return z / np.linalg.norm(z)


def rand_unitary(k: int, r: int | None = None, rng=None) -> np.ndarray:
    """Haar-random k-by-r matrix with orthonormal columns.

    QR of a complex Gaussian matrix with the R-diagonal phases absorbed into
    Q (Mezzadri construction), which makes the distribution Haar.
    """
    if r is None:
        r = k
    if k < r or r < 1:
        raise ValueError(f"need k >= r >= 1, got k={k}, r={r}")
    g = as_rng(rng)
    z = (g.standard_normal((k, r)) + 1j * g.standard_normal((k, r))) / math.sqrt(2.0)
    q, rr = np.linalg.qr(z)
    d = np.diagonal(rr)
    return q * (d / np.abs(d))


def rand_density_matrix(dim: int, rank: int | None = None, rng=None) -> np.ndarray:
    """Random density matrix rho = G G^dag / tr(G G^dag), G complex Gaussian dim-by-rank."""
    if rank is None:
        rank = dim
    if dim < 1 or rank < 1 or rank > dim:
        raise ValueError(f"need 1 <= rank <= dim, got dim={dim}, rank={rank}")
    g = as_rng(rng)
    z = g.standard_normal((dim, rank)) + 1j * g.standard_normal((dim, rank))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


def complete_gram_schmidt(u) -> np.ndarray:
    """Re-orthonormalize the columns of a numerically near-unitary matrix.

    Two modified Gram-Schmidt passes; the result is orthonormal to roundoff
    and stays close to the input when the input is already nearly unitary.
    """
    m = np.array(u, dtype=complex)
    for _ in range(2):
        for j in range(m.shape[1]):
            col = m[:, j]
            for i in range(j):
                col = col - (m[:, i].conj() @ col) * m[:, i]
            nrm = np.linalg.norm(col)
            if nrm < 1e-8:
                raise ValueError(f"column {j + 1} is linearly dependent, cannot orthonormalize")
            m[:, j] = col / nrm
    return m


def expm_antihermitian(x, t: float = 1.0) -> np.ndarray:
    """exp(t*X) for anti-Hermitian X, exactly unitary up to eigensolver error.

    Uses the Hermitian eigendecomposition of iX, so unitarity of the result
    is guaranteed by construction (no Pade scaling-and-squaring).
    """
    x = np.asarray(x, dtype=complex)
    if np.max(np.abs(x + x.conj().T)) > HERMITICITY_TOL:
        raise ValueError("matrix is not anti-Hermitian within tolerance")
    w, v = np.linalg.eigh(1j * x)
    return (v * np.exp(-1j * t * w)) @ v.conj().T
