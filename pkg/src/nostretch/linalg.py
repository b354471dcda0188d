"""Dense operator algebra on spin spaces.

Composite index convention: for ``H_a (x) H_b`` the flat index is
``i_a * d_b + i_b`` (left factor is the slow index), which is what
``np.kron`` produces.  Channels always order their Choi space as
``out (x) in``.
"""
from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
UNITARY_TOL = 1e-12
TRACE_TOL = 1e-10
IMAG_TOL = 1e-10


def tensor(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi)
    return np.outer(psi, psi.conj())


def dagger(m) -> np.ndarray:
    return np.asarray(m).conj().T


def transpose(m) -> np.ndarray:
    return np.asarray(m).T


def conj(m) -> np.ndarray:
    return np.asarray(m).conj()


def partial_trace(m, keep: int, dims: tuple[int, int]) -> np.ndarray:
    """Reduce an operator on ``H_a (x) H_b``.

    Parameters
    ----------
    m : array, shape (d_a*d_b, d_a*d_b)
    keep : 0 to keep ``H_a`` (trace out b), 1 to keep ``H_b``.
    dims : (d_a, d_b)
    """
    m = np.asarray(m)
    d_a, d_b = dims
    if m.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"operator of shape {m.shape} does not match dims {dims}")
    t = m.reshape(d_a, d_b, d_a, d_b)
    if keep == 0:
        return np.einsum("ibjb->ij", t)
    if keep == 1:
        return np.einsum("aiaj->ij", t)
    raise ValueError("keep must be 0 or 1")


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.abs(m - dagger(m)).max(initial=0.0) <= tol


def eigvals_hermitian(m) -> np.ndarray:
    """Ascending real eigenvalues; rejects non-Hermitian input."""
    m = np.asarray(m)
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh((m + dagger(m)) / 2)


def operator_norms(m) -> tuple[float, float]:
    """Return ``(frobenius, max_abs_entry)``."""
    m = np.asarray(m)
    return float(np.linalg.norm(m)), float(np.abs(m).max(initial=0.0))


def frobenius(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def is_density(rho, tol: float = PSD_TOL) -> bool:
    rho = np.asarray(rho)
    if rho.ndim != 2 or not is_hermitian(rho, tol):
        return False
    return eigvals_hermitian(rho)[0] >= -tol and abs(np.trace(rho) - 1) <= tol


def pure_fidelity(rho, psi) -> float:
    """``<psi| rho |psi>`` for a density operator and a unit vector."""
    rho, psi = np.asarray(rho), np.asarray(psi)
    if rho.shape != (psi.size, psi.size):
        raise ValueError(f"dimension mismatch: rho {rho.shape}, psi {psi.shape}")
    val = np.vdot(psi, rho @ psi)
    if abs(val.imag) > IMAG_TOL:
        raise ValueError(f"fidelity has imaginary part {val.imag:.3e}")
    return float(val.real)


def trace_distance(rho, sigma) -> float:
    diff = np.asarray(rho) - np.asarray(sigma)
    return 0.5 * float(np.abs(eigvals_hermitian((diff + dagger(diff)) / 2)).sum())


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random full-rank (or given rank) density matrix from a Ginibre draw."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ dagger(g)
    return rho / np.trace(rho).real


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + dagger(a)) / 2
