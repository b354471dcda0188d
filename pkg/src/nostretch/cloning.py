"""Optimal universal qubit cloning on the symmetric subspace.

A spin ``n/2`` is identified with the permutation-symmetric subspace of
``n`` qubits through Dicke states, with ``|0>`` as spin up.  Under this
identification ``m -> n`` cloning of pure qubits becomes stretching from
``j = m/2`` to ``l = n/2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, sqrt

import numpy as np

from . import linalg as la
from .channel import build_channel, stretch_fidelity
from .su2 import GroupElement, coherent_state

MAX_QUBITS = 12
MAX_CLONES = 8


@dataclass(frozen=True)
class SymmetricSubspace:
    """Isometry from spin ``n/2`` into ``n`` qubits; columns are Dicke states."""

    n_qubits: int
    isometry: np.ndarray

    @property
    def projector(self) -> np.ndarray:
        return self.isometry @ self.isometry.conj().T


@lru_cache(maxsize=None)
def _dicke_columns(n: int) -> np.ndarray:
    v = np.zeros((2 ** n, n + 1))
    for w in range(n + 1):   # w excitations <-> m = n/2 - w
        amp = 1.0 / sqrt(comb(n, w))
        for ones in combinations(range(n), w):
            idx = sum(1 << (n - 1 - q) for q in ones)   # qubit 0 is the most significant bit
            v[idx, w] = amp
    return v


def symmetric_isometry(n: int) -> SymmetricSubspace:
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    return SymmetricSubspace(n, _dicke_columns(n).astype(complex))


def product_state(psi, n: int) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for _ in range(n):
        out = np.kron(out, psi)
    return out


def optimal_cloner(m: int, n: int, rho_in: np.ndarray) -> np.ndarray:
    """Apply the optimal symmetric ``m -> n`` cloner to an m-qubit state.

    ``C(rho) = (m+1)/(n+1) S_n (rho (x) I^(n-m)) S_n`` with ``S_n`` the
    symmetric projector; trace preserving on symmetric inputs.
    """
    _check_pair(m, n)
    s_n = symmetric_isometry(n).projector
    padded = np.kron(rho_in, np.eye(2 ** (n - m)))
    return (m + 1) / (n + 1) * (s_n @ padded @ s_n)


def optimal_clone_global_fidelity(m: int, n: int, psi) -> float:
    """``<psi^n| C(psi^m) |psi^n>`` for the optimal cloner."""
    _check_pair(m, n)
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    out = optimal_cloner(m, n, la.projector(product_state(psi, m)))
    return la.pure_fidelity(out, product_state(psi, n))


def stretch_equals_clone(m: int, n: int, psi=None) -> tuple[float, float, float]:
    """Return ``(f_clone, f_stretch, |f_clone - f_stretch|)``."""
    psi = np.array([1.0, 0.0]) if psi is None else psi
    f_clone = optimal_clone_global_fidelity(m, n, psi)
    f_stretch = stretch_fidelity(m, n)   # twice-values of m/2 and n/2
    return f_clone, f_stretch, abs(f_clone - f_stretch)


def cloner_vs_stretch_residual(m: int, n: int, g: GroupElement) -> float:
    """Frobenius gap between the cloner and the stretch channel on a coherent input.

    The input is the spin-``m/2`` coherent state at ``g``; the cloner acts
    on its symmetric embedding and its output is pulled back to spin ``n/2``.
    """
    v_m, v_n = symmetric_isometry(m).isometry, symmetric_isometry(n).isometry
    rho = la.projector(coherent_state(m, g))
    cloned = v_n.conj().T @ optimal_cloner(m, n, v_m @ rho @ v_m.conj().T) @ v_n
    stretched = build_channel(m, n).apply(rho)
    return la.frobenius(cloned - stretched)


def _check_pair(m: int, n: int) -> None:
    if m > n:
        raise ValueError(f"cannot clone {m} copies into fewer ({n})")
    if not 1 <= m <= n <= MAX_CLONES:
        raise ValueError(f"need 1 <= m <= n <= {MAX_CLONES}, got m={m}, n={n}")
