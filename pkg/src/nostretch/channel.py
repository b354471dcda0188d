"""The optimal rotation-covariant spin-stretching channel j -> l.

The Kraus operators are the components of a rank ``kappa = |j - l|``
irreducible tensor operator,

    <l, m+k | M_k | j, m> = sqrt((2j+1)/(2l+1)) <l, m+k | j, m; kappa, k>,

which is trace preserving and covariant by construction.  Entry moduli
coincide with the textbook form ``s_jl <kappa, k | j, -m; l, m+k>``; the
latter, read with Condon-Shortley phases, carries an extra ``(-1)^(j-m)``
and is not covariant.  It is kept as :func:`literal_kraus` for use as a
negative control.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .su2 import (
    GroupElement,
    basis_index,
    cg,
    check_spin,
    dimension,
    haar_sample,
    highest_weight,
    magnetic_values,
    wigner_D,
)

DEFAULT_SEED = 0xC0FFEE
DEFAULT_SAMPLES = 50


@dataclass(frozen=True)
class StretchChannel:
    """Kraus form of a channel from spin ``j`` to spin ``l``.

    ``kraus[i]`` has shape ``(2l+1, 2j+1)`` and carries the twice-value
    ``two_k[i]``, running from ``-2|j-l|`` to ``2|j-l|`` in steps of 2.
    """

    two_j: int
    two_l: int
    kraus: tuple[np.ndarray, ...]

    @property
    def two_kappa(self) -> int:
        return abs(self.two_j - self.two_l)

    @property
    def two_k(self) -> list[int]:
        return list(range(-self.two_kappa, self.two_kappa + 1, 2))

    @property
    def dim_in(self) -> int:
        return self.two_j + 1

    @property
    def dim_out(self) -> int:
        return self.two_l + 1

    def kraus_for(self, two_k: int) -> np.ndarray:
        return self.kraus[(two_k + self.two_kappa) // 2]

    def apply(self, rho):
        return apply(self, rho)

    def apply_dual(self, a):
        return apply_dual(self, a)


@dataclass(frozen=True)
class ChoiOperator:
    """Choi matrix on ``H_out (x) H_in`` (out is the slow index)."""

    two_j: int
    two_l: int
    matrix: np.ndarray

    @property
    def dims(self) -> tuple[int, int]:
        return self.two_l + 1, self.two_j + 1


def _kraus_family(two_j: int, two_l: int, literal: bool) -> tuple[np.ndarray, ...]:
    check_spin(two_j)
    check_spin(two_l)
    two_kappa = abs(two_j - two_l)
    if literal:
        scale = math.sqrt((two_j + 1) / (two_kappa + 1))
    else:
        scale = math.sqrt((two_j + 1) / (two_l + 1))
    family = []
    for two_k in range(-two_kappa, two_kappa + 1, 2):
        m_k = np.zeros((two_l + 1, two_j + 1), dtype=complex)
        for two_m in magnetic_values(two_j):
            two_n = two_m + two_k
            if abs(two_n) > two_l:
                continue
            if literal:
                c = cg(two_kappa, two_k, two_j, -two_m, two_l, two_n)
            else:
                c = cg(two_l, two_n, two_j, two_m, two_kappa, two_k)
            m_k[basis_index(two_l, two_n), basis_index(two_j, two_m)] = scale * c
        family.append(m_k)
    return tuple(family)


def build_channel(two_j: int, two_l: int) -> StretchChannel:
    """Optimal covariant channel from spin ``two_j/2`` to ``two_l/2``."""
    return StretchChannel(two_j, two_l, _kraus_family(two_j, two_l, literal=False))


def literal_kraus(two_j: int, two_l: int) -> StretchChannel:
    """Kraus family ``s_jl <kappa,k | j,-m; l,m+k>`` with Condon-Shortley phases.

    Trace preserving, with the right entry moduli, but not covariant:
    for ``j == l`` it is a pi rotation about z rather than the identity.
    """
    return StretchChannel(two_j, two_l, _kraus_family(two_j, two_l, literal=True))


def apply(ch: StretchChannel, rho) -> np.ndarray:
    rho = np.asarray(rho)
    if rho.shape != (ch.dim_in, ch.dim_in):
        raise ValueError(f"input of shape {rho.shape}, channel expects {ch.dim_in}x{ch.dim_in}")
    return sum(m @ rho @ m.conj().T for m in ch.kraus)


def apply_dual(ch: StretchChannel, a) -> np.ndarray:
    """Heisenberg picture: ``sum_k M_k^dag A M_k``."""
    a = np.asarray(a)
    if a.shape != (ch.dim_out, ch.dim_out):
        raise ValueError(f"operator of shape {a.shape}, dual expects {ch.dim_out}x{ch.dim_out}")
    return sum(m.conj().T @ a @ m for m in ch.kraus)


def tp_residual(ch: StretchChannel) -> float:
    """Frobenius norm of ``sum_k M_k^dag M_k - I``."""
    total = sum(m.conj().T @ m for m in ch.kraus)
    return la.frobenius(total - np.eye(ch.dim_in))


def choi_of(ch: StretchChannel) -> ChoiOperator:
    vecs = [m.reshape(-1) for m in ch.kraus]
    r = sum(np.outer(v, v.conj()) for v in vecs)
    return ChoiOperator(ch.two_j, ch.two_l, r)


def channel_from_choi(choi: ChoiOperator, rho) -> np.ndarray:
    """``Tr_in[(I_out (x) rho^T) R]``."""
    d_out, d_in = choi.dims
    rho = np.asarray(rho)
    if rho.shape != (d_in, d_in):
        raise ValueError(f"input of shape {rho.shape}, Choi expects {d_in}x{d_in}")
    r4 = choi.matrix.reshape(d_out, d_in, d_out, d_in)
    return np.einsum("ab,oapb->op", rho, r4)


def choi_rank(choi: ChoiOperator, tol: float = 1e-9) -> int:
    return int((la.eigvals_hermitian(choi.matrix) > tol).sum())


def covariance_residual(ch: StretchChannel, g: GroupElement, rho, choi: ChoiOperator | None = None) -> float:
    """Larger of the state-level and Choi-commutator residuals at ``g``."""
    d_in, d_out = wigner_D(ch.two_j, g), wigner_D(ch.two_l, g)
    lhs = apply(ch, d_in @ rho @ d_in.conj().T)
    rhs = d_out @ apply(ch, rho) @ d_out.conj().T
    state_res = la.frobenius(lhs - rhs)
    r = (choi or choi_of(ch)).matrix
    u = np.kron(d_out, d_in.conj())
    return max(state_res, la.frobenius(u @ r - r @ u))


def verify_covariance(ch: StretchChannel, n_samples: int = DEFAULT_SAMPLES,
                      rng: np.random.Generator | None = None) -> float:
    """Max covariance residual over Haar-sampled rotations and random inputs."""
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(DEFAULT_SEED) if rng is None else rng
    choi = choi_of(ch)
    worst = 0.0
    for _ in range(n_samples):
        g = haar_sample(rng)
        rho = la.random_density(ch.dim_in, rng)
        worst = max(worst, covariance_residual(ch, g, rho, choi))
    return worst


def stretch_fidelity_exact(two_j: int, two_l: int) -> Fraction:
    if two_j >= two_l:
        return Fraction(1)
    return Fraction(two_j + 1, two_l + 1)


def stretch_fidelity(two_j: int, two_l: int) -> float:
    """Closed-form optimal fidelity ``min(1, (2j+1)/(2l+1))``."""
    return float(stretch_fidelity_exact(two_j, two_l))


def channel_fidelity(ch: StretchChannel) -> float:
    """``<l,l| M(|j,j><j,j|) |l,l>`` evaluated through the Kraus operators."""
    out = apply(ch, la.projector(highest_weight(ch.two_j)))
    return la.pure_fidelity(out, highest_weight(ch.two_l))


def north_weights_exact(two_j: int, two_l: int) -> dict[int, Fraction]:
    """Populations of ``M(|j,j><j,j|)`` keyed by the output twice-magnetic number."""
    if two_j >= two_l:
        return {two_l: Fraction(1)}
    f = math.factorial
    weights = {}
    for two_k in range(two_j - two_l, two_l - two_j + 1, 2):
        num = f(two_l - two_j) * f((two_l + two_j + two_k) // 2)
        den = f(two_l) * f((two_l - two_j + two_k) // 2)
        weights[two_k + two_j] = Fraction(two_j + 1, two_l + 1) * Fraction(num, den)
    return weights


def north_output_closed_form(two_j: int, two_l: int) -> np.ndarray:
    """Diagonal closed-form output of the channel on ``|j,j><j,j|``."""
    out = np.zeros((two_l + 1, two_l + 1), dtype=complex)
    for two_n, w in north_weights_exact(two_j, two_l).items():
        idx = basis_index(two_l, two_n)
        out[idx, idx] = float(w)
    return out


def dual_identity_residual(ch: StretchChannel) -> float:
    """``||(2l+1) M*(|l,l><l,l|) - (2j+1) |j,j><j,j|||_F``."""
    lhs = (ch.two_l + 1) * apply_dual(ch, la.projector(highest_weight(ch.two_l)))
    rhs = (ch.two_j + 1) * la.projector(highest_weight(ch.two_j))
    return la.frobenius(lhs - rhs)


def kraus_dual_mismatch(two_j: int, two_l: int) -> float:
    """Compare ``M_k^dag`` of (j->l) with ``sqrt((2j+1)/(2l+1)) M_{-k}`` of (l->j).

    One global phase per ``k`` is divided out before comparing; returns
    the largest entrywise deviation.
    """
    fwd, back = build_channel(two_j, two_l), build_channel(two_l, two_j)
    scale = math.sqrt((two_j + 1) / (two_l + 1))
    worst = 0.0
    for two_k in fwd.two_k:
        a = fwd.kraus_for(two_k).conj().T
        b = scale * back.kraus_for(-two_k)
        pivot = np.unravel_index(np.argmax(np.abs(b)), b.shape)
        phase = a[pivot] / b[pivot] if abs(b[pivot]) > 0 else 1.0
        worst = max(worst, float(np.abs(a - phase * b).max()))
    return worst


def verify_channel(ch: StretchChannel, n_samples: int = DEFAULT_SAMPLES,
                   seed: int = DEFAULT_SEED) -> dict[str, float]:
    """All residuals the channel is expected to drive to zero."""
    choi = choi_of(ch)
    north = apply(ch, la.projector(highest_weight(ch.two_j)))
    res = {
        "tp_residual": tp_residual(ch),
        "choi_tp_residual": la.frobenius(la.partial_trace(choi.matrix, 1, choi.dims) - np.eye(ch.dim_in)),
        "choi_min_eigenvalue": float(la.eigvals_hermitian(choi.matrix)[0]),
        "covariance_residual": verify_covariance(ch, n_samples, np.random.default_rng(seed)),
        "closed_form_residual": la.frobenius(north - north_output_closed_form(ch.two_j, ch.two_l)),
        "fidelity_residual": abs(channel_fidelity(ch) - stretch_fidelity(ch.two_j, ch.two_l)),
    }
    if ch.two_l > ch.two_j:
        res["dual_identity_residual"] = dual_identity_residual(ch)
    return res
