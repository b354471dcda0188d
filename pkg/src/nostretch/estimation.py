"""Covariant direction estimation and the no-stretching witness.

Densities are taken with respect to the normalized Haar measure, so a
covariant POVM ``P_g`` satisfies ``int P_g dg = I``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .channel import StretchChannel, apply, apply_dual, build_channel
from .su2 import (
    GroupElement,
    check_spin,
    coherent_overlap_modulus,
    haar_angles,
    highest_weight,
    magnetic_values,
    wigner_D,
)

IMPOSSIBLE = math.inf  # witness sentinel when the required overlap diverges


@dataclass(frozen=True)
class CovariantPovm:
    """``P_g = (2j+1) D(g)|j,j><j,j|D(g)^dag``."""

    two_j: int

    @property
    def scale(self) -> int:
        return self.two_j + 1

    def density(self, g: GroupElement) -> np.ndarray:
        return povm_density(self, g)


def povm_density(p: CovariantPovm | int, g: GroupElement) -> np.ndarray:
    two_j = p.two_j if isinstance(p, CovariantPovm) else check_spin(p)
    psi = wigner_D(two_j, g)[:, 0]
    return (two_j + 1) * la.projector(psi)


def likelihood(two_j: int) -> float:
    """``<j,j| P_e |j,j>``, the density of the estimate at the true rotation."""
    psi = highest_weight(two_j)
    return float(np.vdot(psi, povm_density(two_j, GroupElement.identity()) @ psi).real)


def no_stretching_witness(two_j: int, two_l: int, beta: float) -> float:
    """Overlap the machine's ancilla states would need for exact transfer.

    Unitarity forces ``<j|j> = <theta|theta> <l|l>`` between coherent
    states at rotations a polar angle ``beta`` apart, so the ancilla
    overlap must be ``(cos beta/2)^(2j) / (cos beta/2)^(2l)``.  A value
    above 1 certifies impossibility.  At ``beta = pi`` with ``l > j`` the
    requirement diverges and :data:`IMPOSSIBLE` is returned.
    """
    if not 0.0 <= beta <= math.pi:
        raise ValueError("beta must lie in [0, pi]")
    e, g = GroupElement.identity(), GroupElement(0.0, beta, 0.0)
    num = coherent_overlap_modulus(two_j, g, e)
    den = coherent_overlap_modulus(two_l, g, e)
    if den < 1e-300 or math.isclose(beta, math.pi, abs_tol=1e-15):
        if two_l > two_j:
            return IMPOSSIBLE
        return 1.0 if two_l == two_j else 0.0
    return num / den


def witness_is_impossible(value: float) -> bool:
    return value > 1.0


def evolved_povm_density(two_j: int, two_l: int, g: GroupElement,
                         ch: StretchChannel | None = None) -> np.ndarray:
    """Heisenberg-evolved output POVM ``M*(P^(l)_g)`` on the input spin."""
    ch = build_channel(two_j, two_l) if ch is None else ch
    return apply_dual(ch, povm_density(two_l, g))


def evolved_covariant_form(two_j: int, two_l: int, g: GroupElement,
                           ch: StretchChannel | None = None) -> np.ndarray:
    """``(2l+1) D^j(g) M*(|l,l><l,l|) D^j(g)^dag``."""
    ch = build_channel(two_j, two_l) if ch is None else ch
    seed = apply_dual(ch, la.projector(highest_weight(two_l)))
    d = wigner_D(two_j, g)
    return (two_l + 1) * d @ seed @ d.conj().T


def povm_likelihood(operator: np.ndarray, two_j: int) -> float:
    psi = highest_weight(two_j)
    return float(np.vdot(psi, operator @ psi).real)


def conditional_densities(two_j: int, two_l: int, g: GroupElement, h: GroupElement,
                          ch: StretchChannel | None = None) -> tuple[float, float]:
    """Densities of outcome ``g`` given rotation ``h``: ``(p, q)``.

    ``p`` measures ``P^(l)`` after the channel, ``q`` measures ``P^(j)``
    directly on the rotated input.
    """
    ch = build_channel(two_j, two_l) if ch is None else ch
    rho_h = la.projector(wigner_D(two_j, h)[:, 0])
    p = np.trace(povm_density(two_l, g) @ apply(ch, rho_h)).real
    q = np.trace(povm_density(two_j, g) @ rho_h).real
    return float(p), float(q)


# ---------------------------------------------------------------------------
# mutual information estimate


def coherent_states(two_j: int, angles: np.ndarray) -> np.ndarray:
    """Rows are ``D^j(g)|j,j>`` for rows ``(alpha, beta, gamma)`` of ``angles``.

    Uses ``d^j_{m,j}(beta) = sqrt(C(2j, j-m)) cos^(j+m) sin^(j-m)`` (beta/2).
    """
    angles = np.atleast_2d(angles)
    alpha, beta, gamma = angles.T
    c, s = np.cos(beta / 2), np.sin(beta / 2)
    cols = []
    for two_m in magnetic_values(two_j):
        up, down = (two_j + two_m) // 2, (two_j - two_m) // 2
        amp = math.sqrt(math.comb(two_j, down)) * c ** up * s ** down
        cols.append(amp * np.exp(-0.5j * (alpha * two_m + gamma * two_j)))
    return np.column_stack(cols)


def haar_grid(grid_size: int) -> tuple[np.ndarray, np.ndarray]:
    """Product grid over ``(alpha, cos beta, gamma)`` with weights summing to 1.

    Periodic angles get the (trapezoidal) uniform rule, ``cos beta`` the
    trapezoidal rule on ``[-1, 1]``.
    """
    if grid_size < 8:
        raise ValueError("grid_size must be at least 8")
    phi = 2 * np.pi * np.arange(grid_size) / grid_size
    u = np.linspace(-1.0, 1.0, grid_size)
    wu = np.full(grid_size, 1.0)
    wu[[0, -1]] = 0.5
    wu /= wu.sum()
    wphi = np.full(grid_size, 1.0 / grid_size)
    a, b, c = np.meshgrid(phi, np.arccos(u), phi, indexing="ij")
    w = wphi[:, None, None] * wu[None, :, None] * wphi[None, None, :]
    return np.column_stack([a.ravel(), b.ravel(), c.ravel()]), w.ravel()


def _density_table(ch: StretchChannel | None, two_j: int, two_l: int,
                   grid_states: np.ndarray, inputs: np.ndarray) -> np.ndarray:
    """``(2l+1) sum_k |<phi_g| M_k |psi_h>|^2`` with shape (grid, inputs)."""
    kraus = [np.eye(two_j + 1)] if ch is None else ch.kraus
    total = 0.0
    for m in kraus:
        amp = grid_states.conj() @ (m @ inputs.T)
        total = total + amp.real ** 2 + amp.imag ** 2
    return (two_l + 1) * total


def _mi_accumulate(table: np.ndarray, acc: dict) -> None:
    with np.errstate(divide="ignore", invalid="ignore"):
        plogp = np.where(table > 0, table * np.log(table), 0.0)
    acc["plogp"] += plogp.sum(axis=1)
    acc["p"] += table.sum(axis=1)


def _mi_finish(acc: dict, weights: np.ndarray, n: int) -> float:
    marginal = acc["p"] / n
    with np.errstate(divide="ignore", invalid="ignore"):
        mlogm = np.where(marginal > 0, marginal * np.log(marginal), 0.0)
    return float(weights @ (acc["plogp"] / n - mlogm))


def mutual_information_check(two_j: int, two_l: int, grid_size: int = 32,
                             n_samples: int = 100_000,
                             rng: np.random.Generator | None = None,
                             chunk: int = 4096) -> tuple[float, float]:
    """Estimate I(h; outcome) in nats at the channel input and output.

    The hidden rotation ``h`` is Haar-sampled; the outcome density is
    integrated on :func:`haar_grid`.  The marginal outcome density is the
    sample average over ``h``.  Returns ``(mi_in, mi_out)``.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    ch = build_channel(two_j, two_l)
    angles, weights = haar_grid(grid_size)
    # gamma only multiplies the seed state by a phase; collapse that axis
    reduced = angles.reshape(grid_size, grid_size, grid_size, 3)[:, :, 0, :].reshape(-1, 3)
    w_red = weights.reshape(grid_size, grid_size, grid_size).sum(axis=2).ravel()
    phi_in = coherent_states(two_j, reduced)
    phi_out = coherent_states(two_l, reduced)

    acc_in = {"plogp": 0.0, "p": 0.0}
    acc_out = {"plogp": 0.0, "p": 0.0}
    done = 0
    while done < n_samples:
        n = min(chunk, n_samples - done)
        inputs = coherent_states(two_j, haar_angles(rng, n))
        _mi_accumulate(_density_table(None, two_j, two_j, phi_in, inputs), acc_in)
        _mi_accumulate(_density_table(ch, two_j, two_l, phi_out, inputs), acc_out)
        done += n
    return _mi_finish(acc_in, w_red, n_samples), _mi_finish(acc_out, w_red, n_samples)
