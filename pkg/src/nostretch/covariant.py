"""Optimization over all covariant channels via the isotypic decomposition.

A covariant Choi operator commutes with ``D^l(g) (x) conj(D^j(g))``.  Since
``conj(D^j) = C D^j C^dag``, that representation is unitarily equivalent to
``D^l (x) D^j``, which splits multiplicity-free into total spins
``J = |l-j|, ..., l+j``.  Covariant Choi operators are therefore exactly
``R = sum_J a_J P_J`` with ``a_J >= 0``, and trace preservation reads
``sum_J a_J (2J+1) = 2j+1``.  The fidelity is linear in the weights, so the
optimum sits on a vertex of this simplex.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .channel import ChoiOperator
from .su2 import basis_index, cg, conjugation_intertwiner, magnetic_values

FEASIBILITY_TOL = 1e-10
TIE_TOL = 1e-12


@dataclass(frozen=True)
class IsotypicBlock:
    two_J: int
    projector: np.ndarray

    @property
    def dim(self) -> int:
        return self.two_J + 1


@dataclass(frozen=True)
class IsotypicDecomposition:
    two_j: int
    two_l: int
    blocks: tuple[IsotypicBlock, ...]

    @property
    def dims(self) -> tuple[int, int]:
        return self.two_l + 1, self.two_j + 1

    def block(self, two_J: int) -> IsotypicBlock:
        for b in self.blocks:
            if b.two_J == two_J:
                return b
        raise KeyError(two_J)


@dataclass(frozen=True)
class CovariantLP:
    """``max sum_J a_J f_J`` s.t. ``a_J >= 0``, ``sum_J a_J (2J+1) = budget``."""

    two_J: tuple[int, ...]
    objective: tuple[float, ...]
    budget: int

    @property
    def constraint_weights(self) -> tuple[int, ...]:
        return tuple(t + 1 for t in self.two_J)


@dataclass(frozen=True)
class LPSolution:
    fidelity: float
    weights: dict[int, float]
    winning_block: int
    objective: dict[int, float]


def _coupled_projector(two_l: int, two_j: int, two_J: int) -> np.ndarray:
    """Projector onto total spin J inside ``H_l (x) H_j``."""
    d_l, d_j = two_l + 1, two_j + 1
    vecs = []
    for two_M in magnetic_values(two_J):
        v = np.zeros(d_l * d_j)
        for two_m1 in magnetic_values(two_l):
            two_m2 = two_M - two_m1
            if abs(two_m2) > two_j:
                continue
            c = cg(two_J, two_M, two_l, two_m1, two_j, two_m2)
            v[basis_index(two_l, two_m1) * d_j + basis_index(two_j, two_m2)] = c
        vecs.append(v)
    basis = np.array(vecs).T
    return basis @ basis.T


def decompose(two_j: int, two_l: int) -> IsotypicDecomposition:
    """Isotypic projectors of ``D^l (x) conj(D^j)`` on ``H_out (x) H_in``."""
    w = np.kron(np.eye(two_l + 1), conjugation_intertwiner(two_j))
    blocks = []
    for two_J in range(abs(two_l - two_j), two_l + two_j + 1, 2):
        p = w @ _coupled_projector(two_l, two_j, two_J) @ w.T
        blocks.append(IsotypicBlock(two_J, p.astype(complex)))
    return IsotypicDecomposition(two_j, two_l, tuple(blocks))


def fidelity_objective(dec: IsotypicDecomposition) -> dict[int, float]:
    """``f_J = <v|P_J|v>`` with ``v = |l,l> (x) |j,j>``."""
    v = np.zeros(np.prod(dec.dims))
    v[0] = 1.0   # |l,l> and |j,j> are the first basis vectors
    return {b.two_J: float(np.vdot(v, b.projector @ v).real) for b in dec.blocks}


def build_lp(dec: IsotypicDecomposition) -> CovariantLP:
    f = fidelity_objective(dec)
    two_J = tuple(sorted(f))
    return CovariantLP(two_J, tuple(f[t] for t in two_J), dec.two_j + 1)


def solve_lp(lp: CovariantLP) -> tuple[float, dict[int, float], int]:
    """Vertex enumeration for the single-constraint LP.

    Each vertex puts the whole budget on one block, giving value
    ``budget * f_J / (2J+1)``.  Ties go to the smaller J.
    """
    best_idx, best_ratio = 0, -np.inf
    for idx, (f_J, w_J) in enumerate(zip(lp.objective, lp.constraint_weights)):
        ratio = f_J / w_J
        if ratio > best_ratio + TIE_TOL:
            best_idx, best_ratio = idx, ratio
    winner = lp.two_J[best_idx]
    weights = {t: 0.0 for t in lp.two_J}
    weights[winner] = lp.budget / (winner + 1)
    return lp.budget * best_ratio, weights, winner


def optimal_covariant_fidelity(two_j: int, two_l: int) -> LPSolution:
    dec = decompose(two_j, two_l)
    lp = build_lp(dec)
    value, weights, winner = solve_lp(lp)
    return LPSolution(value, weights, winner, dict(zip(lp.two_J, lp.objective)))


def choi_from_weights(dec: IsotypicDecomposition, weights: dict[int, float]) -> ChoiOperator:
    """``R = sum_J a_J P_J``; rejects weights outside the feasible simplex."""
    if any(a < -FEASIBILITY_TOL for a in weights.values()):
        raise ValueError("weights must be non-negative")
    budget = sum(a * (t + 1) for t, a in weights.items())
    if abs(budget - (dec.two_j + 1)) > FEASIBILITY_TOL:
        raise ValueError(f"weights violate trace preservation: sum a_J(2J+1) = {budget}")
    r = sum(weights.get(b.two_J, 0.0) * b.projector for b in dec.blocks)
    return ChoiOperator(dec.two_j, dec.two_l, r)


def uniform_weights(dec: IsotypicDecomposition) -> dict[int, float]:
    """Equal ``a_J`` on every block, scaled onto the budget."""
    total = sum(b.dim for b in dec.blocks)
    return {b.two_J: (dec.two_j + 1) / total for b in dec.blocks}


def project_weights(dec: IsotypicDecomposition, choi: ChoiOperator) -> dict[int, float]:
    """Block weights ``a_J = Tr(R P_J) / (2J+1)`` of a covariant Choi operator."""
    return {b.two_J: float(np.trace(choi.matrix @ b.projector).real) / b.dim for b in dec.blocks}


def block_partial_traces(dec: IsotypicDecomposition) -> dict[int, np.ndarray]:
    return {b.two_J: la.partial_trace(b.projector, 1, dec.dims) for b in dec.blocks}
