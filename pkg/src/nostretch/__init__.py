"""Optimal spin-stretching channels and the no-stretching bound.

Spins are passed as twice-values throughout: ``two_j = 1`` means j = 1/2.
"""
from .channel import (
    ChoiOperator,
    StretchChannel,
    apply,
    apply_dual,
    build_channel,
    channel_from_choi,
    choi_of,
    north_output_closed_form,
    stretch_fidelity,
    verify_covariance,
)
from .cloning import optimal_clone_global_fidelity, stretch_equals_clone, symmetric_isometry
from .covariant import choi_from_weights, decompose, optimal_covariant_fidelity
from .estimation import (
    CovariantPovm,
    conditional_densities,
    evolved_povm_density,
    likelihood,
    mutual_information_check,
    no_stretching_witness,
    povm_density,
)
from .su2 import (
    GroupElement,
    cg_coefficient,
    coherent_overlap_modulus,
    compose,
    haar_sample,
    inverse,
    wigner_D,
)

__version__ = "0.1.0"
