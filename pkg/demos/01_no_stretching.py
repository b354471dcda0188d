# # Transferring a rotation between spins
#
# A spin-j coherent state can hand its orientation to a smaller spin
# exactly, but not to a larger one.  This script walks through both
# directions with the optimal covariant channel.

# +
import math

import numpy as np

from nostretch import linalg as la
from nostretch.channel import apply, build_channel, north_output_closed_form, stretch_fidelity
from nostretch.estimation import no_stretching_witness
from nostretch.su2 import highest_weight, spin_label
# -

# ## Why a unitary machine cannot stretch
#
# Exact transfer would need the machine's ancilla states to overlap by
# (cos beta/2)^(2j-2l).  Above 1 the requirement is unphysical.

for two_j, two_l in [(1, 2), (2, 1), (4, 9)]:
    w = no_stretching_witness(two_j, two_l, math.pi / 2)
    verdict = "impossible" if w > 1 else "allowed"
    print(f"j={spin_label(two_j)} -> l={spin_label(two_l)}: overlap needed {w:.5f} ({verdict})")

# ## Shrinking is exact

ch = build_channel(4, 1)
out = apply(ch, la.projector(highest_weight(4)))
print(np.round(out.real, 12))

# ## Stretching blurs the output
#
# The north-pole input becomes a diagonal mixture; the weight on |l,l>
# is the fidelity (2j+1)/(2l+1).

out = apply(build_channel(1, 4), la.projector(highest_weight(1)))
print(np.round(np.diag(out).real, 6))
print(np.round(np.diag(north_output_closed_form(1, 4)).real, 6))

# ## The fidelity curve for j = 10

for two_l in range(16, 41, 4):
    print(f"l={spin_label(two_l):>5}  F={stretch_fidelity(20, two_l):.6f}")
