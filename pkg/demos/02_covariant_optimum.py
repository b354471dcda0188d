# # Searching every covariant channel
#
# Covariant Choi operators are non-negative combinations of the isotypic
# projectors P_J.  Fidelity is linear in the weights, and trace
# preservation is one linear constraint, so the best channel is a vertex.

# +
from nostretch.channel import build_channel, choi_of, stretch_fidelity
from nostretch.covariant import choi_from_weights, decompose, optimal_covariant_fidelity
from nostretch import linalg as la
from nostretch.su2 import spin_label
# -

two_j, two_l = 3, 7
sol = optimal_covariant_fidelity(two_j, two_l)
for two_J, f in sol.objective.items():
    print(f"J={spin_label(two_J):>4}  f_J={f:.6f}  f_J/(2J+1)={f / (two_J + 1):.6f}")
print("winning block:", spin_label(sol.winning_block))
print("LP optimum:", sol.fidelity, " closed form:", stretch_fidelity(two_j, two_l))

# The vertex is exactly the channel built from Clebsch-Gordan coefficients.

dec = decompose(two_j, two_l)
gap = la.frobenius(choi_from_weights(dec, sol.weights).matrix - choi_of(build_channel(two_j, two_l)).matrix)
print("Choi difference:", gap)
