# # Qubit cloning as spin stretching
#
# m identical qubits live in the symmetric subspace, i.e. a spin m/2.
# Optimal m -> n cloning and optimal stretching m/2 -> n/2 agree.

# +
import numpy as np

from nostretch.cloning import cloner_vs_stretch_residual, stretch_equals_clone
from nostretch.su2 import haar_sample
# -

for m, n in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 6)]:
    f_clone, f_stretch, delta = stretch_equals_clone(m, n)
    print(f"{m} -> {n}: clone {f_clone:.6f}  stretch {f_stretch:.6f}  (m+1)/(n+1) {(m + 1) / (n + 1):.6f}")

# Beyond the fidelity, the two maps agree on every coherent input.

rng = np.random.default_rng(0)
print(max(cloner_vs_stretch_residual(2, 4, haar_sample(rng)) for _ in range(10)))
