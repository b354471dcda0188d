# # Measurement statistics survive the stretch
#
# Measuring the covariant POVM after stretching j -> l > j gives the same
# outcome density as measuring it directly at the input.

# +
import numpy as np

from nostretch.channel import build_channel
from nostretch.estimation import conditional_densities, likelihood, mutual_information_check
from nostretch.su2 import haar_sample
# -

print("likelihoods:", [likelihood(t) for t in range(5)])

rng = np.random.default_rng(1)
ch = build_channel(2, 5)
for _ in range(5):
    g, h = haar_sample(rng), haar_sample(rng)
    p, q = conditional_densities(2, 5, g, h, ch)
    print(f"p={p:.10f}  q={q:.10f}")

# Mutual information between the hidden rotation and the outcome, in nats.
# For j = 1/2 the exact value is ln 2 - 1/2.

mi_in, mi_out = mutual_information_check(1, 2, grid_size=24, n_samples=20_000, rng=rng)
print(f"I_in={mi_in:.5f}  I_out={mi_out:.5f}  exact={np.log(2) - 0.5:.5f}")
