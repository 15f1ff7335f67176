"""
Normalization of the (k, l, m) wavefunction
===========================================

Changing from the plane-wave basis to partial waves is unitary, so the
squared wavefunction summed over l and integrated over k must give 1.  Only
m = 0 contributes for a packet moving along the quantization axis.
"""

import math

import numpy as np

from uniform_wigner import WavepacketParams, wavefunction_table

eps = 0.01
params = WavepacketParams.from_epsilon(eps, p=1.0)

# the l-distribution is close to Rayleigh with scale 1/(2 eps)
scale = 1 / (2 * eps)
l_max = math.ceil(scale * math.sqrt(math.pi / 2) + 5 * scale * math.sqrt((4 - math.pi) / 2))

nodes, weights = np.polynomial.legendre.leggauss(48)
half = 8 * params.sigma_p
prob_l = np.zeros(l_max + 1)
for x, w in zip(nodes, weights):
    prob_l += w * half * wavefunction_table(params.p + half * x, l_max, params) ** 2

print(f"l summed to {l_max}: total probability {prob_l.sum():.8f}")
print(f"most probable l: {prob_l.argmax()} (Rayleigh mode {scale:.0f})")
