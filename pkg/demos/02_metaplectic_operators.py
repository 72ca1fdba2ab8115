"""
Metaplectic operators on sampled windows
========================================

Fourier transform, dilations and chirps act on windows sampled on a
2048-point grid.  We check a few identities numerically.
"""

import numpy as np

from gaborlab import Gaussian, Hermite, sample
from gaborlab.metaplectic import apply_dilation, apply_fourier, apply_symplectic, phase_aligned_distance
from gaborlab.symplectic import random_symplectic

g = sample(Gaussian(1.0))
h1 = sample(Hermite(1))

# the modified Fourier transform has order 8, and J^4 = -1
w = h1
for _ in range(4):
    w = apply_fourier(w)
print("||J^4 h1 + h1|| =", np.linalg.norm(w.values + h1.values) * np.sqrt(h1.grid.h))

# dilating the unit Gaussian by 2 gives the gamma = 2 Gaussian
d = apply_dilation(g, 2.0)
print("max |M_2 g - g_2| =", np.abs(d.values - sample(Gaussian(2.0)).values).max())

# S -> S^ is a homomorphism up to a unimodular constant
rng = np.random.default_rng(1)
for _ in range(5):
    S1, S2 = random_symplectic(rng), random_symplectic(rng)
    lhs = apply_symplectic(apply_symplectic(g, S2), S1)
    rhs = apply_symplectic(g, S1 @ S2)
    print(f"  ||(S1 S2)^ g - c S1^ S2^ g|| = {phase_aligned_distance(lhs, rhs):.1e}")
