"""
Deforming the lattice by a symplectic matrix
============================================

The frames G(g, S Lambda) and G(S^-1^ g, Lambda) have the same bounds.  The
left side is computed by brute force on the deformed lattice, the right side
by the sharp square-lattice methods.
"""

import numpy as np

from gaborlab import Gaussian, from_symplectic, sample
from gaborlab.framebounds import bounds_symplectic, finite_section_bounds
from gaborlab.symplectic import WELL_CONDITIONED_NORM, random_symplectic

g = sample(Gaussian(1.0))
rng = np.random.default_rng(5)
for _ in range(4):
    S = random_symplectic(rng, max_norm=WELL_CONDITIONED_NORM)
    red = bounds_symplectic(g, S, 2.0)
    direct = finite_section_bounds(g, from_symplectic(S, 2.0), radius=20, n_test=300)
    print(np.round(S.matrix, 3).tolist())
    print(f"   reduction       A = {red.A:.5f}  B = {red.B:.5f}  ({red.method})")
    print(f"   finite section  A = {direct.A:.5f}  B = {direct.B:.5f}")

