"""
STFT, ambiguity and Wigner distribution
=======================================

For the Gaussian all three have closed forms.  The Wigner distribution is
the symplectic Fourier transform of the ambiguity function, which we verify
by quadrature, and the two lattice sums over Z^2 agree.
"""

import numpy as np

from gaborlab import Gaussian, Hermite, TFGrid, sample
from gaborlab.tfa import ambiguity, ambiguity_grid, poisson_check, stft, symplectic_ft, wigner

g = sample(Gaussian(1.0))
print("V_g g(1, 0)   =", stft(g, g, (1, 0)), " expected", np.exp(-np.pi / 2))
print("A_g g(1, 1)   =", ambiguity(g, g, (1, 1)), " expected", np.exp(-np.pi))
print("W_g g(1/2, 0) =", wigner(g, g, (0.5, 0)), " expected", 2 * np.exp(-np.pi / 2))

h3 = sample(Hermite(3))
axis = np.arange(-96, 97) / 16
F = TFGrid.sample(lambda x, w: ambiguity_grid(h3, h3, x, w), axis, axis)
for p in [(0.0, 0.0), (0.5, 0.5), (0.2, -0.7)]:
    print(f"h3 at {p}: F_s(A) = {symplectic_ft(F, p).real:+.12f}, W = {wigner(h3, h3, p).real:+.12f}")

for name, w in [("gauss", g), ("hermite 1", sample(Hermite(1)))]:
    sw, sa = poisson_check(w, 20)
    print(f"{name}: sum W = {sw.real:+.12f}, sum A = {sa.real:+.12f}")
