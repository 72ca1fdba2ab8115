"""
Three ways to compute frame bounds
==================================

Janssen's symbol (integer density), the matrix-valued Zak symbol (rational
density) and finite sections of the frame operator (any lattice).  The last
one is only an inner approximation.
"""

from gaborlab import Gaussian, sample, square
from gaborlab.framebounds import finite_section_bounds, janssen_bounds, square_lattice_bounds, zak_bounds

g = sample(Gaussian(1.0))
s = 2 ** -0.5
for fb in (janssen_bounds(g, s, s), zak_bounds(g, s, s), finite_section_bounds(g, square(2))):
    print(f"{fb.method:15s} A = {fb.A:.10f}  B = {fb.B:.10f}")

# lower bound as the density drops to 1
print("\n delta      A          B")
for delta in [4, 3, 2, 3 / 2, 4 / 3, 5 / 4, 6 / 5, 1]:
    fb = square_lattice_bounds(g, delta)
    print(f"{delta:6.3f}  {fb.A:.3e}  {fb.B:.4f}  ({fb.method})")
