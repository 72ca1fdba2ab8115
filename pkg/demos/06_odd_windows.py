"""
Odd windows at density (n+1)/n
==============================

Odd windows never give frames on lattices of density (n+1)/n, whatever
the symplectic deformation.  Gaussians always do.  We also print the
closed-form certificates that drive the Janssen symbol to zero.
"""

import numpy as np

from gaborlab import Gaussian, Hermite, OddCompactBump, sample
from gaborlab.framebounds import (
    bounds_symplectic,
    certify_even_critical,
    certify_odd_critical,
    certify_odd_density2,
)
from gaborlab.symplectic import WELL_CONDITIONED_NORM, random_symplectic

windows = {"hermite 1": sample(Hermite(1)), "hermite 3": sample(Hermite(3)),
           "odd bump": sample(OddCompactBump()), "gauss": sample(Gaussian(1.0))}

rng = np.random.default_rng(3)
S = random_symplectic(rng, max_norm=WELL_CONDITIONED_NORM)
print("S =", np.round(S.matrix, 4).tolist())
for n in (1, 2, 3):
    print(f"delta = {n + 1}/{n}")
    for name, w in windows.items():
        fb = bounds_symplectic(w, S, (n + 1) / n)
        print(f"   {name:10s} A/B = {fb.A / fb.B:.2e}  not a frame: {fb.not_frame}")

print("\ncertificates")
print("  even, gauss    ", certify_even_critical(windows["gauss"]))
print("  odd,  hermite 1", certify_odd_critical(windows["hermite 1"]),
      certify_odd_density2(windows["hermite 1"]))
print("  odd,  bump     ", certify_odd_critical(windows["odd bump"]))
