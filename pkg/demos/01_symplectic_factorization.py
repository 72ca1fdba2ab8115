"""
Factoring symplectic matrices into generators
=============================================

Every 2x2 matrix with determinant one is symplectic.  Free matrices (B != 0)
split into chirp, dilation, Fourier, chirp; the others need one extra
Fourier step.
"""

import numpy as np

from gaborlab.symplectic import SymplecticMatrix, chain_product, decompose, free_factor, random_symplectic

S = SymplecticMatrix([[1.0, 1.0], [0.0, 1.0]])
chain = free_factor(S)
print("free factor of", S.matrix.tolist())
for line in chain.describe():
    print("   ", line)
print("reconstruction error:", np.abs(chain_product(chain).matrix - S.matrix).max())

# B = 0: not free, so decompose goes through S J^-1
T = SymplecticMatrix([[1.0, 0.0], [1.0, 1.0]])
print("\ndecompose", T.matrix.tolist(), "free?", T.is_free())
for line in decompose(T).describe():
    print("   ", line)

# random products of generators
rng = np.random.default_rng(0)
errs = []
for _ in range(1000):
    R = random_symplectic(rng)
    errs.append(np.abs(decompose(R).product().matrix - R.matrix).max())
print(f"\n1000 random S: worst reconstruction error {max(errs):.1e}")
