"""
Metaplectic generator operators acting on sampled windows (d = 1).

    J^  g(t) = i^{-1/2} F g(t),     F g(w) = int g(t) exp(-2 pi i w t) dt
    M^_{L,m} g(t) = i^m sqrt|L| g(L t)
    V^_P g(t) = exp(pi i P t^2) g(t)

Each operator projects onto the generator matrix of the same name in
:mod:`gaborlab.symplectic`, i.e. ``S^ pi(z) S^{-1} = c pi(S z)`` with |c| = 1.
Global phases are not tracked; the square-root branch of i^{-1/2} is the
principal one.
"""

from __future__ import annotations

import math
import warnings
from functools import lru_cache

import numpy as np

from .symplectic import (
    Chirp,
    Dilation,
    Fourier,
    GeneratorChain,
    QuadraticForm,
    SymplecticMatrix,
    decompose,
)
from .windows import SampledWindow, parity_defect

FOURIER_PHASE = np.exp(-0.25j * np.pi)  # principal i^{-1/2}
DISCARD_TOL = 1e-10


class DiscardedMassWarning(RuntimeWarning):
    pass


@lru_cache(maxsize=2)
def _fourier_matrix(N: int, h: float) -> np.ndarray:
    # h exp(-2 pi i t_k t_j) with t = (j - N/2) h, phase reduced mod 1 exactly
    j = np.arange(N, dtype=np.int64) - N // 2
    frac = np.mod(np.outer(j, j) * (h * h), 1.0)
    m = h * np.exp(-2j * np.pi * frac)
    m.setflags(write=False)
    return m


def fourier_values(w: SampledWindow) -> np.ndarray:
    """Riemann-sum Fourier transform evaluated at the grid times."""
    return _fourier_matrix(w.grid.N, w.grid.h) @ w.values


def apply_fourier(w: SampledWindow) -> SampledWindow:
    return w.replace(FOURIER_PHASE * fourier_values(w))


def dilation_loss(w: SampledWindow, L: float) -> float:
    """Relative L2 mass of `w` that M^_L cannot represent on the grid.

    For |L| < 1 the output grid only sees ``|t| <= T |L|`` of the input.
    """
    T = w.grid.extent * abs(L)
    outside = np.abs(w.t) > T
    nrm2 = np.sum(np.abs(w.values) ** 2)
    if nrm2 == 0:
        return 0.0
    return float(np.sum(np.abs(w.values[outside]) ** 2) / nrm2)


def apply_dilation(w: SampledWindow, L: float, m: int = 0) -> SampledWindow:
    """i^m sqrt|L| g(L t) with spline interpolation of the samples.

    Warns with :class:`DiscardedMassWarning` when more than 1e-10 of the
    energy falls outside the represented range.
    """
    L = float(np.asarray(L).reshape(-1)[0]) if np.ndim(L) else float(L)
    if abs(L) < 1e-12:
        raise ValueError("dilation factor too close to zero")
    if L == 1.0:
        vals = w.values
    elif L == -1.0:
        vals = np.roll(w.values[::-1], 1)
    else:
        lost = dilation_loss(w, L)
        if lost > DISCARD_TOL:
            warnings.warn(f"dilation by {L:.4g} discards {lost:.2e} of the energy",
                          DiscardedMassWarning, stacklevel=2)
        vals = w.evaluate(L * w.t)
    return w.replace((1j) ** (m % 4) * math.sqrt(abs(L)) * vals)


def apply_chirp(w: SampledWindow, P: float) -> SampledWindow:
    P = float(np.asarray(P).reshape(-1)[0]) if np.ndim(P) else float(P)
    if P == 0.0:
        return w
    return w.replace(np.exp(1j * np.pi * P * w.t**2) * w.values)


def _apply_step(w: SampledWindow, step) -> SampledWindow:
    if isinstance(step, Fourier):
        return apply_fourier(w)
    if isinstance(step, Dilation):
        return apply_dilation(w, step.L, step.m)
    if isinstance(step, Chirp):
        return apply_chirp(w, step.P)
    raise TypeError(f"unknown generator step {step!r}")


def apply_chain(w: SampledWindow, chain) -> SampledWindow:
    """Apply the steps right to left so the result projects to ``chain.product()``."""
    steps = chain.steps if isinstance(chain, GeneratorChain) else tuple(chain)
    for s in steps:
        if s.d != 1:
            raise NotImplementedError("operators are implemented for d = 1 only")
    out = w
    for s in reversed(steps):
        out = _apply_step(out, s)
    return out


def apply_symplectic(w: SampledWindow, S) -> SampledWindow:
    """A metaplectic operator over S (up to global phase) applied to `w`."""
    if not isinstance(S, SymplecticMatrix):
        S = SymplecticMatrix(S)
    if S.d != 1:
        raise NotImplementedError("operators are implemented for d = 1 only")
    if np.array_equal(S.matrix, np.eye(2)):
        return w  # skip the two Fourier transforms of the J-split
    return apply_chain(w, decompose(S, balanced=True))


def quadratic_fourier(w: SampledWindow, W: QuadraticForm, m: int = 0) -> SampledWindow:
    """S^_{W,m} = V^_P M^_{L,m} J^ V^_Q applied to `w`."""
    return apply_chain(w, W.chain(m))


def quadratic_fourier_kernel(w: SampledWindow, W: QuadraticForm, m: int, t) -> np.ndarray:
    """Direct quadrature of i^{m - 1/2} sqrt|L| int g(t') exp(2 pi i W(t, t')) dt'."""
    P, L, Q = (float(W.P[0, 0]), float(W.L[0, 0]), float(W.Q[0, 0]))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    tp = w.t
    phase = 0.5 * P * t[:, None] ** 2 - L * t[:, None] * tp[None, :] + 0.5 * Q * tp[None, :] ** 2
    integral = w.grid.h * (np.exp(2j * np.pi * phase) @ w.values)
    return (1j) ** (m % 4) * FOURIER_PHASE * math.sqrt(abs(L)) * integral


def parity_preserved(w: SampledWindow, chain) -> float:
    """Matching parity defect of ``apply_chain(w, chain)``."""
    if w.parity_hint not in ("even", "odd"):
        raise ValueError("window carries no parity hint")
    even, odd = parity_defect(apply_chain(w, chain))
    return even if w.parity_hint == "even" else odd


def phase_aligned_distance(a: SampledWindow, ref: SampledWindow) -> float:
    """min over unimodular c of ||ref - c a||, in the L2 norm of the grid."""
    ip = ref.inner(a)  # <ref, a>
    c = ip / abs(ip) if abs(ip) > 0 else 1.0
    return float(np.sqrt(ref.grid.h * np.sum(np.abs(ref.values - c * a.values) ** 2)))
