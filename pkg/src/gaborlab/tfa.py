"""
Time-frequency transforms of sampled windows (d = 1).

All integrals are plain Riemann sums with the grid spacing h; for smooth,
rapidly decaying integrands these are spectrally accurate.

    V_g f(x, w) = int f(t) conj(g(t - x)) exp(-2 pi i w t) dt
    A_g f(x, w) = exp(pi i x w) V_g f(x, w)
    W_g f(x, w) = 2 A_{g^v} f(2x, 2w)
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .windows import SampledWindow, check_same_grid, reflect


class TFPoint(NamedTuple):
    x: float
    omega: float


def _as_point(p) -> TFPoint:
    x, omega = p
    return TFPoint(float(x), float(omega))


def stft_grid(f: SampledWindow, g: SampledWindow, xs, omegas) -> np.ndarray:
    """V_g f on the tensor grid ``xs x omegas``; shape (len(xs), len(omegas))."""
    check_same_grid(f, g)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    t = f.grid.t
    # rows of the modulation kernel exp(-2 pi i w t)
    kern = np.exp(-2j * np.pi * np.outer(omegas, t))
    prods = np.empty((xs.size, t.size), dtype=complex)
    for i, x in enumerate(xs):
        prods[i] = f.values * np.conj(g.translated(x))
    return f.grid.h * prods @ kern.T


def stft(f: SampledWindow, g: SampledWindow, p) -> complex:
    """<f, pi(x, omega) g> by quadrature."""
    x, omega = _as_point(p)
    return complex(stft_grid(f, g, [x], [omega])[0, 0])


def stft_points(f: SampledWindow, g: SampledWindow, points) -> np.ndarray:
    """V_g f at scattered points (rows (x, omega)); shares work per distinct x."""
    check_same_grid(f, g)
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    out = np.empty(len(pts), dtype=complex)
    t = f.grid.t
    xs, inv = np.unique(pts[:, 0], return_inverse=True)
    for i, x in enumerate(xs):
        sel = np.flatnonzero(inv == i)
        prod = f.values * np.conj(g.translated(x))
        kern = np.exp(-2j * np.pi * np.outer(pts[sel, 1], t))
        out[sel] = f.grid.h * (kern @ prod)
    return out


def ambiguity(f: SampledWindow, g: SampledWindow, p) -> complex:
    x, omega = _as_point(p)
    return np.exp(1j * np.pi * x * omega) * stft(f, g, p)


def ambiguity_grid(f: SampledWindow, g: SampledWindow, xs, omegas) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    return np.exp(1j * np.pi * np.outer(xs, omegas)) * stft_grid(f, g, xs, omegas)


def wigner(f: SampledWindow, g: SampledWindow, p) -> complex:
    x, omega = _as_point(p)
    return 2 * ambiguity(f, reflect(g), (2 * x, 2 * omega))


def wigner_grid(f: SampledWindow, g: SampledWindow, xs, omegas) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    return 2 * ambiguity_grid(f, reflect(g), 2 * xs, 2 * omegas)


@dataclass(frozen=True, eq=False)
class TFGrid:
    """Samples F(x_i, omega_j) on a rectangular grid."""

    xs: np.ndarray
    omegas: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        om = np.asarray(self.omegas, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (xs.size, om.size):
            raise ValueError(f"values shape {v.shape} does not match axes ({xs.size}, {om.size})")
        for axis in (xs, om):
            if axis.size > 1 and np.any(np.diff(axis) <= 0):
                raise ValueError("grid axes must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid values must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, fn, xs, omegas) -> "TFGrid":
        """Build from a vectorized ``fn(xs, omegas) -> (len(xs), len(omegas))``."""
        return cls(xs, omegas, fn(np.asarray(xs, float), np.asarray(omegas, float)))

    @property
    def cell_area(self) -> float:
        dx = self.xs[1] - self.xs[0] if self.xs.size > 1 else 1.0
        dw = self.omegas[1] - self.omegas[0] if self.omegas.size > 1 else 1.0
        return float(dx * dw)

    def to_csv(self, path):
        """Write rows (x, omega, re, im) with 12 significant digits."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "omega", "re", "im"])
            for i, x in enumerate(self.xs):
                for j, om in enumerate(self.omegas):
                    v = self.values[i, j]
                    w.writerow([f"{x:.12g}", f"{om:.12g}", f"{v.real:.12g}", f"{v.imag:.12g}"])


def symplectic_ft(F: TFGrid, p) -> complex:
    """Quadrature of int F(x', w') exp(2 pi i (x w' - w x')) d(x', w')."""
    x, omega = _as_point(p)
    ex = np.exp(-2j * np.pi * omega * F.xs)
    ew = np.exp(2j * np.pi * x * F.omegas)
    return complex(F.cell_area * (ex @ F.values @ ew))


def poisson_check(g: SampledWindow, K: int) -> tuple[complex, complex]:
    """Sums of W_g g(k, l) and A_g g(k, l) over |k|, |l| <= K."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    ks = np.arange(-K, K + 1, dtype=float)
    sum_w = complex(np.sum(wigner_grid(g, g, ks, ks)))
    sum_a = complex(np.sum(ambiguity_grid(g, g, ks, ks)))
    return sum_w, sum_a
