"""Lattices delta^{-1/2d} S Z^{2d} in the time-frequency plane."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .symplectic import SymplecticMatrix, dilation_matrix, identity


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice of density `delta` generated by a symplectic matrix.

    Attributes
    ----------
    generator : SymplecticMatrix
        The matrix S.
    delta : float
        Density, i.e. the reciprocal volume of a fundamental domain.
    """

    generator: SymplecticMatrix
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError(f"density must be positive, got {self.delta}")
        if not isinstance(self.generator, SymplecticMatrix):
            object.__setattr__(self, "generator", SymplecticMatrix(self.generator))

    @property
    def d(self) -> int:
        return self.generator.d

    @property
    def basis(self) -> np.ndarray:
        return self.delta ** (-1.0 / (2 * self.d)) * self.generator.matrix

    def enumerate(self, radius: float) -> np.ndarray:
        return enumerate_points(self, radius)

    def deformed(self, S: SymplecticMatrix) -> "Lattice":
        """The lattice S Lambda (same density)."""
        return Lattice(S @ self.generator, self.delta)

    def __repr__(self):
        return f"Lattice(delta={self.delta!r}, S={self.generator.matrix.tolist()!r})"


def from_symplectic(S, delta: float) -> Lattice:
    return Lattice(S if isinstance(S, SymplecticMatrix) else SymplecticMatrix(S), float(delta))


def square(delta: float, d: int = 1) -> Lattice:
    return Lattice(identity(d), float(delta))


def separable(alpha: float, beta: float) -> Lattice:
    """The separable lattice alpha Z x beta Z (d = 1)."""
    if not (alpha > 0 and beta > 0):
        raise ValueError("alpha and beta must be positive")
    # delta^{-1/2} diag(1/L, L) = diag(alpha, beta)
    return Lattice(dilation_matrix(np.sqrt(beta / alpha)), 1.0 / (alpha * beta))


def enumerate_points(lat: Lattice, radius: float) -> np.ndarray:
    """All lattice points with Euclidean norm <= `radius`.

    Integer coordinates are scanned over the box ``|k|_inf <= radius *
    ||basis^{-1}||_2`` and points are formed as exact products ``basis @ k``.
    The rows come out in lexicographic order of k.

    Returns
    -------
    numpy.ndarray
        Array of shape (n_points, 2d).
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    basis = lat.basis
    n = basis.shape[0]
    kmax = int(np.floor(radius * np.linalg.norm(np.linalg.inv(basis), 2) + 1e-9))
    ks = np.arange(-kmax, kmax + 1)
    if n == 2:
        k = np.stack(np.meshgrid(ks, ks, indexing="ij"), axis=-1).reshape(-1, 2)
    else:
        k = np.array(list(itertools.product(ks, repeat=n)), dtype=float).reshape(-1, n)
    pts = k @ basis.T
    keep = np.einsum("ij,ij->i", pts, pts) <= radius * radius * (1 + 1e-12) + 1e-300
    return pts[keep]


def parse_lattice(spec: str) -> Lattice:
    """Parse ``sq:delta=v``, ``sep:alpha=a,beta=b`` or ``symp:delta=v,S=a,b,c,d``."""
    from ._parse import parse_kv, parse_number

    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "sq":
        kv = parse_kv(rest, {"delta"})
        return square(parse_number(kv["delta"]))
    if kind == "sep":
        kv = parse_kv(rest, {"alpha", "beta"})
        return separable(parse_number(kv["alpha"]), parse_number(kv["beta"]))
    if kind == "symp":
        head, sep, tail = rest.partition("S=")
        if not sep:
            raise ValueError(f"missing S=... in lattice spec {spec!r}")
        kv = parse_kv(head.rstrip(", "), {"delta"})
        entries = [parse_number(v) for v in tail.split(",")]
        if len(entries) != 4:
            raise ValueError("S needs four row-major entries")
        return from_symplectic(np.reshape(entries, (2, 2)), parse_number(kv["delta"]))
    raise ValueError(f"unknown lattice kind {kind!r}")
