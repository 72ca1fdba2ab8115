"""
Window functions sampled on a centered uniform time grid.

A :class:`TimeGrid` holds ``t_j = (j - N/2) h`` for ``j = 0..N-1``.  The grid
is treated as periodic for reflections, so ``t -> -t`` maps index ``j`` to
``(N - j) mod N``.  Off-grid values come from a degree-7 interpolating
B-spline with zero extension.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Literal, Optional, Union

import numpy as np
from scipy.interpolate import make_interp_spline

Parity = Literal["even", "odd", "none"]

SPLINE_DEGREE = 7
ON_GRID_TOL = 1e-9


@dataclass(frozen=True)
class TimeGrid:
    N: int = 2048
    h: float = 1 / 64

    def __post_init__(self):
        if self.N < 16 or self.N & (self.N - 1):
            raise ValueError(f"N must be a power of two >= 16, got {self.N}")
        if not self.h > 0:
            raise ValueError("grid spacing must be positive")

    @cached_property
    def t(self) -> np.ndarray:
        t = (np.arange(self.N) - self.N // 2) * self.h
        t.setflags(write=False)
        return t

    @property
    def extent(self) -> float:
        return self.N * self.h / 2

    def index_shift(self, x: float) -> Optional[int]:
        """Return x / h if it is an integer (within 1e-9), else None."""
        k = x / self.h
        r = round(k)
        if abs(k - r) <= ON_GRID_TOL:
            return int(r)
        return None


DEFAULT_GRID = TimeGrid()


@dataclass(frozen=True, eq=False)
class SampledWindow:
    grid: TimeGrid
    values: np.ndarray
    parity_hint: Parity = "none"

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("window samples must be finite")
        if self.parity_hint not in ("even", "odd", "none"):
            raise ValueError(f"bad parity hint {self.parity_hint!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def t(self):
        return self.grid.t

    def norm(self) -> float:
        return float(np.sqrt(self.grid.h * np.sum(np.abs(self.values) ** 2)))

    def inner(self, other: "SampledWindow") -> complex:
        """<self, other>, linear in the first slot."""
        check_same_grid(self, other)
        return complex(self.grid.h * np.vdot(other.values, self.values))

    def replace(self, values, parity_hint: Optional[Parity] = None) -> "SampledWindow":
        return SampledWindow(self.grid, values, self.parity_hint if parity_hint is None else parity_hint)

    def __neg__(self):
        return self.replace(-self.values)

    def __mul__(self, c):
        return self.replace(c * self.values)

    __rmul__ = __mul__

    @cached_property
    def _spline(self):
        return make_interp_spline(self.grid.t, self.values, k=SPLINE_DEGREE)

    def evaluate(self, t) -> np.ndarray:
        """Interpolated values at arbitrary times, zero outside the grid."""
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        inside = (t >= self.grid.t[0]) & (t <= self.grid.t[-1])
        if np.any(inside):
            out[inside] = self._spline(t[inside])
        return out

    def translated(self, x: float) -> np.ndarray:
        """Samples of g(t - x) on the grid (exact index shift when on-grid)."""
        k = self.grid.index_shift(x)
        if k is None:
            return self.evaluate(self.grid.t - x)
        out = np.zeros(self.grid.N, dtype=complex)
        if k >= 0:
            if k < self.grid.N:
                out[k:] = self.values[: self.grid.N - k]
        elif -k < self.grid.N:
            out[:k] = self.values[-k:]
        return out


def check_same_grid(*ws: SampledWindow):
    g0 = ws[0].grid
    for w in ws[1:]:
        if w.grid != g0:
            raise ValueError(f"grid mismatch: {g0} vs {w.grid}")


# --- window families --------------------------------------------------------


@dataclass(frozen=True)
class Gaussian:
    """2^{1/4} sqrt(gamma) exp(-pi gamma^2 t^2), unit L2 norm."""

    gamma: float = 1.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class Hermite:
    """L2-normalized Hermite function of order n, dilated by gamma."""

    n: int = 0
    gamma: float = 1.0

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError("Hermite order must be a nonnegative integer")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class OddCompactBump:
    """t (1 - t^2)^3 on [-1, 1], zero elsewhere; normalized on the grid."""


@dataclass(frozen=True, eq=False)
class Samples:
    grid: TimeGrid
    values: np.ndarray


WindowSpec = Union[Gaussian, Hermite, OddCompactBump, Samples]


def hermite_functions(n_max: int, t, gamma: float = 1.0) -> np.ndarray:
    """Rows h_0..h_{n_max} at times t via the normalized three-term recurrence.

    Uses psi_{k+1}(u) = sqrt(2/(k+1)) u psi_k - sqrt(k/(k+1)) psi_{k-1} with
    u = sqrt(2 pi) gamma t, which never forms factorials or H_n(u) itself.
    """
    t = np.asarray(t, dtype=float)
    u = math.sqrt(2 * math.pi) * gamma * t
    out = np.empty((n_max + 1,) + t.shape)
    scale = (2 * math.pi) ** 0.25 * math.sqrt(gamma)
    prev = np.zeros_like(u)
    cur = math.pi ** -0.25 * np.exp(-0.5 * u * u)
    out[0] = cur
    for k in range(n_max):
        prev, cur = cur, math.sqrt(2 / (k + 1)) * u * cur - math.sqrt(k / (k + 1)) * prev
        out[k + 1] = cur
    return scale * out


def sample(spec: WindowSpec, grid: TimeGrid = DEFAULT_GRID) -> SampledWindow:
    t = grid.t
    if isinstance(spec, Gaussian):
        g = 2 ** 0.25 * math.sqrt(spec.gamma) * np.exp(-math.pi * spec.gamma**2 * t * t)
        return SampledWindow(grid, g, "even")
    if isinstance(spec, Hermite):
        g = hermite_functions(spec.n, t, spec.gamma)[-1]
        g = g / math.sqrt(grid.h * np.sum(g * g))
        return SampledWindow(grid, g, "even" if spec.n % 2 == 0 else "odd")
    if isinstance(spec, OddCompactBump):
        g = t * np.maximum(0.0, 1 - t * t) ** 3
        g = g / math.sqrt(grid.h * np.sum(g * g))
        return SampledWindow(grid, g, "odd")
    if isinstance(spec, Samples):
        if spec.grid == grid:
            return SampledWindow(grid, spec.values)
        src = SampledWindow(spec.grid, spec.values)
        return SampledWindow(grid, src.evaluate(t))
    raise TypeError(f"unknown window spec {spec!r}")


def from_csv(path, grid: TimeGrid = DEFAULT_GRID) -> SampledWindow:
    """Read a two-column (t, value) CSV and resample it onto `grid`.

    Values are interpolated by a cubic spline and set to zero outside the
    sampled range; the result is normalized to unit L2 norm.
    """
    from scipy.interpolate import CubicSpline

    ts, vs = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                ts.append(float(row[0]))
                vs.append(complex(row[1].replace(" ", "").replace("i", "j")))
            except (ValueError, IndexError):
                if ts:
                    raise
                continue  # header line
    ts = np.asarray(ts)
    vs = np.asarray(vs)
    order = np.argsort(ts)
    ts, vs = ts[order], vs[order]
    if ts.size < 4:
        raise ValueError(f"{path}: need at least four samples")
    spline = CubicSpline(ts, vs)
    out = np.zeros(grid.N, dtype=complex)
    inside = (grid.t >= ts[0]) & (grid.t <= ts[-1])
    out[inside] = spline(grid.t[inside])
    nrm = math.sqrt(grid.h * np.sum(np.abs(out) ** 2))
    if nrm == 0:
        raise ValueError(f"{path}: window vanishes on the grid")
    return SampledWindow(grid, out / nrm)


def parse_window(spec: str, grid: TimeGrid = DEFAULT_GRID) -> SampledWindow:
    """Parse ``gauss:gamma=v``, ``hermite:n=k,gamma=v``, ``oddbump``, ``file:path``."""
    from ._parse import parse_kv, parse_number

    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "gauss":
        kv = parse_kv(rest, {"gamma"}, optional={"gamma": "1"})
        return sample(Gaussian(parse_number(kv["gamma"])), grid)
    if kind == "hermite":
        kv = parse_kv(rest, {"n", "gamma"}, optional={"gamma": "1"})
        n = parse_number(kv["n"])
        if n != int(n):
            raise ValueError("Hermite order must be an integer")
        return sample(Hermite(int(n), parse_number(kv["gamma"])), grid)
    if kind == "oddbump":
        if rest.strip():
            raise ValueError("oddbump takes no parameters")
        return sample(OddCompactBump(), grid)
    if kind == "file":
        return from_csv(rest, grid)
    raise ValueError(f"unknown window kind {kind!r}")


# --- parity ---------------------------------------------------------------


def _reflected_values(values):
    return np.roll(values[::-1], 1)


def reflect(w: SampledWindow) -> SampledWindow:
    """g(-t) on the same grid."""
    return w.replace(_reflected_values(w.values))


def parity_defect(w: SampledWindow) -> tuple[float, float]:
    """Relative distances to the even and to the odd functions.

    Returns
    -------
    even_defect, odd_defect : float
        ``||w - w(-.)|| / (2 ||w||)`` and ``||w + w(-.)|| / (2 ||w||)``, i.e.
        the norms of the odd and even parts relative to ``||w||``.  Both lie
        in [0, 1] and their squares sum to one.
    """
    nrm = np.linalg.norm(w.values)
    if nrm == 0:
        raise ValueError("parity of the zero window is undefined")
    r = _reflected_values(w.values)
    return (float(np.linalg.norm(w.values - r) / (2 * nrm)),
            float(np.linalg.norm(w.values + r) / (2 * nrm)))


def s0_diagnostic(w: SampledWindow, K: int, step: float) -> float:
    """Riemann sum of |V_g g| over [-K, K]^2 with spacing `step`.

    A decay sanity check, not a certified S0 norm.
    """
    from .tfa import stft_grid

    if K < 1:
        raise ValueError("K must be >= 1")
    n = int(round(K / step))
    axis = step * np.arange(-n, n + 1)
    vals = stft_grid(w, w, axis, axis)
    return float(np.sum(np.abs(vals)) * step * step)
