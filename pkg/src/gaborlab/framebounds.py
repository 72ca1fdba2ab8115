"""
Sharp frame bounds of Gabor systems G(g, Lambda) for d = 1.

Three independent routes are offered:

* :func:`janssen_bounds` -- extrema of the Janssen symbol, integer
  oversampling (alpha beta)^{-1} in N.
* :func:`zak_bounds` -- extrema of the eigenvalues of the matrix-valued Zak
  symbol, rational oversampling alpha beta = q / p with p >= q.
* :func:`finite_section_bounds` -- the frame-operator quadratic form on a
  truncated lattice, restricted to a span of Hermite functions.  Not sharp;
  used as an oracle.

:func:`bounds_symplectic` reduces a lattice delta^{-1/2} S Z^2 to the square
lattice by replacing g with a metaplectic image S^{-1}^ g.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .lattice import Lattice, enumerate_points
from .metaplectic import apply_symplectic
from .symplectic import SymplecticMatrix
from .tfa import ambiguity_grid, stft_grid
from .windows import SampledWindow, hermite_functions, parity_defect

NOT_FRAME_RATIO = 1e-3
TRUNCATION_TOL = 1e-10
IMAG_TOL = 1e-8
INTEGER_TOL = 1e-9
MAX_DENOMINATOR = 64
PARITY_TOL = 1e-6


class HypothesisError(ValueError):
    """A precondition of a frame-bound theorem does not hold."""


class ParityError(HypothesisError):
    pass


class TruncationError(RuntimeError):
    """A truncated series failed its tail certificate."""


@dataclass
class FrameBounds:
    A: float
    B: float
    method: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (0 <= self.A <= self.B < math.inf):
            raise ValueError(f"invalid frame bounds A={self.A}, B={self.B}")

    @property
    def not_frame(self) -> bool:
        """Lower bound below 1e-3 of the upper bound."""
        return self.A < NOT_FRAME_RATIO * self.B

    def to_dict(self) -> dict:
        d = asdict(self)
        d["not_frame"] = self.not_frame
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _positive(alpha, beta):
    if not (alpha > 0 and beta > 0):
        raise ValueError("alpha and beta must be positive")


def integer_density(alpha: float, beta: float) -> int | None:
    """(alpha beta)^{-1} if it is a positive integer within 1e-9, else None."""
    inv = 1.0 / (alpha * beta)
    n = round(inv)
    if n >= 1 and abs(inv - n) <= INTEGER_TOL:
        return int(n)
    return None


def rational_oversampling(alpha: float, beta: float, max_den: int = MAX_DENOMINATOR) -> tuple[int, int] | None:
    """Return (q, p) with alpha beta = q / p, or None if not recognized."""
    ab = alpha * beta
    frac = Fraction(ab).limit_denominator(max_den)
    if frac.numerator == 0 or abs(ab - float(frac)) > INTEGER_TOL:
        return None
    return frac.numerator, frac.denominator


# --- Janssen symbol -----------------------------------------------------------


def janssen_coefficients(g: SampledWindow, alpha: float, beta: float, K: int) -> np.ndarray:
    """V_g g(k / beta, l / alpha) for |k|, |l| <= K, indexed [k + K, l + K]."""
    _positive(alpha, beta)
    ks = np.arange(-K, K + 1)
    return stft_grid(g, g, ks / beta, ks / alpha)


def _truncation_ratio(c: np.ndarray) -> float:
    a = np.abs(c)
    inner = a[1:-1, 1:-1].sum() if a.shape[0] > 2 else 0.0
    total = a.sum()
    return float((total - inner) / total) if total > 0 else 0.0


def _symbol_on(c: np.ndarray, alpha: float, beta: float, xs, omegas) -> np.ndarray:
    K = (c.shape[0] - 1) // 2
    ks = np.arange(-K, K + 1)
    e_om = np.exp(2j * np.pi * np.outer(ks, omegas))  # [k, j]
    e_x = np.exp(2j * np.pi * np.outer(ks, xs))  # [l, i]
    # sum_kl c[k,l] e^{2 pi i k w_j} e^{2 pi i l x_i} -> [i, j]
    return (e_x.T @ c.T @ e_om) / (alpha * beta)


def janssen_symbol(g: SampledWindow, alpha: float, beta: float, K: int, p) -> complex:
    """(alpha beta)^{-1} sum_{|k|,|l|<=K} V_g g(k/beta, l/alpha) e^{2 pi i (k w + l x)}."""
    x, omega = p
    c = janssen_coefficients(g, alpha, beta, K)
    return complex(_symbol_on(c, alpha, beta, [x], [omega])[0, 0])


def _grid_extrema(fn, periods, grid_n: int, zoom: int = 8, refine_n: int = 17):
    """Min and max of a periodic real function sampled on a grid, then zoomed.

    `fn(xs, ys)` returns values on the tensor grid.  Around the grid minimum
    and maximum a second grid with `zoom` times finer spacing refines the
    estimate.  Returns (min, max, argmin, argmax).
    """
    px, py = periods
    xs = px * np.arange(grid_n) / grid_n
    ys = py * np.arange(grid_n) / grid_n
    v = fn(xs, ys)
    i_min = np.unravel_index(np.argmin(v), v.shape)
    i_max = np.unravel_index(np.argmax(v), v.shape)
    lo, hi = float(v[i_min]), float(v[i_max])
    arg_lo = (xs[i_min[0]], ys[i_min[1]])
    arg_hi = (xs[i_max[0]], ys[i_max[1]])
    if zoom > 1:
        off = np.linspace(-1, 1, refine_n)
        for centre, is_min in ((arg_lo, True), (arg_hi, False)):
            rx = centre[0] + off * px / grid_n
            ry = centre[1] + off * py / grid_n
            w = fn(rx, ry)
            j = np.unravel_index(np.argmin(w) if is_min else np.argmax(w), w.shape)
            if is_min and w[j] < lo:
                lo, arg_lo = float(w[j]), (rx[j[0]], ry[j[1]])
            if not is_min and w[j] > hi:
                hi, arg_hi = float(w[j]), (rx[j[0]], ry[j[1]])
    return lo, hi, arg_lo, arg_hi


def janssen_bounds(g: SampledWindow, alpha: float, beta: float, K: int = 20,
                   grid_n: int = 256) -> FrameBounds:
    """Sharp bounds of G(g, alpha Z x beta Z) for integer (alpha beta)^{-1}.

    The symbol is 1-periodic in x and omega, so its extrema are taken over a
    ``grid_n x grid_n`` grid on [0, 1)^2 followed by an 8x zoom around the
    extremal cells.

    Raises
    ------
    HypothesisError
        If (alpha beta)^{-1} is not a positive integer.
    TruncationError
        If the outer ring |k| = K or |l| = K carries more than 1e-10 of the
        absolute coefficient sum.
    """
    _positive(alpha, beta)
    if integer_density(alpha, beta) is None:
        raise HypothesisError(f"(alpha beta)^-1 = {1 / (alpha * beta):.12g} is not an integer")
    c = janssen_coefficients(g, alpha, beta, K)
    ratio = _truncation_ratio(c)
    if ratio > TRUNCATION_TOL:
        raise TruncationError(f"outer ring holds {ratio:.2e} of the Janssen series at K={K}")
    imag = [0.0]

    def fn(xs, ys):
        s = _symbol_on(c, alpha, beta, xs, ys)
        imag[0] = max(imag[0], float(np.max(np.abs(s.imag))))
        return s.real

    lo, hi, arg_lo, arg_hi = _grid_extrema(fn, (1.0, 1.0), grid_n)
    diagnostics = {
        "K": K,
        "grid_n": grid_n,
        "truncation_ratio": ratio,
        "max_imag_residual": imag[0],
        "raw_min": lo,
        "argmin": [float(v) for v in arg_lo],
        "argmax": [float(v) for v in arg_hi],
        "warning": imag[0] > IMAG_TOL,
    }
    return FrameBounds(max(lo, 0.0), max(hi, 0.0), "janssen", diagnostics)


# --- Zak symbol -----------------------------------------------------------


def zak_transform(f: SampledWindow, a: float, ys, xis) -> np.ndarray:
    """Z_a f(y, xi) = sqrt(a) sum_k f(y - a k) e^{2 pi i a k xi} on a tensor grid.

    The sum runs over all k for which y - a k meets the sampling grid.
    """
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    xis = np.atleast_1d(np.asarray(xis, dtype=float))
    T = f.grid.extent
    kmin = math.floor((ys.min() - T) / a) - 1
    kmax = math.ceil((ys.max() + T) / a) + 1
    ks = np.arange(kmin, kmax + 1)
    samples = f.evaluate(ys[:, None] - a * ks[None, :])  # [y, k]
    return math.sqrt(a) * samples @ np.exp(2j * np.pi * a * np.outer(ks, xis))


def zak_symbol(g: SampledWindow, alpha: float, beta: float, xs, etas) -> np.ndarray:
    """The p x q Zak symbol Phi(x, eta) on a tensor grid, shape (nx, neta, p, q).

    With a = 1/beta and alpha beta = q/p:
    ``Phi[s, j](x, eta) = Z_a g(x - s alpha, eta + j beta / q)``.
    The frame operator is unitarily equivalent to multiplication by
    ``Phi^H Phi / q`` on L2([0, a) x [0, beta/q), C^q).
    """
    qp = rational_oversampling(alpha, beta)
    if qp is None:
        raise HypothesisError(f"alpha beta = {alpha * beta:.12g} is not a recognizable rational")
    q, p = qp
    if p < q:
        raise HypothesisError("density below 1: the Zak symbol cannot have full rank")
    a = 1.0 / beta
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    etas = np.atleast_1d(np.asarray(etas, dtype=float))
    ys = (xs[:, None] - alpha * np.arange(p)[None, :]).ravel()  # [x, s]
    xis = (etas[:, None] + (beta / q) * np.arange(q)[None, :]).ravel()  # [eta, j]
    z = zak_transform(g, a, ys, xis).reshape(xs.size, p, etas.size, q)
    return z.transpose(0, 2, 1, 3)


def zak_bounds(g: SampledWindow, alpha: float, beta: float, grid_n: int = 64) -> FrameBounds:
    """Sharp bounds of G(g, alpha Z x beta Z) for rational alpha beta <= 1.

    The extremal eigenvalues of ``Phi^H Phi / q`` are searched on a
    ``grid_n x grid_n`` grid over [0, 1/beta) x [0, beta/q) followed by an 8x
    zoom around the extremal cells.
    """
    _positive(alpha, beta)
    qp = rational_oversampling(alpha, beta)
    if qp is None:
        raise HypothesisError(f"alpha beta = {alpha * beta:.12g} is not a recognizable rational")
    q, p = qp
    if p < q:
        raise HypothesisError("density below 1: no frame")
    a = 1.0 / beta
    sv = {}

    def smallest(xs, ys):
        s = np.linalg.svd(zak_symbol(g, alpha, beta, xs, ys), compute_uv=False)
        sv["max"] = max(sv.get("max", 0.0), float(np.max(s[..., 0])))
        return s[..., -1] ** 2 / q

    def largest(xs, ys):
        s = np.linalg.svd(zak_symbol(g, alpha, beta, xs, ys), compute_uv=False)
        return s[..., 0] ** 2 / q

    lo, _, arg_lo, _ = _grid_extrema(smallest, (a, beta / q), grid_n)
    _, hi, _, arg_hi = _grid_extrema(largest, (a, beta / q), grid_n)
    diagnostics = {
        "p": p,
        "q": q,
        "grid_n": grid_n,
        "raw_min": lo,
        "argmin": [float(v) for v in arg_lo],
        "argmax": [float(v) for v in arg_hi],
        "tail_mass": _edge_mass(g),
        "warning": _edge_mass(g) > TRUNCATION_TOL,
    }
    return FrameBounds(max(lo, 0.0), max(hi, 0.0), "zak", diagnostics)


def _edge_mass(g: SampledWindow) -> float:
    """Energy fraction in the outer 1/16 of the grid on each side."""
    n = g.grid.N // 16
    v = np.abs(g.values) ** 2
    tot = v.sum()
    return float((v[:n].sum() + v[-n:].sum()) / tot) if tot > 0 else 0.0


def zak_quadratic_form(f: SampledWindow, g: SampledWindow, alpha: float, beta: float,
                       grid_n: int = 64) -> float:
    """(1/q) int ||conj(Phi) F||^2 over [0, 1/beta) x [0, beta/q).

    F_j(x, eta) = Z_a f(x, eta + j beta / q).  By construction this equals
    sum over the full lattice of |<f, pi(lambda) g>|^2.
    """
    q, p = rational_oversampling(alpha, beta)
    a = 1.0 / beta
    xs = a * np.arange(grid_n) / grid_n
    etas = (beta / q) * np.arange(grid_n) / grid_n
    phi = zak_symbol(g, alpha, beta, xs, etas)  # [x, eta, s, j]
    xis = (etas[:, None] + (beta / q) * np.arange(q)[None, :]).ravel()
    F = zak_transform(f, a, xs, xis).reshape(grid_n, grid_n, q)
    v = np.einsum("xesj,xej->xes", np.conj(phi), F)
    area = a * beta / q
    return float(area * np.mean(np.sum(np.abs(v) ** 2, axis=-1)) / q)


# --- finite sections --------------------------------------------------------


def analysis_coefficients(fs: np.ndarray, g: SampledWindow, points: np.ndarray) -> np.ndarray:
    """<f_i, pi(lambda) g> for rows f_i of `fs` and lattice points (x, omega)."""
    t = g.grid.t
    out = np.empty((fs.shape[0], len(points)), dtype=complex)
    for n, (x, om) in enumerate(points):
        atom = np.exp(2j * np.pi * om * t) * g.translated(x)
        out[:, n] = fs @ np.conj(atom)
    return g.grid.h * out


def frame_sum(f: SampledWindow, g: SampledWindow, lat: Lattice, radius: float) -> float:
    """sum over lattice points with |lambda| <= radius of |<f, pi(lambda) g>|^2."""
    pts = enumerate_points(lat, radius)
    c = analysis_coefficients(f.values[None, :], g, pts)
    return float(np.sum(np.abs(c) ** 2))


def finite_section_bounds(g: SampledWindow, lat: Lattice, radius: float = 12.0,
                          n_test: int = 24, gamma: float = 1.0) -> FrameBounds:
    """Extreme eigenvalues of the truncated frame operator on span{h_0..h_{n_test-1}}.

    An inner approximation: A is only overestimated by the restriction and
    B only underestimated by the truncation, so the result is an oracle and
    not a sharp bound.
    """
    if lat.d != 1:
        raise NotImplementedError("frame bounds are implemented for d = 1 only")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    basis = hermite_functions(n_test - 1, g.grid.t, gamma)
    basis /= np.sqrt(g.grid.h * np.sum(basis**2, axis=1))[:, None]
    pts = enumerate_points(lat, radius)
    c = analysis_coefficients(basis.astype(complex), g, pts)
    gram = c @ c.conj().T
    ev = np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))
    diagnostics = {"radius": radius, "n_test": n_test, "n_points": int(len(pts)), "basis_gamma": gamma}
    return FrameBounds(max(float(ev[0]), 0.0), max(float(ev[-1]), 0.0), "finite_section", diagnostics)


# --- dispatch -------------------------------------------------------------


def square_lattice_bounds(g: SampledWindow, delta: float, K: int = 20, grid_n: int | None = None,
                          method: str = "auto") -> FrameBounds:
    """Bounds of G(g, delta^{-1/2} Z^2) via Janssen or Zak."""
    s = delta ** -0.5
    if method in ("auto", "janssen") and integer_density(s, s) is not None:
        try:
            return janssen_bounds(g, s, s, K, grid_n or 256)
        except TruncationError:
            if method == "janssen":
                raise
    if method == "janssen":
        raise HypothesisError(f"delta = {delta:.12g} is not an integer")
    return zak_bounds(g, s, s, grid_n or 64)


def bounds_symplectic(g: SampledWindow, S, delta: float, K: int = 20, grid_n: int | None = None,
                      method: str = "auto") -> FrameBounds:
    """Bounds of G(g, delta^{-1/2} S Z^2) as those of G(S^{-1}^ g, delta^{-1/2} Z^2).

    `method` is ``"auto"`` (Janssen for integer delta when its truncation
    certificate passes, Zak otherwise), ``"janssen"`` or ``"zak"``.
    """
    if not delta > 0:
        raise ValueError("density must be positive")
    if not isinstance(S, SymplecticMatrix):
        S = SymplecticMatrix(S)
    if S.d != 1:
        raise NotImplementedError("frame bounds are implemented for d = 1 only")
    reduced = apply_symplectic(g, S.inv())
    fb = square_lattice_bounds(reduced, delta, K, grid_n, method)
    fb.method = "symplectic_reduction+" + fb.method
    fb.diagnostics["S"] = S.matrix.tolist()
    fb.diagnostics["delta"] = delta
    return fb


def lattice_bounds(g: SampledWindow, lat: Lattice, K: int = 20, grid_n: int | None = None,
                   radius: float = 12.0, n_test: int = 24) -> FrameBounds:
    """Best available route for an arbitrary d = 1 lattice.

    Separable lattices go straight to Janssen/Zak; other lattices with
    rational-recognizable density go through :func:`bounds_symplectic`;
    everything else falls back to the (non-sharp) finite section.
    """
    basis = lat.basis
    if lat.d != 1:
        raise NotImplementedError("frame bounds are implemented for d = 1 only")
    diagonal = abs(basis[0, 1]) < 1e-15 and abs(basis[1, 0]) < 1e-15
    if diagonal and basis[0, 0] > 0 and basis[1, 1] > 0:
        alpha, beta = float(basis[0, 0]), float(basis[1, 1])
        if integer_density(alpha, beta) is not None:
            try:
                return janssen_bounds(g, alpha, beta, K, grid_n or 256)
            except TruncationError:
                pass
        if rational_oversampling(alpha, beta) is not None and alpha * beta <= 1 + INTEGER_TOL:
            return zak_bounds(g, alpha, beta, grid_n or 64)
    elif rational_oversampling(1.0, 1.0 / lat.delta) is not None and lat.delta >= 1 - INTEGER_TOL:
        return bounds_symplectic(g, lat.generator, lat.delta, K, grid_n)
    fb = finite_section_bounds(g, lat, radius, n_test)
    fb.diagnostics["sharp"] = False
    return fb


# --- vanishing-bound certificates ---------------------------------------------


def _require_parity(g: SampledWindow, which: str):
    even, odd = parity_defect(g)
    defect = even if which == "even" else odd
    if defect > PARITY_TOL:
        raise ParityError(f"window is not {which} (defect {defect:.2e})")


def certify_even_critical(g: SampledWindow, K: int = 20) -> float:
    """|Janssen symbol of Z^2 at (1/2, 1/2)|; vanishes for even windows."""
    _require_parity(g, "even")
    return abs(janssen_symbol(g, 1.0, 1.0, K, (0.5, 0.5)))


def certify_odd_critical(g: SampledWindow, K: int = 20) -> float:
    """|Janssen symbol of Z^2 at (0, 0)|; vanishes for odd windows."""
    _require_parity(g, "odd")
    return abs(janssen_symbol(g, 1.0, 1.0, K, (0.0, 0.0)))


def certify_odd_density2(g: SampledWindow, K: int = 20) -> float:
    """|sum_{|k|,|l|<=K} 2 A_g g(2k, l)|; vanishes for odd windows."""
    _require_parity(g, "odd")
    ks = np.arange(-K, K + 1, dtype=float)
    return abs(complex(np.sum(2 * ambiguity_grid(g, g, 2 * ks, ks))))
