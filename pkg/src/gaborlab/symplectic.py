"""
Linear algebra for the real symplectic group Sp(d).

Matrices act on phase-space points z = (x, omega) in R^{2d}.  The generator
conventions are

    J   = [[0, I], [-I, 0]]
    M_L = [[L^{-1}, 0], [0, L^T]]          (dilation)
    V_P = [[I, 0], [P, I]]                 (lower shear / chirp)

and a free matrix S = [[A, B], [C, D]] (det B != 0) factors as

    S = V_{D B^{-1}} M_{B^{-1}} J V_{B^{-1} A}.

Generator chains list their factors left to right in matrix-product order;
operators built from a chain therefore act right to left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

SYMPLECTIC_TOL = 1e-10
FREE_TOL = 1e-10
SINGULAR_TOL = 1e-12
# spectral-norm bound for "well-conditioned" random draws; beyond it the
# lattice delta^{-1/2} S Z^2 is so eccentric that Gaussian lower bounds collapse
WELL_CONDITIONED_NORM = 2.0


class DimensionError(ValueError):
    pass


class NotSymplecticError(ValueError):
    pass


class NotFreeError(ValueError):
    """Raised by :func:`free_factor` when the upper-right block is singular."""


def _as_square(m, name="matrix"):
    m = np.atleast_2d(np.asarray(m, dtype=float))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def _J(d):
    j = np.zeros((2 * d, 2 * d))
    j[:d, d:] = np.eye(d)
    j[d:, :d] = -np.eye(d)
    return j


def symplectic_defect(m) -> float:
    """Return max|M^T J M - J| for a square matrix of even side."""
    m = _as_square(m)
    if m.shape[0] % 2:
        raise DimensionError(f"symplectic matrices have even side, got {m.shape[0]}")
    j = _J(m.shape[0] // 2)
    return float(np.max(np.abs(m.T @ j @ m - j)))


def is_symplectic(m, tol: float = SYMPLECTIC_TOL) -> bool:
    """Check ``M^T J M = J`` in the max norm.

    Raises
    ------
    DimensionError
        If `m` is not square with even side.
    """
    return symplectic_defect(m) <= tol


class SymplecticMatrix:
    """Immutable real 2d x 2d matrix satisfying ``S^T J S = J``.

    Parameters
    ----------
    entries : array_like
        The matrix, validated on construction.
    tol : float
        Admissible max-norm defect of the symplectic condition.
    """

    __slots__ = ("_m",)

    def __init__(self, entries, tol: float = SYMPLECTIC_TOL):
        m = np.array(_as_square(entries, "S"), dtype=float)
        defect = symplectic_defect(m)
        # the defect of a product scales with |S|^2 in floating point
        scale = max(1.0, float(np.max(np.abs(m)))) ** 2
        if defect > tol * scale:
            raise NotSymplecticError(f"S^T J S - J has max defect {defect:.3e}")
        m.setflags(write=False)
        self._m = m

    @classmethod
    def _trusted(cls, m):
        obj = cls.__new__(cls)
        m = np.array(m, dtype=float)
        m.setflags(write=False)
        obj._m = m
        return obj

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def d(self) -> int:
        return self._m.shape[0] // 2

    @property
    def A(self):
        return self._m[: self.d, : self.d]

    @property
    def B(self):
        return self._m[: self.d, self.d :]

    @property
    def C(self):
        return self._m[self.d :, : self.d]

    @property
    def D(self):
        return self._m[self.d :, self.d :]

    def is_free(self, tol: float = FREE_TOL) -> bool:
        return bool(abs(np.linalg.det(self.B)) > tol)

    def inv(self) -> "SymplecticMatrix":
        # S^{-1} = -J S^T J
        j = _J(self.d)
        return SymplecticMatrix._trusted(-j @ self._m.T @ j)

    def __matmul__(self, other):
        if isinstance(other, SymplecticMatrix):
            if other.d != self.d:
                raise DimensionError("half-dimensions differ")
            return SymplecticMatrix._trusted(self._m @ other._m)
        return self._m @ np.asarray(other)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._m, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, SymplecticMatrix):
            return NotImplemented
        return self._m.shape == other._m.shape and bool(np.all(self._m == other._m))

    def __hash__(self):
        return hash(self._m.tobytes())

    def __repr__(self):
        return f"SymplecticMatrix({self._m.tolist()!r})"


def standard_J(d: int = 1) -> SymplecticMatrix:
    if d < 1:
        raise DimensionError("d must be >= 1")
    return SymplecticMatrix._trusted(_J(d))


def identity(d: int = 1) -> SymplecticMatrix:
    return SymplecticMatrix._trusted(np.eye(2 * d))


def dilation_matrix(L) -> SymplecticMatrix:
    """Dilation ``M_L = diag(L^{-1}, L^T)``; scalars are read as 1x1 matrices."""
    L = _as_square(L, "L")
    if abs(np.linalg.det(L)) < SINGULAR_TOL:
        raise np.linalg.LinAlgError("dilation matrix L is singular")
    d = L.shape[0]
    m = np.zeros((2 * d, 2 * d))
    m[:d, :d] = np.linalg.inv(L)
    m[d:, d:] = L.T
    return SymplecticMatrix._trusted(m)


def shear_matrix(P) -> SymplecticMatrix:
    """Lower shear ``V_P = [[I, 0], [P, I]]`` for symmetric `P`."""
    P = _as_square(P, "P")
    if np.max(np.abs(P - P.T)) > SINGULAR_TOL:
        raise ValueError("shear parameter P must be symmetric")
    d = P.shape[0]
    m = np.eye(2 * d)
    m[d:, :d] = P
    return SymplecticMatrix._trusted(m)


def symplectic_form(z, zp) -> float:
    """sigma(z, z') = x . omega' - x' . omega for z = (x, omega)."""
    z = np.asarray(z, dtype=float).ravel()
    zp = np.asarray(zp, dtype=float).ravel()
    if z.shape != zp.shape or z.size % 2:
        raise DimensionError(f"incompatible phase-space points {z.shape}, {zp.shape}")
    d = z.size // 2
    return float(z[:d] @ zp[d:] - zp[:d] @ z[d:])


# --- generator steps ------------------------------------------------------


@dataclass(frozen=True)
class Fourier:
    d: int = 1

    def matrix(self) -> SymplecticMatrix:
        return standard_J(self.d)


@dataclass(frozen=True)
class Dilation:
    """Dilation step with Maslov index `m` (only a phase for operators)."""

    L: np.ndarray
    m: int = 0

    def __post_init__(self):
        L = _as_square(self.L, "L")
        if abs(np.linalg.det(L)) < SINGULAR_TOL:
            raise np.linalg.LinAlgError("dilation matrix L is singular")
        if self.m not in (0, 1, 2, 3):
            raise ValueError("Maslov index must lie in {0, 1, 2, 3}")
        L.setflags(write=False)
        object.__setattr__(self, "L", L)

    @property
    def d(self):
        return self.L.shape[0]

    def matrix(self) -> SymplecticMatrix:
        return dilation_matrix(self.L)

    def __eq__(self, other):
        return (isinstance(other, Dilation) and self.m == other.m
                and np.array_equal(self.L, other.L))

    def __hash__(self):
        return hash((self.L.tobytes(), self.m))


@dataclass(frozen=True)
class Chirp:
    P: np.ndarray

    def __post_init__(self):
        P = _as_square(self.P, "P")
        if np.max(np.abs(P - P.T)) > SINGULAR_TOL:
            raise ValueError("chirp parameter P must be symmetric")
        P.setflags(write=False)
        object.__setattr__(self, "P", P)

    @property
    def d(self):
        return self.P.shape[0]

    def matrix(self) -> SymplecticMatrix:
        return shear_matrix(self.P)

    def __eq__(self, other):
        return isinstance(other, Chirp) and np.array_equal(self.P, other.P)

    def __hash__(self):
        return hash(self.P.tobytes())


GeneratorStep = Union[Fourier, Dilation, Chirp]


@dataclass(frozen=True)
class GeneratorChain:
    """Ordered generator steps; the product is ``steps[0] @ steps[1] @ ...``."""

    steps: tuple = ()
    d: int = 1

    def __post_init__(self):
        steps = tuple(self.steps)
        for s in steps:
            if s.d != self.d:
                raise DimensionError(f"step {s!r} has d={s.d}, chain has d={self.d}")
        object.__setattr__(self, "steps", steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __add__(self, other: "GeneratorChain") -> "GeneratorChain":
        return GeneratorChain(self.steps + tuple(other.steps), self.d)

    def product(self) -> SymplecticMatrix:
        return chain_product(self)

    def describe(self) -> list[str]:
        out = []
        for s in self.steps:
            if isinstance(s, Fourier):
                out.append("Fourier")
            elif isinstance(s, Dilation):
                out.append(f"Dilation(L={_fmt(s.L)}, m={s.m})")
            else:
                out.append(f"Chirp(P={_fmt(s.P)})")
        return out


def _fmt(a):
    a = np.asarray(a)
    if a.size == 1:
        return f"{a.item():.12g}"
    return np.array2string(a, precision=12)


def chain_product(chain: GeneratorChain | Sequence[GeneratorStep], d: int | None = None) -> SymplecticMatrix:
    if not isinstance(chain, GeneratorChain):
        steps = tuple(chain)
        chain = GeneratorChain(steps, d or (steps[0].d if steps else 1))
    m = np.eye(2 * chain.d)
    for s in chain.steps:
        m = m @ s.matrix().matrix
    return SymplecticMatrix._trusted(m)


@dataclass(frozen=True)
class QuadraticForm:
    """Generating function W(t, t') = P t^2 / 2 - L t t' + Q t'^2 / 2.

    The associated free matrix is ``S_W = V_P M_L J V_Q``.
    """

    P: np.ndarray
    L: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        P = _as_square(self.P, "P")
        L = _as_square(self.L, "L")
        Q = _as_square(self.Q, "Q")
        if not (P.shape == L.shape == Q.shape):
            raise DimensionError("P, L, Q must share one shape")
        if np.max(np.abs(P - P.T)) > SINGULAR_TOL or np.max(np.abs(Q - Q.T)) > SINGULAR_TOL:
            raise ValueError("P and Q must be symmetric")
        if abs(np.linalg.det(L)) < SINGULAR_TOL:
            raise np.linalg.LinAlgError("L must be invertible")
        for name, v in (("P", P), ("L", L), ("Q", Q)):
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @property
    def d(self):
        return self.L.shape[0]

    def __call__(self, t, tp):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        tp = np.atleast_1d(np.asarray(tp, dtype=float))
        return 0.5 * t @ self.P @ t - t @ self.L @ tp + 0.5 * tp @ self.Q @ tp

    def chain(self, m: int = 0) -> GeneratorChain:
        return GeneratorChain(
            (Chirp(self.P), Dilation(self.L, m), Fourier(self.d), Chirp(self.Q)), self.d
        )

    def matrix(self) -> SymplecticMatrix:
        return chain_product(self.chain())

    @classmethod
    def from_free(cls, S: SymplecticMatrix) -> "QuadraticForm":
        Binv = np.linalg.inv(S.B)
        return cls(_sym(S.D @ Binv), Binv, _sym(Binv @ S.A))


def _sym(m):
    return 0.5 * (m + m.T)


# --- factorization --------------------------------------------------------


def _coerce(S) -> SymplecticMatrix:
    if isinstance(S, SymplecticMatrix):
        return S
    return SymplecticMatrix(S)


def free_factor(S, m: int = 0) -> GeneratorChain:
    """Factor a free symplectic matrix as ``V_{DB^-1} M_{B^-1} J V_{B^-1 A}``.

    Raises
    ------
    NotFreeError
        If ``|det B| <= 1e-10``; use :func:`decompose` instead.
    """
    S = _coerce(S)
    if not S.is_free():
        raise NotFreeError("upper-right block B is singular; S is not free")
    return QuadraticForm.from_free(S).chain(m)


def decompose(S, *, balanced: bool = False, rng=None, max_attempts: int = 32) -> GeneratorChain:
    """Write an arbitrary symplectic matrix as a generator chain.

    Free matrices are handed to :func:`free_factor`.  Otherwise the matrix is
    split as ``(S T^{-1}) T`` with ``T = J`` or, if that still leaves a
    singular block (only possible for d > 1), ``T = J V_Q`` for random
    symmetric ``Q``.

    Parameters
    ----------
    S : SymplecticMatrix or array_like
    balanced : bool
        Choose among ``S`` and ``S J^{-1}`` the factorization whose B-block is
        best conditioned, even if ``S`` itself is free.  This keeps the chirp
        and dilation parameters of the chain small, which matters when the
        chain is applied to sampled functions.
    rng : numpy.random.Generator, optional
        Source for the random shears (d > 1 fallback only).
    """
    S = _coerce(S)
    d = S.d
    J = standard_J(d)
    Jinv = J.inv()
    if balanced:
        alt = S @ Jinv
        if abs(np.linalg.det(alt.B)) > abs(np.linalg.det(S.B)) and alt.is_free():
            return free_factor(alt) + GeneratorChain((Fourier(d),), d)
    if S.is_free():
        return free_factor(S)
    alt = S @ Jinv
    if alt.is_free():
        return free_factor(alt) + GeneratorChain((Fourier(d),), d)
    rng = np.random.default_rng(0) if rng is None else rng
    for _ in range(max_attempts):
        Q = rng.uniform(-1, 1, size=(d, d))
        Q = _sym(Q)
        T = J @ shear_matrix(Q)
        alt = S @ T.inv()
        if alt.is_free():
            return free_factor(alt) + GeneratorChain((Fourier(d), Chirp(Q)), d)
    raise np.linalg.LinAlgError("no free splitting found")


# --- random sampling --------------------------------------------------------


def random_step(rng: np.random.Generator) -> GeneratorStep:
    """One d=1 generator: Fourier w.p. 1/2, else a chirp or a dilation.

    Chirps draw P ~ U[-2, 2]; dilations draw |L| ~ U[0.5, 2] with a random sign.
    """
    u = rng.random()
    if u < 0.5:
        return Fourier()
    if u < 0.75:
        return Chirp(rng.uniform(-2.0, 2.0))
    return Dilation(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))


def random_chain(rng: np.random.Generator, length: int = 4) -> GeneratorChain:
    return GeneratorChain(tuple(random_step(rng) for _ in range(length)))


def random_symplectic(rng: np.random.Generator, n_generators: int = 4,
                      max_norm: float | None = None, max_tries: int = 10_000) -> SymplecticMatrix:
    """Random element of Sp(1) as a product of random generators.

    With `max_norm`, draws are rejected until the spectral norm of S (and thus
    of S^{-1}, since d = 1) is at most `max_norm`.
    """
    for _ in range(max_tries):
        S = random_chain(rng, n_generators).product()
        if max_norm is None or np.linalg.norm(S.matrix, 2) <= max_norm:
            return S
    raise RuntimeError(f"no sample with spectral norm <= {max_norm}")
