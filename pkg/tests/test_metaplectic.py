import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaborlab.metaplectic import (
    FOURIER_PHASE,
    DiscardedMassWarning,
    apply_chain,
    apply_chirp,
    apply_dilation,
    apply_fourier,
    apply_symplectic,
    parity_preserved,
    phase_aligned_distance,
    quadratic_fourier,
    quadratic_fourier_kernel,
)
from gaborlab.symplectic import (
    Chirp,
    Dilation,
    Fourier,
    GeneratorChain,
    QuadraticForm,
    dilation_matrix,
    identity,
    random_chain,
    random_symplectic,
    standard_J,
)
from gaborlab.tfa import stft
from gaborlab.windows import Gaussian, Hermite, reflect, sample


def _dist(a, b):
    return float(np.sqrt(a.grid.h * np.sum(np.abs(a.values - b.values) ** 2)))


def test_fourier_examples(gauss, herm1):
    assert _dist(apply_fourier(gauss), gauss * FOURIER_PHASE) < 1e-8
    # F h1 = -i h1
    assert _dist(apply_fourier(herm1), herm1 * (-1j * FOURIER_PHASE)) < 1e-8
    assert np.max(np.abs(np.abs(apply_fourier(herm1).values) - np.abs(herm1.values))) < 1e-8
    assert abs(apply_fourier(sample(Hermite(5, 0.7))).norm() - 1) < 1e-8


def test_fourier_fourth_power(herm3):
    w = herm3
    for _ in range(4):
        w = apply_fourier(w)
    assert _dist(w, -herm3) < 1e-8


def test_dilation_examples(gauss, herm1):
    assert np.array_equal(apply_dilation(herm1, 1.0).values, herm1.values)
    assert np.array_equal(apply_dilation(herm1, -1.0).values, reflect(herm1).values)
    assert np.max(np.abs(apply_dilation(gauss, 2.0).values - sample(Gaussian(2.0)).values)) < 1e-6
    assert abs(apply_dilation(herm1, 1.0, m=1).values[1000] - 1j * herm1.values[1000]) == 0
    for L in (0.25, 0.6, 3.0, -4.0):
        assert abs(apply_dilation(herm1, L).norm() - 1) < 1e-6
    with pytest.raises(ValueError):
        apply_dilation(herm1, 0.0)


def test_dilation_warns_on_lost_mass(gauss):
    wide = sample(Gaussian(0.1))
    with pytest.warns(DiscardedMassWarning):
        apply_dilation(wide, 0.25)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        apply_dilation(gauss, 0.5)


def test_chirp(gauss):
    assert apply_chirp(gauss, 0.0) is gauss
    c = apply_chirp(gauss, 1.5)
    assert np.allclose(c.values, np.exp(1.5j * np.pi * gauss.t ** 2) * gauss.values, atol=0)


def test_chain_examples(herm3):
    assert apply_chain(herm3, GeneratorChain((), 1)) is herm3
    four = apply_chain(herm3, [Fourier()] * 4)
    assert _dist(four, -herm3) < 1e-8


def test_chain_order_is_right_to_left(gauss):
    # J^ V^_P g: chirp first, then Fourier
    out = apply_chain(gauss, [Fourier(), Chirp(1.0)])
    ref = apply_fourier(apply_chirp(gauss, 1.0))
    assert np.array_equal(out.values, ref.values)


def test_apply_symplectic_examples(gauss, herm1):
    assert phase_aligned_distance(apply_symplectic(herm1, identity(1)), herm1) < 1e-12
    assert phase_aligned_distance(apply_symplectic(gauss, dilation_matrix(2.0)), sample(Gaussian(2.0))) < 1e-6
    assert phase_aligned_distance(apply_symplectic(herm1, standard_J(1)), apply_fourier(herm1)) < 1e-8


def test_apply_symplectic_rejects_d2(gauss):
    with pytest.raises(NotImplementedError):
        apply_symplectic(gauss, standard_J(2))


def test_quadratic_fourier_reduces_to_fourier(herm1):
    W = QuadraticForm(0.0, 1.0, 0.0)
    assert _dist(quadratic_fourier(herm1, W), apply_fourier(herm1)) < 1e-12


def test_quadratic_fourier_kernel_at_origin(gauss):
    W = QuadraticForm(1.0, 1.0, 0.0)
    a = quadratic_fourier(gauss, W).values[gauss.grid.N // 2]
    b = quadratic_fourier_kernel(gauss, W, 0, [0.0])[0]
    assert abs(a - b) < 1e-6


def test_covariance_intertwines_shifts(herm3, rng):
    # S^ pi(z) S^-1 = c pi(S z): |<S^f, pi(Sz) S^g>| = |<f, pi(z) g>|
    f = sample(Hermite(2))
    for _ in range(3):
        S = random_symplectic(rng, max_norm=2.5)
        z = rng.uniform(-1, 1, size=2)
        lhs = stft(apply_symplectic(f, S), apply_symplectic(herm3, S), S.matrix @ z)
        assert abs(abs(lhs) - abs(stft(f, herm3, z))) < 1e-6


def test_parity_preserved_examples(gauss, herm1):
    assert parity_preserved(gauss, [Chirp(1.0)]) < 1e-12
    assert parity_preserved(herm1, [Fourier()]) < 1e-8
    rng = np.random.default_rng(1)
    assert parity_preserved(herm1, random_chain(rng, 6)) < 1e-5
    with pytest.raises(ValueError):
        parity_preserved(herm1.replace(herm1.values, "none"), [Fourier()])


def test_phase_aligned_distance(herm1):
    assert phase_aligned_distance(herm1 * np.exp(0.7j), herm1) < 1e-14
    assert abs(phase_aligned_distance(sample(Hermite(2)), herm1) - math.sqrt(2)) < 1e-10


_step = st.one_of(
    st.just(Fourier()),
    st.floats(-2, 2).map(Chirp),
    st.floats(0.5, 2).flatmap(lambda v: st.sampled_from([v, -v])).map(Dilation),
)


@settings(max_examples=25, deadline=None)
@given(st.lists(_step, max_size=4))
def test_chains_are_unitary_and_parity_preserving(herm1, steps):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DiscardedMassWarning)
        out = apply_chain(herm1, steps)
        assert abs(out.norm() - 1) < 1e-5
        assert parity_preserved(herm1, steps) < 1e-5
