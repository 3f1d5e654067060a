import math

import numpy as np
import pytest

from nlsim import basis as B


def test_eigenvalue_sq():
    assert B.eigenvalue_sq(0, 2) == 2.0
    for d in range(2, 11):
        assert B.eigenvalue_sq(0, d) == float(d)
    assert B.eigenvalue_sq(10, 5) == 45.0
    with pytest.raises(ValueError):
        B.eigenvalue_sq(-1, 2)


def test_gaussian_weight_normalisation(grid_cache):
    for d in range(2, 11):
        g = grid_cache(d, 16)
        val = float(np.sum(g.weights * np.exp(-g.nodes**2)))
        exact = 0.5 * math.gamma(d / 2)
        assert abs(val - exact) / exact < 1e-12


def test_ground_state_shape(grid_cache):
    g = grid_cache(3, 8)
    vals = g.eigen[0]
    ratio = vals / np.exp(-g.nodes**2 / 2)
    assert ratio[0] > 0
    assert np.allclose(ratio, ratio[0], rtol=1e-12)


def test_first_modes_orthogonality(grid_cache):
    g = grid_cache(4, 8)
    e0, e1 = g.eigen[0], g.eigen[1]
    assert g.omega * np.sum(g.weights * e0 * e0) == pytest.approx(1.0, abs=1e-12)
    assert abs(g.omega * np.sum(g.weights * e0 * e1)) < 1e-12


@pytest.mark.parametrize("d", range(2, 11))
def test_orthonormality(grid_cache, d):
    g = grid_cache(d, 64)
    gram = g.omega * (g.eigen * g.weights) @ g.eigen.T
    assert np.abs(gram - np.eye(65)).max() < 1e-10


def test_positive_at_origin():
    vals = B.eigenfunction_rows(2, 12, np.array([0.0]))
    assert (vals[:, 0] > 0).all()


def test_recurrence_against_mpmath():
    import mpmath as mp

    mp.mp.dps = 40
    for d, n, r in [(2, 7, 1.3), (5, 40, 4.2), (3, 200, 11.0), (10, 3, 6.5)]:
        a = mp.mpf(d) / 2 - 1
        u = mp.mpf(r) ** 2
        norm = mp.sqrt(mp.gamma(n + a + 1) / mp.factorial(n))
        scale = mp.sqrt(2 / (2 * mp.pi ** (mp.mpf(d) / 2) / mp.gamma(mp.mpf(d) / 2)))
        ref = float(scale * mp.laguerre(n, a, u) / norm * mp.e ** (-u / 2))
        mine = B.eval_eigenfunction(n, d, r)
        assert mine == pytest.approx(ref, rel=1e-11, abs=1e-300)


def test_eigenrelation_finite_differences():
    # H = -d_rr - (d-1)/r d_r + r^2 applied by 8th-order central differences
    for d, n in [(2, 3), (2, 17), (5, 8), (5, 40)]:
        lam2 = B.eigenvalue_sq(n, d)
        h = 1e-3
        rmax = math.sqrt(lam2) + 8.0
        r = np.arange(h, rmax, h)
        rows = B.eigenfunction_rows(d, n, r)
        e = rows[n]
        w8 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5,
                       8 / 315, -1 / 560])
        w8_1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0, 4 / 5, -1 / 5, 4 / 105,
                         -1 / 280])
        core = slice(4, -4)
        d2 = sum(w * e[4 + k - 4: len(e) - 8 + 4 + k - 4 or None] for k, w in enumerate(w8))
        d2 = np.zeros_like(e[core])
        d1 = np.zeros_like(e[core])
        for k in range(9):
            seg = e[k: len(e) - 8 + k]
            d2 += w8[k] * seg
            d1 += w8_1[k] * seg
        d2 /= h**2
        d1 /= h
        rc = r[core]
        He = -d2 - (d - 1) / rc * d1 + rc**2 * e[core]
        resid = He - lam2 * e[core]
        num = math.sqrt(np.sum(resid**2 * rc ** (d - 1)) * h)
        assert num / lam2 < 1e-6


def test_round_trip(grid_cache, rng):
    for N in (16, 64, 256):
        g = grid_cache(2, N)
        c = rng.standard_normal(N + 1) + 1j * rng.standard_normal(N + 1)
        f = B.SpectralField(c, g.spec)
        back = B.analyze(B.synthesize(f, g), g)
        assert np.linalg.norm(back.coeffs - c) / np.linalg.norm(c) < 1e-10


def test_analyze_exactness(grid_cache):
    g = grid_cache(3, 24)
    n = 7
    coeffs = B.analyze(g.eigen[n].astype(complex), g)
    unit = np.zeros(25, dtype=complex)
    unit[n] = 1.0
    assert np.abs(coeffs.coeffs - unit).max() < 1e-10


def test_analyze_above_truncation_mode():
    # sampling e_{N+1} on an M >= 4(N+2) grid analyses to ~zero
    spec = B.BasisSpec(d=2, N=12, M=4 * 14)
    g = B.build_grid(spec)
    high = B.eigenfunction_rows(2, 13, g.nodes)[13]
    coeffs = B.analyze(high.astype(complex), g)
    assert np.abs(coeffs.coeffs).max() < 1e-8


def test_analyze_zero(grid_cache):
    g = grid_cache(2, 8)
    f = B.analyze(np.zeros(g.spec.M, dtype=complex), g)
    assert f.l2_norm == 0.0


def test_synthesize_single_mode(grid_cache):
    g = grid_cache(2, 8)
    c = np.zeros(9, dtype=complex)
    c[0] = 1.0
    assert np.allclose(B.synthesize(B.SpectralField(c, g.spec), g), g.eigen[0])
    assert np.all(B.synthesize(np.zeros(9, complex), g) == 0)


def test_parseval(grid_cache, rng):
    g = grid_cache(2, 32)
    for _ in range(20):
        c = rng.standard_normal(33) + 1j * rng.standard_normal(33)
        l2 = np.linalg.norm(c)
        assert abs(B.lp_norm(c, g, 2.0) - l2) / l2 < 1e-9


def _decay_slope(d, q, ns, grid):
    vals = np.array([B.lp_norm_values(grid.eigen[n], grid, q) for n in ns])
    lam = np.sqrt(4.0 * np.asarray(ns) + d)
    A = np.vstack([np.log(lam), np.ones(len(ns))]).T
    return float(np.linalg.lstsq(A, np.log(vals), rcond=None)[0][0])


def test_lp_decay_regimes(grid_cache):
    # below the 2d/(d-1) kink: -d(1/2-1/q); above: d(1/2-1/q)-1
    ns = np.arange(16, 257)
    g2 = grid_cache(2, 256, 6 * 257)
    assert abs(_decay_slope(2, 3.0, ns, g2) - (-2 * (0.5 - 1 / 3))) < 0.1
    assert abs(_decay_slope(2, 8.0, ns, g2) - (2 * (0.5 - 1 / 8) - 1)) < 0.1
    g5 = grid_cache(5, 256, 6 * 257)
    assert abs(_decay_slope(5, 2.4, ns, g5) - (-5 * (0.5 - 1 / 2.4))) < 0.1
    assert abs(_decay_slope(5, 2.6, ns, g5) - (5 * (0.5 - 1 / 2.6) - 1)) < 0.1


def test_lp_decay_borderline_bounded(grid_cache):
    d = 5
    q = 2 * d / (d - 1)
    g = grid_cache(5, 256, 6 * 257)
    ns = np.arange(16, 257)
    lam = np.sqrt(4.0 * ns + d)
    vals = np.array([B.lp_norm_values(g.eigen[n], g, q) for n in ns])
    ratio = lam**0.5 * vals / np.log(lam) ** (1 / q)
    assert ratio.max() < 5.0


def test_sobolev_norm(grid_cache, rng):
    g = grid_cache(2, 16)
    c = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    f = B.SpectralField(c, g.spec)
    assert B.sobolev_norm(f, 0.0) == pytest.approx(np.linalg.norm(c))
    e5 = np.zeros(17, complex)
    e5[5] = 1.0
    assert B.sobolev_norm(B.SpectralField(e5, g.spec), 1.0) == pytest.approx(
        math.sqrt(22))


def test_sobolev_equivalence_with_derivative_form(grid_cache):
    # || H^{1/2} e_n || vs ||<grad> e_n|| + ||<x> e_n||: ratio within [1/4, 4]
    d = 3
    h = 5e-4
    for n in (0, 5, 20, 64):
        lam2 = B.eigenvalue_sq(n, d)
        rmax = math.sqrt(lam2) + 8.0
        r = np.arange(h, rmax, h)
        e = B.eigenfunction_rows(d, n, r)[n]
        de = np.gradient(e, h)
        omega = B.surface_measure(d)
        l2 = omega * np.sum(e**2 * r ** (d - 1)) * h
        grad2 = omega * np.sum(de**2 * r ** (d - 1)) * h
        x2 = omega * np.sum((1 + r**2) * e**2 * r ** (d - 1)) * h
        num = math.sqrt(l2 + grad2) + math.sqrt(x2)
        ratio = num / math.sqrt(lam2)
        assert 0.25 < ratio < 4.0


def test_wsp_norm(grid_cache, rng):
    g = grid_cache(2, 16)
    c = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    assert B.wsp_norm(c, g, 0.0, 3.0) == pytest.approx(float(B.lp_norm(c, g, 3.0)))
    e4 = np.zeros(17, complex)
    e4[4] = 1.0
    lam2 = B.eigenvalue_sq(4, 2)
    assert B.wsp_norm(e4, g, 0.7, 3.0) == pytest.approx(
        lam2**0.35 * float(B.lp_norm(e4, g, 3.0)), rel=1e-12)
    # definitional oracle: weight coefficients then take the plain L^q norm
    sig, q = 0.4, 3.0
    weighted = c * g.spec.lam2 ** (sig / 2)
    direct = (g.omega * np.sum(g.weights * np.abs(weighted @ g.eigen) ** q)) ** (1 / q)
    assert B.wsp_norm(c, g, sig, q) == pytest.approx(direct, rel=1e-10)


def test_projectors(grid_cache, rng):
    g = grid_cache(2, 16)
    c = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    f = B.SpectralField(c, g.spec)
    assert np.array_equal(B.project_sharp(f, 16).coeffs, c)
    p0 = B.project_sharp(f, 0)
    assert p0.coeffs[0] == c[0] and np.all(p0.coeffs[1:] == 0)
    for _ in range(100):
        c2 = rng.standard_normal(17) + 1j * rng.standard_normal(17)
        f2 = B.SpectralField(c2, g.spec)
        K = int(rng.integers(0, 17))
        assert B.project_smooth(f2, K).l2_norm <= f2.l2_norm + 1e-15
        assert B.project_sharp(f2, K).l2_norm <= f2.l2_norm + 1e-15


def test_smooth_taper_shape():
    x = np.linspace(0, 3, 301)
    th = B.smooth_taper(x)
    assert np.all(th <= 1.0) and np.all(th >= 0.0)
    assert np.all(th[x <= 1.0] == 1.0)
    assert np.all(th[x >= 2.0] == 0.0)
    mid = th[(x > 1) & (x < 2)]
    assert np.all(np.diff(mid) <= 1e-12)


def test_eval_stability_range():
    r = np.linspace(0.0, 40.0, 81)
    vals = B.eigenfunction_rows(2, 1024, r)
    assert np.isfinite(vals).all()
    vals5 = B.eigenfunction_rows(5, 1024, r)
    assert np.isfinite(vals5).all()


def test_grid_node_monotone(grid_cache):
    g = grid_cache(2, 32)
    assert np.all(np.diff(g.nodes) > 0)
    assert np.all(g.weights > 0)
