import math

import numpy as np
import pytest

from nlsim import params as P


def test_alpha_special_points():
    for d in range(2, 11):
        assert P.alpha(1 + 4 / d, d) == pytest.approx(0.0, abs=1e-14)
        assert P.alpha(1 + 2 / d, d) == pytest.approx(1.0, abs=1e-14)
        assert P.alpha(1.0, d) == 2.0


def test_sigma_max_branches():
    assert P.sigma_max(3.0, 2) == 0.5
    assert P.sigma_max(1.6, 8) == pytest.approx(2 - 3 * 0.6, abs=1e-14)
    # junction p = 1 + 3/(d-2): both branches agree
    assert P.sigma_max(1.5, 8) == pytest.approx(0.5, abs=1e-14)
    assert P.sigma_max(1.5 - 1e-9, 8) == 0.5


def test_p_max_closed_form_d2():
    assert P.p_max(2) == pytest.approx((3 + math.sqrt(41)) / 2, abs=1e-12)


def test_p_max_cubic_root_d8():
    # independent bisection oracle on the explicit cubic 6x^3+4x^2-6x-20
    def poly(x):
        return 6 * x**3 + 4 * x**2 - 6 * x - 20

    lo, hi = 1.0, 2.0
    assert poly(lo) < 0 < poly(hi)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if poly(mid) <= 0:
            lo = mid
        else:
            hi = mid
    assert P.p_max(8) == pytest.approx(lo, abs=1e-10)
    assert 1.4 < P.p_max(8) < 1.5


def test_p_max_above_mass_critical_low_d():
    for d in range(2, 8):
        assert P.p_max(d) >= 1 + 4 / d


def test_p_max_below_case_boundary():
    for d in range(3, 8):
        assert P.p_max(d) < 1 + 3 / (d - 2)


def test_cubic_vanishes_at_root_high_d():
    for d in range(8, 26):
        assert abs(P.cubic_pmax_polynomial(d, P.p_max(d))) < 1e-10


def test_cubic_sign_at_comparison_point():
    for d in (8, 9, 10):
        x = (-d + 4 + math.sqrt(d * d + 32)) / 4
        assert P.cubic_pmax_polynomial(d, x) < 0


def test_delta_polynomial_at_one():
    for d in range(2, 26):
        assert P.delta_polynomial(d, 1.0) == -8.0


def test_delta_tilde_polynomial_root():
    for d in range(2, 26):
        root = -d / 4 + 0.25 * math.sqrt(d * d + 8 * d + 48)
        assert P.delta_tilde_polynomial(d, root) == pytest.approx(0.0, abs=1e-12)


def test_delta_polynomial_horner_vs_terms():
    p = 1.4
    direct = 2 * p**3 + 10 * p**2 + (10 - 6) * p - 2 * 10 - 4
    assert P.delta_polynomial(10, p) == pytest.approx(direct, abs=1e-12)


def test_delta_exponents():
    d = 3
    assert P.delta_exponents(1 + 4 / d, d, 2.0)[0] == pytest.approx(0.5, abs=1e-14)
    p = 1.8
    big = P.delta_exponents(p, d, 1e12)[0]
    assert big == pytest.approx(-(p + 2) / 2 * P.alpha(p, d), abs=1e-10)
    rng = np.random.default_rng(3)
    for _ in range(100):
        d = int(rng.integers(2, 11))
        p = float(rng.uniform(1.01, 1 + 4 / d))
        g = float(rng.uniform(1.0, 20.0))
        dl, dlt = P.delta_exponents(p, d, g)
        assert dlt - dl == pytest.approx(-P.alpha(p, d) / 2, abs=1e-12)


def test_admissible():
    for d in range(2, 11):
        assert P.admissible(math.inf, 2, d)
        assert P.admissible(4, 2 * d / (d - 1), d)
    assert not P.admissible(2, math.inf, 2)
    assert not P.admissible(1.5, 8, 3)  # q < 2


def test_sigma_admissible():
    # 2/q + d/r = d/2 - sigma with r >= 1 allowed below 2
    d, sigma = 4, 0.25
    q = 4.0
    r = d / (d / 2 - sigma - 2 / q)
    assert P.sigma_admissible(q, r, d, sigma)
    assert not P.sigma_admissible(q, r, d, sigma + 0.1)


def test_strichartz_pairs_examples():
    (q2, r2), _ = P.strichartz_pairs(2.0, 2, 0.3)
    assert (q2, r2) == (4.0, 4.0)
    (q2, r2), _ = P.strichartz_pairs(1.6, 8, 0.1)
    assert q2 == pytest.approx(2.5, abs=1e-12)
    assert r2 == pytest.approx(2.5, abs=1e-12)


def test_strichartz_pairs_admissibility():
    rng = np.random.default_rng(11)
    for _ in range(100):
        d = int(rng.integers(2, 11))
        p = float(rng.uniform(1.01, 1 + 4 / d - 1e-6))
        smax = P.sigma_max(p, d)
        sigma = float(rng.uniform(1e-3, smax - 1e-3))
        (q2, r2), (a, b) = P.strichartz_pairs(p, d, sigma)
        assert P.admissible(q2, r2, d, tol=1e-9)
        assert P.sigma_admissible(a, b, d, sigma, tol=1e-9)
        if d >= 3:
            assert b <= 2 * d / (d - 2) + 1e-12


def test_strichartz_pairs_infeasible_sigma():
    with pytest.raises(ValueError):
        P.strichartz_pairs(2.0, 2, 0.5)  # sigma = sigma_max
    with pytest.raises(ValueError):
        P.strichartz_pairs(2.0, 2, 0.9)


def test_tail_regularity():
    assert P.tail_regularity(4.0, 2) == pytest.approx(0.5)  # borderline r = 2d/(d-1)
    assert P.tail_regularity(3.0, 3) == pytest.approx(3 * (0.5 - 1 / 3))
    assert P.tail_regularity(5.0, 3) == pytest.approx(1 - 3 * (0.5 - 0.2))
    with pytest.raises(ValueError):
        P.tail_regularity(2.0, 3)


def test_sigma_admissible_lower_p_marked_inferred():
    # below the case boundary for every d in the supported band
    for d in range(8, 11):
        assert P.sigma_admissible_lower_p(d) < 1 + 3 / (d - 2)


def test_lwp_time():
    assert P.lwp_time(1.0, 0.0, K=1.0, L=2.0) == pytest.approx(P.PI4)
    base = P.lwp_time(1.5, 0.3, K=1.0, L=2.0)
    assert P.lwp_time(3.0, 0.3, K=1.0, L=2.0) == pytest.approx(base / 4)
    assert P.lwp_time(1.0, P.PI4 - 1e-12, K=1.0, L=2.0) < 1e-11


def test_horizon():
    assert P.horizon(0) == 0.0
    assert P.horizon(1) == pytest.approx(P.PI4 * (1 - math.exp(-1)), abs=1e-15)
    assert P.horizon(1) == pytest.approx(0.4964, abs=5e-4)
    assert P.horizon(50) == pytest.approx(P.PI4, abs=1e-12)


def test_duhamel_gamma_consistency():
    p, d = 2.5, 2
    sigma = 0.4
    g = P.duhamel_gamma(p, d, sigma)
    assert g >= 1
    gp = 1 / (1 - 1 / g)
    assert P.sigma_admissible(p * gp, p + 1, d, sigma, tol=1e-9)


def test_model_params():
    mp = P.ModelParams(d=2, p=3.0)
    assert mp.alpha == pytest.approx(0.0)
    assert mp.mass_critical
    assert mp.scattering_range
    assert mp.case == 1
    mp8 = P.ModelParams(d=8, p=1.6)
    assert mp8.case == 2
    assert mp8.sigma_max == pytest.approx(0.2)
    with pytest.raises(ValueError):
        P.ModelParams(d=8, p=2.5)  # beyond any regularity window
    with pytest.raises(ValueError):
        P.ModelParams(d=1, p=2.0)
