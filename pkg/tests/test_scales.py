import math

import numpy as np
import pytest

from spartanfields.errors import UnsupportedModelError
from spartanfields.models import BlParams, SsrfParams, char_poly, ssrf_spectral_density
from spartanfields.scales import (
    UnimodalityError,
    _ssrf_b_coefficient,
    bl_corr_spectrum,
    bl_integral_range,
    bl_spectrum_aux,
    corr_spectrum_numeric,
    correlation_spectrum,
    eta1_critical,
    integral_range_numeric,
    spectral_moment,
    ssrf_corr_spectrum,
    ssrf_large_rigidity_range,
    ssrf_weighted_peak,
)


class TestIntegralRange:
    def test_bl_closed_form_anchor(self):
        p = BlParams(eta0=1.0, eta1=0.0, xi=1.0, kc=1.0, d=2)
        assert bl_integral_range(p) == pytest.approx(math.sqrt(3.0 * math.pi), rel=1e-14)
        assert bl_integral_range(p) == pytest.approx(3.0700, abs=1e-4)

    def test_bl_closed_vs_numeric_random(self):
        rng = np.random.default_rng(31415)
        for _ in range(50):
            p = BlParams(
                eta0=float(rng.uniform(0.1, 5.0)),
                eta1=float(rng.uniform(-1.9, 50.0)),
                xi=float(rng.uniform(0.2, 5.0)),
                kc=float(rng.uniform(0.1, 5.0)),
                d=int(rng.integers(2, 6)),
            )
            c = bl_integral_range(p)
            assert abs(c - integral_range_numeric(p)) / c <= 1e-8

    def test_inverse_cutoff_scaling_at_fixed_uc(self):
        # kc * ell_c depends only on (uc, d, eta1)
        uc, d, eta1 = 1.7, 3, 4.2
        products = []
        for kc in (0.1, 1.0, 7.3, 40.0):
            p = BlParams(eta0=1.0, eta1=eta1, xi=uc / kc, kc=kc, d=d)
            products.append(kc * bl_integral_range(p))
        ref = products[0]
        for prod in products[1:]:
            assert abs(prod - ref) <= 1e-10 * ref

    def test_monotone_decreasing_in_rigidity(self):
        vals = [bl_integral_range(BlParams(1.0, eta1, 2.0, kc=1.0, d=2))
                for eta1 in (-1.0, 0.0, 1.0, 5.0, 20.0)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_ssrf_numeric_anchor(self):
        # eta1 = 2, d = 2: variance eta0/(4 pi), covariance volume eta0 xi^2
        p = SsrfParams(eta0=1.0, eta1=2.0, xi=1.0)
        assert integral_range_numeric(p) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-9)

    def test_spartan_range_grows_with_rigidity(self):
        vals = [integral_range_numeric(SsrfParams(1.0, eta1, 1.0))
                for eta1 in (0.0, 2.0, 10.0)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestSsrfSpectrum:
    def test_b_coefficient_critical(self):
        val = _ssrf_b_coefficient(0.5, 2.0)
        assert val == pytest.approx(math.pi * math.gamma(1.5) * math.gamma(0.5), rel=1e-13)
        assert val == pytest.approx(math.pi**2 / 2.0, rel=1e-13)

    def test_weighted_peak_at_zero_for_alpha0(self):
        for eta1 in (0.5, 2.0, 9.0):
            assert ssrf_weighted_peak(0.0, eta1, 1.0) <= 1e-7
        assert ssrf_weighted_peak(0.0, -1.0, 1.0) == pytest.approx(math.sqrt(0.5), rel=1e-12)

    def test_peak_is_stationary_point(self):
        for eta1, alpha in ((-1.9, 0.3), (0.0, 0.5), (5.0, 0.8)):
            p = SsrfParams(1.0, eta1, 1.0)
            kap = ssrf_weighted_peak(alpha, eta1, 1.0)
            f = lambda k: k ** (2 * alpha) * ssrf_spectral_density(k, p)
            h = 1e-5 * max(kap, 1.0)
            deriv = (f(kap + h) - f(kap - h)) / (2.0 * h) / f(kap)
            assert abs(deriv) <= 1e-6 / h * 1e-5  # central difference consistent with extremum

    def test_decreasing_in_alpha(self):
        p = SsrfParams(1.0, 5.0, 5.0)
        vals = [ssrf_corr_spectrum(a, p) for a in (0.1, 0.5, 0.9)]
        assert vals[0] > vals[1] > vals[2] > 0.0

    def test_alpha_one_is_zero_microscale(self):
        p = SsrfParams(1.0, 7.0, 2.0)
        assert ssrf_corr_spectrum(1.0, p) == 0.0
        res = correlation_spectrum(p, 1.0, method="closed_form")
        assert res.value == 0.0 and res.divergent

    def test_continuity_across_critical_rigidity(self):
        for alpha in (0.2, 0.5, 0.8):
            b0 = _ssrf_b_coefficient(alpha, 2.0)
            for eta1 in (2.0 - 1e-4, 2.0 + 1e-4):
                assert abs(_ssrf_b_coefficient(alpha, eta1) - b0) <= 1e-4 * b0
            lam0 = ssrf_corr_spectrum(alpha, SsrfParams(1.0, 2.0, 1.0))
            for eta1 in (2.0 - 1e-4, 2.0 + 1e-4):
                lam = ssrf_corr_spectrum(alpha, SsrfParams(1.0, eta1, 1.0))
                assert abs(lam - lam0) <= 1e-3 * lam0

    def test_alpha_to_zero_limit_matches_log_form(self):
        # the alpha -> 0 branch must join the generic power-difference branch
        for eta1 in (-1.0, 5.0):
            near = _ssrf_b_coefficient(1e-7, eta1)
            at0 = _ssrf_b_coefficient(0.0, eta1)
            assert near == pytest.approx(at0, rel=1e-6)

    def test_numeric_equivalence_d2(self):
        for eta1 in (-1.9, 0.0, 2.0, 5.0):
            p = SsrfParams(1.0, eta1, 5.0)
            for alpha in (0.1, 0.5, 0.9):
                closed = ssrf_corr_spectrum(alpha, p)
                numeric = corr_spectrum_numeric(p, alpha)
                assert not numeric.divergent
                assert abs(closed - numeric.value) <= 1e-5 * numeric.value

    def test_integral_range_recovered_at_alpha0(self):
        # lambda(0) and the integral range agree up to the fixed 2*pi volume factor
        for eta1 in (0.0, 2.0, 7.0):
            p = SsrfParams(1.0, eta1, 1.0)
            lam0 = ssrf_corr_spectrum(0.0, p)
            assert 2.0 * math.pi * lam0 == pytest.approx(integral_range_numeric(p), rel=1e-5)

    def test_domain_checks(self):
        with pytest.raises(UnsupportedModelError):
            ssrf_corr_spectrum(0.5, SsrfParams(1.0, 2.0, 1.0, kc=3.0))
        with pytest.raises(UnsupportedModelError):
            ssrf_corr_spectrum(0.5, SsrfParams(1.0, 2.0, 1.0, kc=math.inf, d=1) if False
                               else SsrfParams(1.0, 2.0, 1.0, kc=5.0, d=4))
        with pytest.raises(ValueError):
            ssrf_corr_spectrum(1.5, SsrfParams(1.0, 2.0, 1.0))
        # d = 1 and d = 3 are in the supported set
        for d in (1, 3):
            assert ssrf_corr_spectrum(0.5, SsrfParams(1.0, 2.0, 1.0, d=d)) > 0.0


class TestBlSpectrum:
    def test_eta1_threshold_values(self):
        assert eta1_critical(1.0) == pytest.approx(-math.sqrt(3.0), rel=1e-14)
        assert eta1_critical(0.0) == 0.0

    def test_positive_rigidity_takes_cutoff_branch(self):
        p = BlParams(1.0, 3.0, 5.0, kc=math.pi / 2.0, d=2)
        aux = bl_spectrum_aux(0.5, p)
        assert aux.kappa_star == p.kc
        assert math.isnan(aux.kappa_minus)

    def test_branch_continuity_at_kappa_boundaries(self):
        alpha, eta1, xi = 0.5, -1.9, 1.0
        aux = bl_spectrum_aux(alpha, BlParams(1.0, eta1, xi, kc=10.0, d=2))
        for boundary in (aux.kappa_minus, aux.kappa_plus):
            lo = bl_corr_spectrum(alpha, BlParams(1.0, eta1, xi, kc=boundary - 1e-6, d=2))
            hi = bl_corr_spectrum(alpha, BlParams(1.0, eta1, xi, kc=boundary + 1e-6, d=2))
            assert abs(hi - lo) <= 1e-5 * lo

    def test_interior_peak_branch_uses_kappa_minus(self):
        alpha, eta1, kc = 0.5, -1.9, 0.7
        aux = bl_spectrum_aux(alpha, BlParams(1.0, eta1, 1.0, kc=kc, d=2))
        assert aux.kappa_minus < kc < aux.kappa_plus
        assert aux.kappa_star == aux.kappa_minus
        # direct definition check: sup at kappa_minus
        p = BlParams(1.0, eta1, 1.0, kc=kc, d=2)
        ks = np.linspace(1e-9, kc, 200_001)
        phi = ks ** (2 * alpha) * char_poly(ks * p.xi, eta1)
        assert abs(ks[np.argmax(phi)] - aux.kappa_minus) <= 1e-4

    def test_numeric_equivalence(self):
        for eta1 in (0.0, 3.0, 50.0):
            p = BlParams(1.0, eta1, 5.0, kc=math.pi / 2.0, d=2)
            for alpha in (0.1, 0.5, 0.9, 1.0):
                closed = bl_corr_spectrum(alpha, p)
                numeric = corr_spectrum_numeric(p, alpha)
                assert abs(closed - numeric.value) <= 1e-5 * numeric.value

    def test_microscale_exceeds_integral_range_scale(self):
        # lambda increases with alpha for the band-limited family
        p = BlParams(1.0, 3.0, 5.0, kc=math.pi / 2.0, d=2)
        vals = [bl_corr_spectrum(a, p) for a in (0.0, 0.5, 1.0)]
        assert vals[0] < vals[1] < vals[2]

    def test_unimodality_precondition_rejects_dipped_density(self):
        p = BlParams(1.0, -1.9, 1.0, kc=5.0, d=2)
        with pytest.raises(UnimodalityError):
            corr_spectrum_numeric(p, 0.5)


class TestSpectralMoments:
    def test_spartan_second_moment_grows_logarithmically(self):
        p = SsrfParams(1.0, 2.0, 1.0)
        vals = [spectral_moment(p, 2, kc_eff) for kc_eff in (1e2, 1e3, 1e4)]
        inc1, inc2 = vals[1] - vals[0], vals[2] - vals[1]
        assert inc2 == pytest.approx(inc1, rel=0.05)
        # each decade adds ln(10)/xi^4 asymptotically
        assert inc1 == pytest.approx(math.log(10.0), rel=0.05)

    def test_bl_moments_finite_and_analytic(self):
        p = BlParams(1.0, 2.0, 1.0, kc=2.0, d=2)
        for n in (0, 1, 2, 3):
            got = spectral_moment(p, 2 * n, p.kc)
            uc = p.kc * p.xi
            m = 2 * n + p.d
            expected = p.kc**m / (p.eta0 * p.xi**p.d) * (
                1.0 / m + p.eta1 * uc**2 / (m + 2) + uc**4 / (m + 4))
            assert got == pytest.approx(expected, rel=1e-9)
            assert math.isfinite(got)

    def test_zeroth_moment_matches_variance_normalization(self):
        from spartanfields.covariance import bl_variance
        p = BlParams(1.0, 2.0, 1.0, kc=2.0, d=3)
        surface = 2.0 * math.pi ** 1.5 / math.gamma(1.5)
        assert spectral_moment(p, 0, p.kc) == pytest.approx(
            (2.0 * math.pi) ** 3 * bl_variance(p) / surface, rel=1e-9)

    def test_validation(self):
        p = BlParams(1.0, 2.0, 1.0, kc=2.0, d=2)
        with pytest.raises(ValueError):
            spectral_moment(p, 3, 1.0)
        with pytest.raises(ValueError):
            spectral_moment(p, 2, 0.0)


class TestLargeRigidityAsymptote:
    def test_reference_values(self):
        assert ssrf_large_rigidity_range(SsrfParams(1e4, 1e5, 10.0)) == pytest.approx(2336.0,
                                                                                      abs=1.0)
        assert ssrf_large_rigidity_range(SsrfParams(1e6, 1e6, 10.0)) == pytest.approx(6743.0,
                                                                                      abs=1.0)

    def test_matches_numeric_integral_range_asymptotically(self):
        p = SsrfParams(1.0, 1e5, 10.0)
        asym = ssrf_large_rigidity_range(p)
        numeric = integral_range_numeric(p)
        assert asym == pytest.approx(numeric, rel=0.05)

    def test_requires_large_rigidity(self):
        with pytest.raises(ValueError):
            ssrf_large_rigidity_range(SsrfParams(1.0, 0.5, 1.0))
