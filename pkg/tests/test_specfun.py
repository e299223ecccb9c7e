import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from spartanfields.specfun import (
    bessel_j,
    bessel_k0_complex,
    bessel_k_real,
    gamma,
    lommel_s,
    lommel_s_series,
)

EULER_GAMMA = 0.5772156649015329


def k_by_quadrature(nu, x):
    """Independent oracle: K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt."""
    val, _ = quad(lambda t: math.exp(-x * math.cosh(t)) * math.cosh(nu * t),
                  0.0, 30.0, epsabs=1e-14, epsrel=1e-13, limit=300)
    return val


def k0_complex_by_quadrature(z):
    """Same integral representation with complex argument, Re(z) > 0."""
    re, _ = quad(lambda t: math.exp(-z.real * math.cosh(t)) * math.cos(z.imag * math.cosh(t)),
                 0.0, 30.0, epsabs=1e-13, epsrel=1e-12, limit=400)
    im, _ = quad(lambda t: -math.exp(-z.real * math.cosh(t)) * math.sin(z.imag * math.cosh(t)),
                 0.0, 30.0, epsabs=1e-13, epsrel=1e-12, limit=400)
    return complex(re, im)


def j0_power_series(x, terms=60):
    total, term = 1.0, 1.0
    for m in range(1, terms):
        term *= -(x * x / 4.0) / (m * m)
        total += term
    return total


class TestGamma:
    def test_anchors(self):
        assert gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        # recurrence from Gamma(0.5): 2.5 * 1.5 * 0.5 * sqrt(pi)
        assert gamma(3.5) == pytest.approx(1.875 * math.sqrt(math.pi), rel=1e-13)
        assert gamma(3.5) == pytest.approx(3.3233509704478426, rel=1e-12)

    def test_matches_stdlib_over_range(self):
        for x in np.linspace(0.1, 30.0, 97):
            assert gamma(float(x)) == pytest.approx(math.gamma(float(x)), rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
    def test_pole_raises(self, x):
        with pytest.raises(ValueError):
            gamma(x)


class TestBesselJ:
    def test_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0

    def test_first_zero_of_j0_located_independently(self):
        # bisection on the power series, then check jv vanishes there
        lo, hi = 2.0, 3.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if j0_power_series(lo) * j0_power_series(mid) <= 0:
                hi = mid
            else:
                lo = mid
        root = 0.5 * (lo + hi)
        assert root == pytest.approx(2.404825557695773, abs=1e-10)
        assert abs(bessel_j(0, root)) <= 1e-9
        assert abs(bessel_j(0, 2.404825557695773)) <= 1e-9

    def test_half_order_closed_form(self):
        x = 1.0
        assert bessel_j(0.5, x) == pytest.approx(math.sqrt(2.0 / (math.pi * x)) * math.sin(x),
                                                 rel=1e-12)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5])
    def test_small_argument_scaling(self, nu):
        x = 1e-6
        assert bessel_j(nu, x) / (x / 2.0) ** nu == pytest.approx(1.0 / gamma(nu + 1.0),
                                                                  rel=1e-10)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            bessel_j(0, -1.0)

    def test_order_below_minus_half_rejected(self):
        with pytest.raises(ValueError):
            bessel_j(-1.0, 1.0)


class TestBesselKReal:
    def test_order_symmetry(self):
        assert bessel_k_real(-1.0, 0.7) == pytest.approx(bessel_k_real(1.0, 0.7), rel=1e-14)

    def test_small_argument_log_behavior(self):
        for x in (1e-6, 1e-5):
            assert bessel_k_real(0.0, x) + math.log(x / 2.0) + EULER_GAMMA == \
                pytest.approx(0.0, abs=1e-9)

    def test_against_integral_representation(self):
        assert bessel_k_real(1.0, 1.0) == pytest.approx(0.6019072301972346, rel=1e-12)
        for nu in (0.0, 0.5, 1.0):
            for x in (1e-2, 0.5, 1.0, 5.0, 20.0):
                assert bessel_k_real(nu, x) == pytest.approx(k_by_quadrature(nu, x), rel=1e-10)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            bessel_k_real(0.0, 0.0)
        with pytest.raises(ValueError):
            bessel_k_real(0.0, -2.0)


class TestBesselK0Complex:
    def test_real_axis_matches_real_k(self):
        for x in (1e-4, 0.3, 1.0, 10.0, 50.0):
            z = bessel_k0_complex(complex(x, 0.0))
            assert z.imag == 0.0
            assert z.real == pytest.approx(bessel_k_real(0.0, x), rel=1e-10)
        assert bessel_k0_complex(1.0 + 0.0j).real == pytest.approx(0.4210244382, rel=1e-9)

    def test_against_complex_quadrature(self):
        for z in (0.5 + 0.2j, 1.0 + 1.0j, 2.0 - 3.0j, 0.25 + 0.0j):
            expected = k0_complex_by_quadrature(z)
            got = bessel_k0_complex(z)
            assert abs(got.real - expected.real) <= 1e-9
            assert abs(got.imag - expected.imag) <= 1e-9

    def test_kelvin_limit(self):
        # Im K0(x e^{-i pi/4}) -> pi/4 as x -> 0
        for x in (1e-3, 1e-4):
            z = x * cmath.exp(-1j * math.pi / 4.0)
            assert bessel_k0_complex(z).imag == pytest.approx(math.pi / 4.0, abs=2e-3 * x + 1e-6)

    def test_conjugate_symmetry(self):
        for z in (1.0 + 0.5j, 0.2 + 3.0j, 4.0 - 1.0j):
            a = bessel_k0_complex(z.conjugate())
            b = bessel_k0_complex(z).conjugate()
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    def test_left_half_plane_rejected(self):
        with pytest.raises(ValueError):
            bessel_k0_complex(-1.0 + 1.0j)
        with pytest.raises(ValueError):
            bessel_k0_complex(0.0 + 1.0j)


class TestComplexValueContract:
    """Built-in complex provides the arithmetic the covariance code relies on."""

    def test_sqrt_conjugation_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            z = complex(rng.uniform(1e-3, 10.0), rng.uniform(-10.0, 10.0))
            assert cmath.sqrt(z).conjugate() == pytest.approx(cmath.sqrt(z.conjugate()),
                                                              rel=1e-14)

    def test_field_axioms_to_rounding(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a, b, c = (complex(*rng.uniform(-5, 5, 2)) for _ in range(3))
            assert a * (b + c) == pytest.approx(a * b + a * c, rel=1e-12, abs=1e-12)
            assert (a + b) + c == pytest.approx(a + (b + c), rel=1e-12, abs=1e-12)


class TestLommel:
    def test_upper_l0_is_power(self):
        for z in (0.5, 1.0, 7.0):
            assert lommel_s(0, 0.0, z, "upper") == pytest.approx(1.0, rel=1e-15)
            assert lommel_s(0, 1.0, z, "upper") == pytest.approx(z, rel=1e-15)

    def test_lower_l1_nu0(self):
        assert lommel_s(1, 0.0, 3.0, "lower") == pytest.approx(3.0, rel=1e-15)

    def test_upper_l2_nu0_hand_value(self):
        # z^4 (1 - 16/z^2 + 64/z^4) at z = 2: 16 * (1 - 4 + 4) = 16
        assert lommel_s(2, 0.0, 2.0, "upper") == pytest.approx(16.0, rel=1e-14)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_closed_forms_match_terminating_series(self, d):
        nu = d / 2.0 - 1.0
        rng = np.random.default_rng(100 + d)
        zs = rng.uniform(0.5, 50.0, 20)
        for l in (0, 1, 2):
            got_lo = lommel_s(l, nu, zs, "lower")
            ref_lo = lommel_s_series(nu + 2 * l, nu - 1.0, zs)
            np.testing.assert_allclose(got_lo, ref_lo, rtol=1e-12)
            got_up = lommel_s(l, nu, zs, "upper")
            ref_up = lommel_s_series(nu + 2 * l + 1, nu, zs)
            np.testing.assert_allclose(got_up, ref_up, rtol=1e-12)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            lommel_s(3, 0.0, 1.0, "lower")
        with pytest.raises(ValueError):
            lommel_s(0, 0.0, 1.0, "middle")
        with pytest.raises(ValueError):
            lommel_s(0, 0.0, 0.0, "upper")
        with pytest.raises(ValueError):
            lommel_s_series(2.0, 0.0, 1.0)  # mu - nu even
