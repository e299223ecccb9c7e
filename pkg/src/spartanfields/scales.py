"""Length-scale analytics: integral ranges, correlation spectra, spectral moments.

The correlation spectrum lambda_c(alpha), 0 <= alpha <= 1, is the d-th root
of sup_k k^(2*alpha) * rho(k) over its d-dimensional volume integral, where
rho is the radial spectral density.  alpha = 0 recovers the integral range
(for densities peaked at k = 0) and alpha = 1 the smoothness microscale,
which vanishes for the non-differentiable Spartan family.  Closed forms are
provided for both families alongside a definition-based numeric evaluator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.special as _sp
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .errors import SpectralDivergenceError, UnsupportedModelError
from .models import BlParams, Params, SsrfParams, char_poly, spectral_density
from .oracle import DEFAULT_CONFIG, QuadratureConfig, radial_volume_integral

__all__ = [
    "SpectrumResult",
    "BlSpectrumAux",
    "integral_range_numeric",
    "bl_integral_range",
    "ssrf_corr_spectrum",
    "bl_corr_spectrum",
    "bl_spectrum_aux",
    "corr_spectrum_numeric",
    "correlation_spectrum",
    "spectral_moment",
    "ssrf_large_rigidity_range",
    "UnimodalityError",
]


class UnimodalityError(ValueError):
    """Radial spectral density is not unimodal; the correlation spectrum is undefined."""


class SpectrumResult(NamedTuple):
    value: float
    divergent: bool


@dataclass(frozen=True)
class BlSpectrumAux:
    """Branch-selection quantities for the Bessel-Lommel correlation spectrum."""

    eta1_c: float
    kappa_minus: float
    kappa_plus: float
    kappa_star: float
    g_d: float


def _density_breakpoints(p: Params) -> list:
    """Wavenumbers where the radial density has sharp features (quadrature hints)."""
    pts = [1.0 / p.xi]
    a = abs(p.eta1)
    if a > 4.0:
        pts += [1.0 / (math.sqrt(a) * p.xi), math.sqrt(a) / p.xi]
    if p.eta1 < 0:
        pts.append(math.sqrt(-p.eta1 / 2.0) / p.xi)
    return sorted(pts)


def integral_range_numeric(p: Params, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Coherence length: d-th root of the covariance volume over the variance.

    Computed in reciprocal space as (2*pi)^d * density(0) over the volume
    integral of the density (the inverse-transform normalization converts the
    density integral into the variance).  Works for any permissible model with
    an integrable density; for densities peaked away from k = 0 the value is
    still this ratio (the width-of-peak reading is interpretation only).
    """
    rho = lambda k: spectral_density(k, p)
    dens0 = float(spectral_density(0.0, p))
    total = radial_volume_integral(rho, p.d, 0.0, cfg, cutoff=p.kc,
                                   breakpoints=_density_breakpoints(p))
    return 2.0 * np.pi * (dens0 / total) ** (1.0 / p.d)


def bl_integral_range(p: BlParams) -> float:
    """Closed-form Bessel-Lommel integral range; scales as 1/kc at fixed kc*xi."""
    if not isinstance(p, BlParams):
        raise UnsupportedModelError("bl_integral_range requires BlParams")
    d, uc = p.d, p.kc * p.xi
    bracket = 1.0 / d + p.eta1 * uc**2 / (d + 2) + uc**4 / (d + 4)
    return (math.sqrt(math.pi) * 2.0 ** (1.0 - 1.0 / d) / p.kc
            * _sp.gamma(d / 2.0) ** (1.0 / d) * bracket ** (-1.0 / d))


def _ssrf_b_coefficient(alpha: float, eta1: float) -> float:
    """Normalized weighted spectral integral entering the Spartan spectrum."""
    gg = np.pi * _sp.gamma(1.0 - alpha) * _sp.gamma(1.0 + alpha)
    if abs(eta1 - 2.0) <= 1e-9:
        return float(gg)
    delta = cmath.sqrt(complex(eta1 * eta1 - 4.0))
    if alpha < 1e-8:
        # limit of the principal-power difference; the logs must be taken
        # separately (the ratio form wraps for oscillatory rigidities)
        val = (cmath.log(eta1 + delta) - cmath.log(eta1 - delta)) / delta
    else:
        val = ((eta1 + delta) ** alpha - (eta1 - delta) ** alpha) / (2.0**alpha * alpha * delta)
    if abs(val.imag) > 1e-10 * max(abs(val), 1e-300):
        raise ArithmeticError(f"spectral coefficient has imaginary residue: {val}")
    return float(gg * val.real)


def ssrf_weighted_peak(alpha: float, eta1: float, xi: float) -> float:
    """Stationary point of k^(2*alpha) * density(k) for the Spartan family."""
    num = math.sqrt(eta1**2 * (1 - alpha) ** 2 - 4 * alpha * (alpha - 2)) - eta1 * (1 - alpha)
    return math.sqrt(max(num, 0.0) / (2.0 * (2.0 - alpha) * xi**2))


def ssrf_corr_spectrum(alpha: float, p: SsrfParams) -> float:
    """Closed-form Spartan correlation spectrum for d in {1, 2, 3}, kc = inf.

    Returns 0 at alpha = 1: the weighted spectral integral diverges
    logarithmically, so the smoothness microscale vanishes.
    """
    if not isinstance(p, SsrfParams):
        raise UnsupportedModelError("ssrf_corr_spectrum requires SsrfParams")
    if math.isfinite(p.kc):
        raise UnsupportedModelError("closed-form Spartan spectrum requires kc = inf")
    if p.d not in (1, 2, 3):
        raise UnsupportedModelError(f"Spartan spectrum closed form covers d in {{1,2,3}}, got {p.d}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if alpha == 1.0:
        return 0.0
    kappa = ssrf_weighted_peak(alpha, p.eta1, p.xi)
    u = kappa * p.xi
    b = _ssrf_b_coefficient(alpha, p.eta1)
    weight = 1.0 if (u == 0.0 and alpha == 0.0) else u ** (2.0 * alpha)
    return p.xi * (weight / (b * char_poly(u, p.eta1))) ** (1.0 / p.d)


def eta1_critical(alpha: float) -> float:
    """Rigidity below which the weighted Bessel-Lommel density develops interior extrema."""
    return -2.0 * math.sqrt(alpha * (alpha + 2.0)) / (alpha + 1.0)


def bl_spectrum_aux(alpha: float, p: BlParams) -> BlSpectrumAux:
    """Branch quantities (eta1 threshold, kappa_-, kappa_+, kappa*, g_d) for the B-L spectrum."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    d, uc = p.d, p.kc * p.xi
    bracket = (1.0 / (d + 2 * alpha) + p.eta1 * uc**2 / (d + 2 * alpha + 2)
               + uc**4 / (d + 2 * alpha + 4))
    g_d = (_sp.gamma(d / 2.0) / (2.0 * np.pi ** (d / 2.0) * bracket)) ** (1.0 / d)
    e1c = eta1_critical(alpha)
    disc = (alpha + 1.0) ** 2 * p.eta1**2 - 4.0 * alpha * (alpha + 2.0)
    if p.eta1 > e1c or disc < 0:
        km = kp = math.nan
        kstar = p.kc
    else:
        root = math.sqrt(disc)
        km = math.sqrt(max(-(alpha + 1) * p.eta1 - root, 0.0) / (2.0 * (alpha + 2.0))) / p.xi
        kp = math.sqrt((-(alpha + 1) * p.eta1 + root) / (2.0 * (alpha + 2.0))) / p.xi
        if p.kc < km:
            kstar = p.kc
        elif p.kc <= kp:
            kstar = km
        else:
            phi = lambda k: k ** (2.0 * alpha) * char_poly(k * p.xi, p.eta1) if k > 0 \
                else (char_poly(0.0, p.eta1) if alpha == 0.0 else 0.0)
            kstar = km if phi(km) >= phi(p.kc) else p.kc
    return BlSpectrumAux(eta1_c=e1c, kappa_minus=km, kappa_plus=kp, kappa_star=kstar, g_d=g_d)


def bl_corr_spectrum(alpha: float, p: BlParams) -> float:
    """Closed-form Bessel-Lommel correlation spectrum, d >= 2, any alpha in [0, 1]."""
    if not isinstance(p, BlParams):
        raise UnsupportedModelError("bl_corr_spectrum requires BlParams")
    aux = bl_spectrum_aux(alpha, p)
    u_star = aux.kappa_star * p.xi
    return aux.g_d / p.kc * char_poly(u_star, p.eta1) ** (1.0 / p.d)


def _assert_unimodal(p: Params, n_scan: int = 10_000) -> None:
    k_hi = p.kc if math.isfinite(p.kc) else 60.0 * max(1.0, math.sqrt(abs(p.eta1))) / p.xi
    ks = np.linspace(0.0, k_hi, n_scan)
    s = np.asarray(spectral_density(ks, p))
    i_peak = int(np.argmax(s))
    tol = 1e-9 * (s.max() - s.min() + 1e-300)
    rising = np.diff(s[: i_peak + 1])
    falling = np.diff(s[i_peak:])
    if (rising.size and rising.min() < -tol) or (falling.size and falling.max() > tol):
        raise UnimodalityError(
            "spectral density is not unimodal; correlation spectrum precondition fails"
        )


def corr_spectrum_numeric(p: Params, alpha: float,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> SpectrumResult:
    """Definition-based correlation spectrum: grid+refined sup over radial quadrature.

    Returns value 0 with the ``divergent`` flag set when the weighted spectral
    integral does not converge (Spartan family at alpha = 1).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    _assert_unimodal(p)
    rho = lambda k: spectral_density(k, p)
    f = lambda k: np.asarray(k) ** (2.0 * alpha) * rho(k)

    if math.isfinite(p.kc):
        k_hi = p.kc
    else:
        k_hi = 60.0 * max(1.0, math.sqrt(abs(p.eta1) + 1.0)) / p.xi
    ks = np.linspace(0.0, k_hi, 20_001)
    fv = np.asarray(f(ks))
    i = int(np.argmax(fv))
    if 0 < i < len(ks) - 1:
        res = minimize_scalar(lambda k: -float(f(k)), bounds=(ks[i - 1], ks[i + 1]),
                              method="bounded", options={"xatol": 1e-13 * k_hi})
        sup = max(float(f(res.x)), float(fv[i]))
    else:
        sup = float(fv[i])

    try:
        total = radial_volume_integral(rho, p.d, 2.0 * alpha, cfg, cutoff=p.kc,
                                       breakpoints=_density_breakpoints(p))
    except SpectralDivergenceError:
        return SpectrumResult(0.0, True)
    return SpectrumResult((sup / total) ** (1.0 / p.d), False)


def correlation_spectrum(p: Params, alpha: float, method: str = "closed_form",
                         cfg: QuadratureConfig = DEFAULT_CONFIG) -> SpectrumResult:
    """Dispatch between the closed-form and numeric spectrum evaluations."""
    if method == "numeric":
        return corr_spectrum_numeric(p, alpha, cfg)
    if method != "closed_form":
        raise ValueError(f"method must be 'closed_form' or 'numeric', got {method!r}")
    if isinstance(p, SsrfParams):
        val = ssrf_corr_spectrum(alpha, p)
        return SpectrumResult(val, alpha == 1.0)
    return SpectrumResult(bl_corr_spectrum(alpha, p), False)


def spectral_moment(p: Params, order_2n: int, kc_eff: float,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Radial spectral moment int_0^kc_eff k^(2n+d-1) density(k) dk.

    ``order_2n`` is the (even) moment order 2n; finiteness of the 2n-th moment
    governs existence of n-th mean-square derivatives.  The upper limit is
    clipped to the model cutoff when that is finite.
    """
    if order_2n < 0 or order_2n % 2 != 0:
        raise ValueError("order_2n must be an even nonnegative integer")
    if not kc_eff > 0:
        raise ValueError("kc_eff must be positive")
    hi = min(kc_eff, p.kc)
    integrand = lambda k: np.asarray(k) ** (order_2n + p.d - 1) * spectral_density(k, p)
    # decade splits keep QUADPACK honest when the integrand has a long 1/k tail
    pts = set(_density_breakpoints(p)) | set(np.geomspace(hi * 1e-6, hi, 10)[:-1])
    pts = sorted(x for x in pts if 0.0 < x < hi)
    val, _ = quad(integrand, 0.0, hi, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                  limit=max(cfg.max_subdivisions, 50), points=pts)
    return val


def ssrf_large_rigidity_range(p: SsrfParams) -> float:
    """Large-rigidity coherence radius xi*sqrt(2*pi*eta1/ln(eta1)) (eta1 >> 1 asymptote)."""
    if p.eta1 <= 1.0:
        raise ValueError("asymptotic range requires eta1 > 1")
    return p.xi * math.sqrt(2.0 * np.pi * p.eta1 / math.log(p.eta1))
