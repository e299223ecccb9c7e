"""Closed-form covariance functions for both families.

The Spartan family has explicit 2-D covariances at infinite spectral cutoff,
split into three rigidity regimes (two real K0 terms, the h*K1(h) critical
form, and the imaginary part of a complex-argument K0).  The Bessel-Lommel
family has a tripartite J-Bessel/Lommel sum valid in any d >= 2, switched to
an ascending series of the spectral integral at small dimensionless lag where
the Lommel bracket cancels catastrophically.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.special as _sp

from .errors import UnsupportedModelError
from .models import BlParams, Params, Regime, SsrfParams, ssrf_roots
from .specfun import lommel_s

__all__ = [
    "ssrf_cov_2d",
    "ssrf_variance_2d",
    "bl_cov",
    "bl_variance",
    "bl_autocorrelation",
    "variance",
    "covariance",
    "autocorrelation",
    "covariance_table",
    "BL_SERIES_SWITCH",
]

# Below this dimensionless lag z = kc*r the Lommel sum loses too many digits
# to cancellation; the ascending series of the spectral integral is exact there.
BL_SERIES_SWITCH = 0.5


def _check_ssrf_closed_form(p: SsrfParams) -> None:
    if not isinstance(p, SsrfParams):
        raise UnsupportedModelError("Spartan covariance requires SsrfParams")
    if p.d != 2:
        raise UnsupportedModelError(f"closed-form Spartan covariance is d=2 only, got d={p.d}")
    if math.isfinite(p.kc):
        raise UnsupportedModelError("closed-form Spartan covariance requires kc = inf")


def ssrf_variance_2d(p: SsrfParams) -> float:
    """Zero-lag limit of the 2-D Spartan covariance."""
    _check_ssrf_closed_form(p)
    roots = ssrf_roots(p.eta1)
    if roots.regime is Regime.CRITICAL:
        return p.eta0 / (4.0 * np.pi)
    if roots.regime is Regime.RIGID:
        delta = roots.delta.real
        return p.eta0 * math.log((p.eta1 + delta) / (p.eta1 - delta)) / (4.0 * np.pi * delta)
    s = math.sqrt(4.0 - p.eta1**2)
    return p.eta0 * math.acos(p.eta1 / 2.0) / (2.0 * np.pi * s)


def ssrf_cov_2d(r, p: SsrfParams):
    """2-D Spartan covariance at lag r >= 0 (length units), infinite cutoff.

    Scalar in, scalar out; arrays are evaluated elementwise.  The value at
    r = 0 is the analytic variance limit.
    """
    _check_ssrf_closed_form(p)
    r_in = np.asarray(r, dtype=float)
    if np.any(r_in < 0):
        raise ValueError("lags must be nonnegative")
    h = np.atleast_1d(r_in) / p.xi
    out = np.empty_like(h)
    zero = h == 0.0
    out[zero] = ssrf_variance_2d(p)
    hp = h[~zero]
    if hp.size:
        roots = ssrf_roots(p.eta1)
        if roots.regime is Regime.CRITICAL:
            vals = (p.eta0 * hp / (4.0 * np.pi)) * _sp.kv(1, hp)
        elif roots.regime is Regime.RIGID:
            delta = roots.delta.real
            vals = p.eta0 * (_sp.kv(0, hp * roots.z_plus.real)
                             - _sp.kv(0, hp * roots.z_minus.real)) / (2.0 * np.pi * delta)
        else:
            s = math.sqrt(4.0 - p.eta1**2)
            vals = p.eta0 * _sp.kv(0, hp * roots.z_plus).imag / (np.pi * s)
        out[~zero] = vals
    return float(out[0]) if r_in.ndim == 0 else out


def bl_variance(p: BlParams) -> float:
    """Zero-lag Bessel-Lommel covariance from the band-limited spectral integral."""
    if not isinstance(p, BlParams):
        raise UnsupportedModelError("Bessel-Lommel variance requires BlParams")
    d, uc = p.d, p.kc * p.xi
    bracket = 1.0 / d + p.eta1 * uc**2 / (d + 2) + uc**4 / (d + 4)
    return 2.0 ** (1 - d) * p.kc**d / (np.pi ** (d / 2.0) * _sp.gamma(d / 2.0)
                                       * p.eta0 * p.xi**d) * bracket


def _bl_g0(p: BlParams) -> float:
    return p.kc**p.d / ((2.0 * np.pi) ** (p.d / 2.0) * p.eta0 * p.xi**p.d)


def _bl_cov_lommel(z: np.ndarray, p: BlParams) -> np.ndarray:
    nu = p.d / 2.0 - 1.0
    uc = p.kc * p.xi
    weights = (1.0, p.eta1 * uc**2, uc**4)
    jn = _sp.jv(nu, z)
    jnm1 = _sp.jv(nu - 1, z)
    total = np.zeros_like(z)
    for l, w in enumerate(weights):
        bracket = (2 * nu + 2 * l) * jn * lommel_s(l, nu, z, "lower") \
            - jnm1 * lommel_s(l, nu, z, "upper")
        total += w * bracket / z ** (2 * nu + 2 * l + 1)
    return _bl_g0(p) * total


def _bl_cov_series(z: np.ndarray, p: BlParams, rel_tol: float = 1e-13) -> np.ndarray:
    # term-by-term integration of the ascending J-Bessel series of the
    # spectral integral; exact (no cancellation) for small z
    d, nu = p.d, p.d / 2.0 - 1.0
    uc = p.kc * p.xi
    w = (z / 2.0) ** 2
    pref = 2.0 ** (-nu) * _bl_g0(p)
    cur = np.full_like(z, 1.0 / _sp.gamma(nu + 1.0))
    total = np.zeros_like(z)
    for m in range(200):
        bracket = (1.0 / (d + 2 * m) + p.eta1 * uc**2 / (d + 2 + 2 * m)
                   + uc**4 / (d + 4 + 2 * m))
        contrib = cur * bracket
        total += contrib
        if m >= 2 and np.max(np.abs(contrib)) <= rel_tol * np.max(np.abs(total)):
            break
        cur = -cur * w / ((m + 1) * (nu + m + 1))
    return pref * total


def bl_cov(r, p: BlParams):
    """Bessel-Lommel covariance at lag r >= 0 for d >= 2, finite cutoff.

    Uses the Lommel-function closed form for z = kc*r >= BL_SERIES_SWITCH and
    the ascending series of the spectral integral below it; r = 0 returns the
    analytic variance.
    """
    if not isinstance(p, BlParams):
        raise UnsupportedModelError("Bessel-Lommel covariance requires BlParams")
    r_in = np.asarray(r, dtype=float)
    if np.any(r_in < 0):
        raise ValueError("lags must be nonnegative")
    z = np.atleast_1d(r_in) * p.kc
    out = np.empty_like(z)
    zero = z == 0.0
    out[zero] = bl_variance(p)
    small = (~zero) & (z < BL_SERIES_SWITCH)
    large = z >= BL_SERIES_SWITCH
    if np.any(small):
        out[small] = _bl_cov_series(z[small], p)
    if np.any(large):
        out[large] = _bl_cov_lommel(z[large], p)
    return float(out[0]) if r_in.ndim == 0 else out


def bl_autocorrelation(r, p: BlParams):
    """Bessel-Lommel autocorrelation; equals 1 at r = 0 and is independent of eta0."""
    return bl_cov(r, p) / bl_variance(p)


def variance(p: Params) -> float:
    """Closed-form variance of either family."""
    if isinstance(p, SsrfParams):
        return ssrf_variance_2d(p)
    return bl_variance(p)


def covariance(r, p: Params):
    """Closed-form covariance of either family at lag(s) r."""
    if isinstance(p, SsrfParams):
        return ssrf_cov_2d(r, p)
    return bl_cov(r, p)


def autocorrelation(r, p: Params):
    """Covariance normalized by the variance, for either family."""
    return covariance(r, p) / variance(p)


def covariance_table(p: Params, lags) -> np.ndarray:
    """Batch evaluation over a sorted list of nonnegative lags.

    The result is independent of evaluation order; the sortedness requirement
    keeps downstream tables monotone in the abscissa.
    """
    lags = np.asarray(lags, dtype=float)
    if lags.ndim != 1 or lags.size == 0:
        raise ValueError("lags must be a nonempty 1-D sequence")
    if np.any(lags < 0):
        raise ValueError("lags must be nonnegative")
    if np.any(np.diff(lags) < 0):
        raise ValueError("lags must be sorted ascending")
    return covariance(lags, p)
