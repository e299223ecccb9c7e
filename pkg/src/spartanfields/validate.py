"""Closed-form-versus-oracle check suites behind the ``validate`` CLI command.

Each check evaluates a closed form against the independent spectral-integral
oracle (or an exact identity) and reports its worst error against a fixed
tolerance.  The report is a plain dict ready for JSON serialization:
``{"suite": ..., "checks": [{"name", "max_err", "tol", "pass"}...], "overall": bool}``.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional

import numpy as np

from .covariance import bl_cov, bl_variance, ssrf_cov_2d, ssrf_variance_2d
from .models import BlParams, SsrfParams, bl_spectral_density, ssrf_spectral_density
from .oracle import hankel_inverse
from .scales import (
    bl_corr_spectrum,
    bl_integral_range,
    corr_spectrum_numeric,
    integral_range_numeric,
    ssrf_corr_spectrum,
)

__all__ = ["run_suites", "SUITES"]

BL_REFERENCE = dict(eta0=1.0, eta1=2.0, xi=1.0, kc=2.0)


def _check_ssrf_cov() -> float:
    worst = 0.0
    lags = np.linspace(0.25, 10.0, 20)
    for eta1 in (-1.5, 0.0, 1.5, 2.0, 3.0, 15.0):
        p = SsrfParams(eta0=1.0, eta1=eta1, xi=1.0)
        profile = lambda k: ssrf_spectral_density(k, p)
        closed = ssrf_cov_2d(lags, p)
        for r, c in zip(lags, closed):
            worst = max(worst, abs(c - hankel_inverse(profile, 2, float(r))))
    return worst


def _check_ssrf_variance() -> float:
    worst = 0.0
    for eta1 in (-1.5, 0.0, 1.5, 2.0, 3.0, 15.0):
        p = SsrfParams(eta0=1.0, eta1=eta1, xi=1.0)
        profile = lambda k: ssrf_spectral_density(k, p)
        v = ssrf_variance_2d(p)
        worst = max(worst, abs(v - hankel_inverse(profile, 2, 0.0)) / v)
    return worst


def _check_bl_cov() -> float:
    worst = 0.0
    for d in (2, 3, 4, 5):
        p = BlParams(d=d, **BL_REFERENCE)
        profile = lambda k: bl_spectral_density(k, p)
        var = bl_variance(p)
        lags = np.linspace(0.05, 20.0, 25)
        closed = bl_cov(lags, p)
        for r, c in zip(lags, closed):
            worst = max(worst, abs(c - hankel_inverse(profile, d, float(r), cutoff=p.kc)) / var)
    return worst


def _check_bl_variance() -> float:
    worst = 0.0
    for d in (2, 3, 4, 5):
        p = BlParams(d=d, **BL_REFERENCE)
        profile = lambda k: bl_spectral_density(k, p)
        v = bl_variance(p)
        worst = max(worst, abs(v - hankel_inverse(profile, d, 0.0, cutoff=p.kc)) / v)
    return worst


def _check_bl_integral_range() -> float:
    rng = np.random.default_rng(20240531)
    worst = 0.0
    for _ in range(20):
        p = BlParams(
            eta0=float(rng.uniform(0.1, 5.0)),
            eta1=float(rng.uniform(-1.9, 50.0)),
            xi=float(rng.uniform(0.2, 5.0)),
            kc=float(rng.uniform(0.1, 5.0)),
            d=int(rng.integers(2, 6)),
        )
        c = bl_integral_range(p)
        worst = max(worst, abs(c - integral_range_numeric(p)) / c)
    return worst


def _check_ssrf_spectrum() -> float:
    worst = 0.0
    for eta1 in (-1.9, 0.0, 2.0, 5.0):
        p = SsrfParams(eta0=1.0, eta1=eta1, xi=5.0)
        for alpha in (0.1, 0.3, 0.5, 0.7, 0.9):
            c = ssrf_corr_spectrum(alpha, p)
            n = corr_spectrum_numeric(p, alpha).value
            worst = max(worst, abs(c - n) / n)
    return worst


def _check_bl_spectrum() -> float:
    worst = 0.0
    for eta1 in (0.0, 3.0, 50.0):
        p = BlParams(eta0=1.0, eta1=eta1, xi=5.0, kc=math.pi / 2.0, d=2)
        for alpha in (0.1, 0.3, 0.5, 0.7, 0.9):
            c = bl_corr_spectrum(alpha, p)
            n = corr_spectrum_numeric(p, alpha).value
            worst = max(worst, abs(c - n) / n)
    return worst


def _check_ssrf_microscale() -> float:
    p = SsrfParams(eta0=1.0, eta1=2.0, xi=1.0)
    result = corr_spectrum_numeric(p, 1.0)
    closed = ssrf_corr_spectrum(1.0, p)
    return 0.0 if (result.divergent and result.value == 0.0 and closed == 0.0) else 1.0


# name -> (callable returning max_err, default tolerance)
SUITES: Dict[str, List] = {
    "ssrf": [
        ("ssrf-cov-vs-quadrature", _check_ssrf_cov, 1e-7),
        ("ssrf-variance-vs-quadrature", _check_ssrf_variance, 1e-7),
    ],
    "bl": [
        ("bl-cov-vs-quadrature", _check_bl_cov, 1e-8),
        ("bl-variance-vs-quadrature", _check_bl_variance, 1e-9),
    ],
    "scales": [
        ("bl-integral-range-closed-vs-numeric", _check_bl_integral_range, 1e-8),
        ("ssrf-spectrum-closed-vs-numeric", _check_ssrf_spectrum, 1e-5),
        ("bl-spectrum-closed-vs-numeric", _check_bl_spectrum, 1e-5),
        ("ssrf-microscale-divergence-flag", _check_ssrf_microscale, 0.5),
    ],
}


def run_suites(suite: str, tol_overrides: Optional[Dict[str, float]] = None) -> dict:
    """Run one suite ('ssrf', 'bl', 'scales') or 'all'; returns the report dict."""
    if suite == "all":
        names = ["ssrf", "bl", "scales"]
    elif suite in SUITES:
        names = [suite]
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from ssrf, bl, scales, all")
    overrides = tol_overrides or {}
    checks = []
    for group in names:
        for name, fn, tol in SUITES[group]:
            tol = float(overrides.get(name, tol))
            err = float(fn())
            checks.append({"name": name, "max_err": err, "tol": tol, "pass": err <= tol})
    return {"suite": suite, "checks": checks, "overall": all(c["pass"] for c in checks)}
