"""Independent numerical evaluation of the spectral integrals.

Everything the closed forms claim is re-derivable from one-dimensional
radial integrals: inverse Hankel transforms of the spectral densities,
finite Bessel moments A_{mu,nu}(z) = int_0^1 x^mu J_nu(z x) dx, and
d-dimensional volume integrals of radial profiles.  This module computes
those integrals by adaptive quadrature, with oscillatory infinite tails
handled by partitioning at Bessel-function zeros and accelerating the
alternating partial sums (Wynn epsilon).  It is the ground truth the test
suite and the ``validate`` command compare the closed forms against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.special as _sp
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import QuadratureError, SpectralDivergenceError

__all__ = [
    "QuadratureConfig",
    "bessel_zeros",
    "hankel_inverse",
    "a_mu_nu",
    "radial_volume_integral",
]

# Strategies for k_c = inf tails.
TAIL_BESSEL_ZEROS = "bessel-zeros"
TAIL_TRUNCATE = "truncate"


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and tail handling for the spectral-integral oracle."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 512
    infinite_tail_strategy: str = TAIL_BESSEL_ZEROS
    k_max: Optional[float] = None  # used by the 'truncate' strategy

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.infinite_tail_strategy not in (TAIL_BESSEL_ZEROS, TAIL_TRUNCATE):
            raise ValueError(f"unknown tail strategy {self.infinite_tail_strategy!r}")
        if self.infinite_tail_strategy == TAIL_TRUNCATE and not self.k_max:
            raise ValueError("'truncate' strategy requires k_max")


DEFAULT_CONFIG = QuadratureConfig()

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def bessel_zeros(nu: float, n: int) -> np.ndarray:
    """First ``n`` positive zeros of J_nu for real order nu >= -1/2.

    Integer orders use scipy's tables; half-integer orders +-1/2 are exact;
    other orders start from the McMahon expansion and are polished with a
    bracketed root solve.
    """
    if n <= 0:
        return np.empty(0)
    if abs(nu - round(nu)) < 1e-12 and nu >= 0:
        return _sp.jn_zeros(int(round(nu)), n)
    if abs(nu - 0.5) < 1e-12:
        return np.pi * np.arange(1, n + 1)
    if abs(nu + 0.5) < 1e-12:
        return np.pi * (np.arange(1, n + 1) - 0.5)
    mu = 4.0 * nu * nu
    beta = (np.arange(1, n + 1) + 0.5 * nu - 0.25) * np.pi
    guess = beta - (mu - 1) / (8 * beta) - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * beta) ** 3)
    zeros = np.empty(n)
    for i, g in enumerate(guess):
        lo, hi = g - 0.5, g + 0.5
        flo, fhi = _sp.jv(nu, lo), _sp.jv(nu, hi)
        if flo * fhi > 0:  # widen once; McMahon is already good to ~1e-3
            lo, hi = g - 1.0, g + 1.0
        zeros[i] = brentq(lambda x: _sp.jv(nu, x), lo, hi, xtol=1e-14)
    return zeros


def _wynn_epsilon(partial_sums: np.ndarray) -> float:
    """Accelerate a sequence of partial sums; returns the deepest stable even-column entry."""
    s = np.asarray(partial_sums, dtype=float)
    # an exactly-converged tail (e.g. band-limited integrand past its cutoff)
    # needs no acceleration and would degenerate the epsilon table
    changing = np.nonzero(np.abs(np.diff(s)) > 0)[0]
    if changing.size == 0:
        return float(s[-1])
    s = s[: changing[-1] + 2]
    if s.size < 4:
        return float(s[-1])
    prev_prev = np.zeros(s.size + 1)  # eps_{-1}
    prev = s.copy()                   # eps_0
    best = float(s[-1])
    col = 0
    while prev.size > 1:
        diff = np.diff(prev)
        # stop before dividing by differences at rounding level
        if np.any(np.abs(diff) < 1e-300):
            break
        cur = prev_prev[1:prev.size] + 1.0 / diff
        col += 1
        if col % 2 == 0 and np.all(np.isfinite(cur)):
            best = float(cur[-1])
        prev_prev, prev = prev, cur
    return best


def _panel_integrals(f: Callable, edges: np.ndarray) -> np.ndarray:
    """Fixed-order Gauss-Legendre integrals of f over consecutive [edges[i], edges[i+1]]."""
    a = edges[:-1][:, None]
    b = edges[1:][:, None]
    x = 0.5 * (b - a) * _GL_NODES[None, :] + 0.5 * (a + b)
    vals = f(x.ravel()).reshape(x.shape)
    return 0.5 * (b - a)[:, 0] * (vals @ _GL_WEIGHTS)


def _adaptive_finite(f: Callable, a: float, b: float, cfg: QuadratureConfig,
                     points: Optional[Sequence[float]] = None) -> float:
    pts = None
    if points:
        pts = sorted(p for p in points if a < p < b)
        pts = pts or None
    val, err = quad(f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                    limit=max(cfg.max_subdivisions, 50), points=pts)
    if not math.isfinite(val):
        raise QuadratureError(f"non-finite quadrature result on [{a}, {b}]")
    return val


def _oscillatory_tail(f: Callable, start: float, spacing_zeros: np.ndarray,
                      cfg: QuadratureConfig) -> float:
    """Integrate f from ``start`` to infinity, partitioning at the given break locations.

    ``spacing_zeros`` must be the increasing sequence of oscillation nodes
    past ``start``; the alternating panel sums are Wynn-accelerated.
    """
    n_panels = 32
    last = None
    while n_panels <= cfg.max_subdivisions:
        edges = np.concatenate(([start], spacing_zeros[:n_panels]))
        panels = _panel_integrals(f, edges)
        est = _wynn_epsilon(np.cumsum(panels))
        if last is not None and abs(est - last) <= max(cfg.abs_tol, cfg.rel_tol * abs(est)):
            return est
        last = est
        n_panels *= 2
    raise QuadratureError("oscillatory tail did not converge within max_subdivisions panels")


def hankel_inverse(density_profile: Callable, d: int, r: float,
                   cfg: QuadratureConfig = DEFAULT_CONFIG,
                   cutoff: float = math.inf,
                   breakpoints: Optional[Sequence[float]] = None) -> float:
    """Position-space covariance at lag r from a radial spectral density.

    Evaluates (2*pi)^(-d/2) * r^(1-d/2) * int_0^kc k^(d/2) J_{d/2-1}(k r) rho(k) dk,
    the radial inverse Fourier transform in d dimensions.  At r = 0 the Bessel
    kernel limit is taken analytically and the volume integral is used instead.

    ``density_profile`` must accept numpy arrays.  ``breakpoints`` may list
    wavenumbers where the profile has sharp features.  Band-limited profiles
    must declare their band edge via ``cutoff``: an undeclared jump inside an
    oscillation panel defeats the fixed-order panel rule.
    """
    if r < 0:
        raise ValueError("lag must be nonnegative")
    nu = d / 2.0 - 1.0
    if r == 0.0:
        vol = radial_volume_integral(density_profile, d, 0.0, cfg,
                                     cutoff=cutoff, breakpoints=breakpoints)
        return vol / (2.0 * np.pi) ** d

    def integrand(k):
        k = np.asarray(k, dtype=float)
        return k ** (d / 2.0) * _sp.jv(nu, k * r) * density_profile(k)

    prefac = r ** (1.0 - d / 2.0) / (2.0 * np.pi) ** (d / 2.0)

    if math.isfinite(cutoff):
        zeros = bessel_zeros(nu, max(8, int(cutoff * r / np.pi) + 8)) / r
        pts = list(zeros[zeros < cutoff]) + list(breakpoints or [])
        return prefac * _adaptive_finite(integrand, 0.0, cutoff, cfg, points=pts)

    if cfg.infinite_tail_strategy == TAIL_TRUNCATE:
        k_max = cfg.k_max
        zeros = bessel_zeros(nu, max(8, int(k_max * r / np.pi) + 8)) / r
        inner = zeros[zeros < k_max]
        head_end = inner[0] if inner.size else k_max
        total = _adaptive_finite(integrand, 0.0, head_end, cfg, points=breakpoints)
        if inner.size:
            edges = np.concatenate((inner, [k_max]))
            total += float(np.sum(_panel_integrals(integrand, edges)))
        return prefac * total

    n_seed = 16
    zeros = bessel_zeros(nu, cfg.max_subdivisions + n_seed) / r
    head = _adaptive_finite(integrand, 0.0, zeros[0], cfg, points=breakpoints)
    tail = _oscillatory_tail(integrand, zeros[0], zeros[1:], cfg)
    return prefac * (head + tail)


def a_mu_nu(mu: float, nu: float, z: float,
            cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Finite Bessel moment int_0^1 x^mu J_nu(z x) dx for mu > -(nu+1), z > 0."""
    if z <= 0:
        raise ValueError("z must be positive")
    if mu <= -(nu + 1):
        raise ValueError(f"need mu > -(nu+1), got mu={mu}, nu={nu}")

    def integrand(x):
        return x**mu * _sp.jv(nu, z * x)

    zeros = bessel_zeros(nu, max(4, int(z / np.pi) + 4)) / z
    pts = list(zeros[zeros < 1.0])
    return _adaptive_finite(integrand, 0.0, 1.0, cfg, points=pts)


def _tail_log_slope(g: Callable, k_ref: float) -> float:
    k1, k2 = 1e6 * k_ref, 1e9 * k_ref
    g1, g2 = float(g(np.asarray([k1]))[0]), float(g(np.asarray([k2]))[0])
    if g1 <= 0 or g2 <= 0:
        return -math.inf  # sign changes or vanishing tail: treat as integrable
    return math.log(g2 / g1) / math.log(k2 / k1)


def radial_volume_integral(profile: Callable, d: int, weight_power: float = 0.0,
                           cfg: QuadratureConfig = DEFAULT_CONFIG,
                           cutoff: float = math.inf,
                           breakpoints: Optional[Sequence[float]] = None) -> float:
    """d-dimensional volume integral S_d * int_0^kc k^(d-1+weight_power) profile(k) dk.

    ``weight_power`` is the extra power of k (2*alpha for fractional-range
    integrals).  S_d = 2 pi^(d/2) / Gamma(d/2) is the unit-sphere surface.

    Raises
    ------
    SpectralDivergenceError
        If the infinite-tail integrand decays no faster than 1/k (checked by a
        log-slope probe three decades out), e.g. the smoothness moment of a
        rough-field density.
    """
    surface = 2.0 * np.pi ** (d / 2.0) / _sp.gamma(d / 2.0)

    def integrand(k):
        k = np.asarray(k, dtype=float)
        return k ** (d - 1 + weight_power) * profile(k)

    if math.isfinite(cutoff):
        return surface * _adaptive_finite(integrand, 0.0, cutoff, cfg, points=breakpoints)

    k_ref = max(breakpoints) if breakpoints else 1.0
    slope = _tail_log_slope(integrand, k_ref)
    if slope >= -1.0 - 1e-6:
        raise SpectralDivergenceError(
            f"radial integrand decays like k^({slope:.6f}); volume integral diverges"
        )
    if breakpoints:
        # resolve the sharp features, then add the smooth tail
        hi = 10.0 * max(breakpoints)
        head = _adaptive_finite(integrand, 0.0, hi, cfg, points=breakpoints)
        tail, _ = quad(integrand, hi, np.inf, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                       limit=max(cfg.max_subdivisions, 50))
        val = head + tail
    else:
        val, _ = quad(integrand, 0.0, np.inf, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                      limit=max(cfg.max_subdivisions, 50))
    if not math.isfinite(val):
        raise QuadratureError("volume integral did not converge")
    return surface * val
