"""Parameter vectors, spectral densities, and the characteristic polynomial.

Two covariance families share the parameter vector (eta0, eta1, xi, kc):

* the Spartan family, whose spectral density is eta0*xi^d / Pi(k*xi) below
  an (optionally infinite) cutoff kc, with Pi(u) = 1 + eta1*u^2 + u^4;
* the Bessel-Lommel family, whose spectral density is the band-limited
  reciprocal Pi(k*xi) / (eta0*xi^d) with a mandatory finite cutoff.

Both are permissible (Bochner) iff eta1 > -2; the Spartan density with
kc = inf additionally needs d < 4 for integrability.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import PermissibilityError, UnsupportedModelError

__all__ = [
    "SsrfParams",
    "BlParams",
    "Params",
    "Regime",
    "RootPair",
    "char_poly",
    "ssrf_spectral_density",
    "bl_spectral_density",
    "spectral_density",
    "ssrf_roots",
    "params_to_dict",
    "params_from_dict",
]

DEFAULT_CRITICAL_TOL = 1e-6


def _check_common(eta0: float, eta1: float, xi: float) -> None:
    if not eta0 > 0:
        raise PermissibilityError(f"eta0 must be positive, got {eta0}")
    if not xi > 0:
        raise PermissibilityError(f"xi must be positive, got {xi}")
    if not eta1 > -2:
        raise PermissibilityError(f"eta1 must exceed -2, got {eta1}")


@dataclass(frozen=True)
class SsrfParams:
    """Spartan model parameters (amplitude, rigidity, length, spectral cutoff)."""

    eta0: float
    eta1: float
    xi: float
    kc: float = math.inf
    d: int = 2

    def __post_init__(self):
        _check_common(self.eta0, self.eta1, self.xi)
        if not self.kc > 0:
            raise PermissibilityError(f"kc must be positive (or inf), got {self.kc}")
        if self.d < 1 or self.d != int(self.d):
            raise PermissibilityError(f"d must be a positive integer, got {self.d}")
        if math.isinf(self.kc) and self.d >= 4:
            raise PermissibilityError(
                f"infinite cutoff requires d < 4 for an integrable density, got d={self.d}"
            )


@dataclass(frozen=True)
class BlParams:
    """Bessel-Lommel model parameters; the cutoff must be finite and positive."""

    eta0: float
    eta1: float
    xi: float
    kc: float
    d: int = 2

    def __post_init__(self):
        _check_common(self.eta0, self.eta1, self.xi)
        if not (math.isfinite(self.kc) and self.kc > 0):
            raise PermissibilityError(
                f"Bessel-Lommel models need a finite positive cutoff, got kc={self.kc}"
            )
        if self.d < 2 or self.d != int(self.d):
            raise UnsupportedModelError(f"Bessel-Lommel models need integer d >= 2, got {self.d}")


Params = Union[SsrfParams, BlParams]


class Regime(enum.Enum):
    """Shape regime of the Spartan covariance, set by the rigidity eta1."""

    RIGID = "rigid"            # eta1 > 2: monotone combination of two K0 terms
    CRITICAL = "critical"      # eta1 = 2: double root, h*K1(h) form
    OSCILLATORY = "oscillatory"  # |eta1| < 2: complex-conjugate roots, damped oscillation


@dataclass(frozen=True)
class RootPair:
    """Square roots z+- of the negated characteristic-polynomial roots.

    Satisfies z+**2 = (eta1 - Delta)/2, z-**2 = (eta1 + Delta)/2 with
    Delta = sqrt(eta1^2 - 4), Re(z+-) > 0 and z+ * z- = 1.  In the
    oscillatory regime z- = conj(z+).
    """

    z_plus: complex
    z_minus: complex
    delta: complex
    regime: Regime


def char_poly(u, eta1: float):
    """Characteristic polynomial Pi(u) = 1 + eta1*u^2 + u^4 of the Spartan density."""
    u = np.asarray(u, dtype=float)
    out = 1.0 + eta1 * u**2 + u**4
    return float(out) if out.ndim == 0 else out


def ssrf_roots(eta1: float, tol_critical: float = DEFAULT_CRITICAL_TOL) -> RootPair:
    """Root decomposition of Pi for the Spartan closed forms.

    Within ``tol_critical`` of eta1 = 2 the regime is flagged CRITICAL so that
    callers avoid the cancellation-prone sqrt(eta1^2 - 4) denominators.
    """
    if not eta1 > -2:
        raise PermissibilityError(f"eta1 must exceed -2, got {eta1}")
    delta = complex(np.emath.sqrt(complex(eta1 * eta1 - 4.0)))
    z_plus = complex(np.emath.sqrt((eta1 - delta) / 2.0))
    z_minus = complex(np.emath.sqrt((eta1 + delta) / 2.0))
    if abs(eta1 - 2.0) <= tol_critical:
        regime = Regime.CRITICAL
    elif eta1 > 2.0:
        regime = Regime.RIGID
    else:
        regime = Regime.OSCILLATORY
    return RootPair(z_plus=z_plus, z_minus=z_minus, delta=delta, regime=regime)


def ssrf_spectral_density(k, p: SsrfParams):
    """Radial Spartan spectral density eta0*xi^d / Pi(k*xi), zero above the cutoff."""
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValueError("wavenumbers must be nonnegative")
    dens = p.eta0 * p.xi**p.d / char_poly(k * p.xi, p.eta1)
    out = np.where(k <= p.kc, dens, 0.0)
    return float(out) if out.ndim == 0 else out


def bl_spectral_density(k, p: BlParams):
    """Band-limited reciprocal density Pi(k*xi) / (eta0*xi^d) for k <= kc, else 0."""
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValueError("wavenumbers must be nonnegative")
    dens = char_poly(k * p.xi, p.eta1) / (p.eta0 * p.xi**p.d)
    out = np.where(k <= p.kc, dens, 0.0)
    return float(out) if out.ndim == 0 else out


def spectral_density(k, p: Params):
    """Dispatch to the family-specific radial spectral density."""
    if isinstance(p, SsrfParams):
        return ssrf_spectral_density(k, p)
    if isinstance(p, BlParams):
        return bl_spectral_density(k, p)
    raise TypeError(f"unknown parameter type {type(p).__name__}")


_FAMILY_NAMES = {SsrfParams: "ssrf", BlParams: "bessel-lommel"}


def params_to_dict(p: Params) -> dict:
    """Flat key-value document for serialization: family, eta0, eta1, xi, kc, d."""
    kc = "inf" if math.isinf(p.kc) else p.kc
    return {
        "family": _FAMILY_NAMES[type(p)],
        "eta0": p.eta0,
        "eta1": p.eta1,
        "xi": p.xi,
        "kc": kc,
        "d": p.d,
    }


def params_from_dict(doc: dict) -> Params:
    """Inverse of :func:`params_to_dict`; validates permissibility on construction."""
    family = str(doc["family"]).lower()
    kc_raw = doc["kc"]
    kc = math.inf if (isinstance(kc_raw, str) and kc_raw.lower() == "inf") else float(kc_raw)
    kwargs = dict(
        eta0=float(doc["eta0"]),
        eta1=float(doc["eta1"]),
        xi=float(doc["xi"]),
        kc=kc,
        d=int(doc["d"]),
    )
    if family == "ssrf":
        return SsrfParams(**kwargs)
    if family in ("bessel-lommel", "bl"):
        return BlParams(**kwargs)
    raise ValueError(f"unknown family {doc['family']!r}")
