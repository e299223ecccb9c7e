"""Special functions used by the covariance closed forms.

Gamma, J-Bessel and K-Bessel evaluation is delegated to scipy.special
(AMOS/cephes); this module adds the domain checking the covariance code
relies on, K0 for complex argument in the right half plane, and the
terminating Lommel functions that scipy does not provide.

All functions are pure and thread-safe.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.special as _sp

__all__ = [
    "gamma",
    "bessel_j",
    "bessel_k_real",
    "bessel_k0_complex",
    "lommel_s",
    "lommel_s_series",
]


def gamma(x: float) -> float:
    """Gamma function for real ``x`` away from the poles.

    Raises
    ------
    ValueError
        If ``x`` is zero or a negative integer (pole of the Gamma function).
    """
    if x <= 0 and x == math.floor(x):
        raise ValueError(f"gamma pole at non-positive integer x={x}")
    return float(_sp.gamma(x))


def bessel_j(nu: float, x):
    """Bessel function of the first kind J_nu(x) for order nu >= -1/2, x >= 0.

    Covers the radial-transform orders d/2 - 1 for d >= 1 plus fractional
    orders in [0, 1].  (Covariance assemblies that need J_{nu-1} with nu = 0
    call scipy directly rather than going through this checked surface.)
    """
    if nu < -0.5:
        raise ValueError(f"bessel_j supports orders nu >= -1/2, got {nu}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("bessel_j requires x >= 0")
    out = _sp.jv(nu, x)
    return float(out) if out.ndim == 0 else out


def bessel_k_real(nu: float, x):
    """Modified Bessel function of the second kind K_nu(x), x > 0.

    K is symmetric in the order: K_{-nu}(x) = K_nu(x).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("bessel_k_real requires x > 0")
    out = _sp.kv(nu, x)
    return float(out) if out.ndim == 0 else out


def bessel_k0_complex(z: complex) -> complex:
    """K_0(z) for complex argument with Re(z) > 0.

    Satisfies the reflection identity K_0(conj(z)) = conj(K_0(z)), which the
    oscillatory covariance branch depends on.
    """
    z = complex(z)
    if z.real <= 0:
        raise ValueError(f"bessel_k0_complex requires Re(z) > 0, got {z}")
    return complex(_sp.kv(0, z))


def _as_positive(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise ValueError("Lommel functions are evaluated for z > 0 only")
    return z


def lommel_s(l: int, nu: float, z, kind: str):
    """Terminating Lommel functions used in the band-limited covariance.

    ``kind='lower'`` selects S_{nu+2l, nu-1}(z) and ``kind='upper'`` selects
    S_{nu+2l+1, nu}(z), for l in {0, 1, 2}.  These are the six finite
    polynomial-in-1/z^2 cases; everything else is out of scope.
    """
    z = _as_positive(z)
    if l not in (0, 1, 2):
        raise ValueError(f"l must be 0, 1 or 2, got {l}")
    if kind == "lower":
        if l == 0:
            out = z ** (nu - 1)
        elif l == 1:
            out = z ** (nu + 1) * (1 - 4 * nu / z**2)
        else:
            out = z ** (nu + 3) * (1 - 8 * (1 + nu) / z**2 + 32 * nu * (1 + nu) / z**4)
    elif kind == "upper":
        if l == 0:
            out = z**nu
        elif l == 1:
            out = z ** (nu + 2) * (1 - 4 * (1 + nu) / z**2)
        else:
            out = z ** (nu + 4) * (1 - 8 * (nu + 2) / z**2 + 32 * (nu + 1) * (nu + 2) / z**4)
    else:
        raise ValueError(f"kind must be 'lower' or 'upper', got {kind!r}")
    return float(out) if np.ndim(out) == 0 else out


def lommel_s_series(mu: float, nu: float, z):
    """Generic terminating Lommel series S_{mu,nu}(z) for mu - nu an odd positive integer.

    Descending series in powers of 1/z^2; terminates after l+1 terms when
    mu - nu = 2l + 1.  Serves as an independent cross-check of the closed
    forms in :func:`lommel_s`.
    """
    z = _as_positive(z)
    diff = mu - nu
    l = (diff - 1) / 2
    if diff <= 0 or abs(l - round(l)) > 1e-12:
        raise ValueError("terminating series requires mu - nu to be an odd positive integer")
    l = int(round(l))
    total = np.zeros_like(z)
    term = np.ones_like(z)
    total += term
    for k in range(1, l + 1):
        term = term * (-((mu - (2 * k - 1)) ** 2 - nu**2)) / z**2
        total += term
    out = z ** (mu - 1) * total
    return float(out) if np.ndim(out) == 0 else out
