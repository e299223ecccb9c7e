"""Exception types shared across the toolkit."""


class PermissibilityError(ValueError):
    """Parameter set violates the positivity/integrability conditions of a model."""


class UnsupportedModelError(ValueError):
    """Requested operation is not available for this (family, dimension, cutoff) combination."""


class SpectralDivergenceError(ArithmeticError):
    """A spectral integral fails to converge (e.g. smoothness moments of rough fields)."""


class QuadratureError(RuntimeError):
    """Numerical quadrature did not reach the requested tolerance."""
