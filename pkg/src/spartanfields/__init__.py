"""Spartan and Bessel-Lommel covariance models, length-scale spectra, and
FFT simulation of Gaussian random fields, with every closed form
cross-checkable against an independent spectral-integral oracle."""

from .covariance import (
    autocorrelation,
    bl_autocorrelation,
    bl_cov,
    bl_variance,
    covariance,
    ssrf_cov_2d,
    ssrf_variance_2d,
    variance,
)
from .errors import (
    PermissibilityError,
    QuadratureError,
    SpectralDivergenceError,
    UnsupportedModelError,
)
from .models import (
    BlParams,
    Regime,
    RootPair,
    SsrfParams,
    bl_spectral_density,
    char_poly,
    params_from_dict,
    params_to_dict,
    spectral_density,
    ssrf_roots,
    ssrf_spectral_density,
)
from .oracle import QuadratureConfig, a_mu_nu, hankel_inverse, radial_volume_integral
from .scales import (
    bl_corr_spectrum,
    bl_integral_range,
    corr_spectrum_numeric,
    correlation_spectrum,
    integral_range_numeric,
    spectral_moment,
    ssrf_corr_spectrum,
)
from .simulate import (
    EmpiricalStats,
    FieldRealization,
    estimate_stats,
    non_ergodicity_probe,
    simulate_ensemble,
    simulate_field,
)

__version__ = "0.1.0"
