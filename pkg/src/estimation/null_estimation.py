import math
from dataclasses import dataclass
import numpy as np
from src.estimation import constants as const
from src.estimation.ecf_engine import (
    ecf_eval, ecf_deriv, model_cf, model_cf_deriv, threshold_freq
)
from src.estimation.types import CfHandle, FrequencyThreshold, NullParams, Sample
from src.utils.errors import (
    DegenerateModulusError, InvalidInputError, NonPositiveVarianceError
)


@dataclass(frozen=True)
class NullFit:
    params: NullParams
    sigma2: float
    threshold: FrequencyThreshold


def empirical_handle(sample: Sample) -> CfHandle:
    return CfHandle(
        value=lambda t: ecf_eval(sample, t),
        deriv=lambda t: ecf_deriv(sample, t),
        label='empirical'
    )


def null_component_handle(u0: float, sigma0: float, eps: float = 0.0) -> CfHandle:
    """Handle for (1 - eps) exp(i u0 t - sigma0^2 t^2 / 2)."""
    weight = 1.0 - eps

    def value(t):
        return weight * np.exp(complex(-0.5 * sigma0**2 * t * t, u0 * t))

    def deriv(t):
        return complex(-sigma0**2 * t, u0) * value(t)

    return CfHandle(value=value, deriv=deriv, label='null-component')


def model_handle(spec) -> CfHandle:
    return CfHandle(
        value=lambda t: model_cf(spec, t),
        deriv=lambda t: model_cf_deriv(spec, t),
        label='model'
    )


def _product(xi: CfHandle, t: float) -> tuple[complex, float]:
    z = xi.value(t)
    dz = xi.deriv(t)
    modulus = abs(z)
    if not modulus >= const.MODULUS_FLOOR:
        raise DegenerateModulusError(f'|xi({t})| = {modulus:.3e} is degenerate.')
    return z.conjugate() * dz, modulus * modulus


def sigma_functional(xi: CfHandle, t: float) -> float:
    """
    -Re(conj(xi) xi') / (t |xi|^2), i.e. -(d/ds |xi(s)|) / (s |xi(s)|) at s = t.
    Equals sigma0^2 for the null-component CF at every t > 0.
    """
    if not t > 0:
        raise InvalidInputError(f't must be positive, got {t}.')
    prod, mod2 = _product(xi, t)
    return -prod.real / (t * mod2)


def mean_functional(xi: CfHandle, t: float) -> float:
    """Im(conj(xi) xi') / |xi|^2. Equals u0 for the null-component CF."""
    if not t > 0:
        raise InvalidInputError(f't must be positive, got {t}.')
    prod, mod2 = _product(xi, t)
    return prod.imag / mod2


def fit_null(sample: Sample, gamma: float = const.DEFAULT_GAMMA) -> NullFit:
    """
    Estimate (u0, sigma0^2) at the data-driven threshold t_n(gamma).

    Raises:
        ThresholdNotFoundError: propagated from threshold_freq
        NonPositiveVarianceError: sigma0^2 estimate <= 0 (lower gamma or add data)
    """
    threshold = threshold_freq(sample, gamma)
    handle = empirical_handle(sample)
    sigma2 = sigma_functional(handle, threshold.t_hat)
    if not sigma2 > 0:
        raise NonPositiveVarianceError(
            f'sigma0^2 estimate {sigma2:.4e} at t = {threshold.t_hat:.4f} '
            f'is not positive (gamma = {gamma}).'
        )
    u0 = mean_functional(handle, threshold.t_hat)
    return NullFit(NullParams(u0, math.sqrt(sigma2)), sigma2, threshold)


def estimate_null(sample: Sample, gamma: float = const.DEFAULT_GAMMA) -> NullParams:
    return fit_null(sample, gamma).params
