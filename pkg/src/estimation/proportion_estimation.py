import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable
import numpy as np
from scipy.integrate import quad
from src.estimation import constants as const
from src.estimation.ecf_engine import check_gamma
from src.estimation.null_estimation import estimate_null
from src.estimation.types import NullParams, ProportionEstimate, Sample
from src.utils.errors import InvalidInputError, NumericalIntegrationError

WEIGHT_KINDS = ('uniform', 'triangle', 'smooth')


@dataclass(frozen=True)
class WeightDensity:
    kind: str
    evaluator: Callable[[float], float]

    def __call__(self, xi: float) -> float:
        return self.evaluator(xi)


def _smooth_bump(xi: float) -> float:
    s = 1.0 - xi * xi
    return math.exp(-1.0 / s) if s > 0 else 0.0


@lru_cache(maxsize=None)
def _smooth_normalizer() -> float:
    half, _ = quad(_smooth_bump, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=200)
    return 2.0 * half


def weight_density(kind: str) -> WeightDensity:
    """
    Symmetric weight on (-1, 1) integrating to one.

    Args:
        kind (str): 'uniform', 'triangle' or 'smooth' (proportional to
            exp(-1 / (1 - xi^2)))
    """
    if kind == 'uniform':
        return WeightDensity(kind, lambda xi: 0.5 if abs(xi) < 1 else 0.0)
    if kind == 'triangle':
        return WeightDensity(kind, lambda xi: max(0.0, 1.0 - abs(xi)))
    if kind == 'smooth':
        c = _smooth_normalizer()
        return WeightDensity(kind, lambda xi: _smooth_bump(xi) / c)
    raise InvalidInputError(f'Unknown weight kind {kind!r}; expected one of {WEIGHT_KINDS}.')


def point_mass_frequency(n: int, gamma: float) -> float:
    return math.sqrt(2.0 * gamma * math.log(n))


def _cosine_estimate(values: np.ndarray, gamma: float) -> ProportionEstimate:
    n = values.size
    t = point_mass_frequency(n, gamma)
    raw = 1.0 - n ** (gamma - 1.0) * np.cos(t * values).sum()
    return ProportionEstimate.from_raw(raw, gamma, t)


def estimate_eps_known_null(
        sample: Sample,
        gamma: float = const.DEFAULT_GAMMA,
        null: NullParams | None = None
    ) -> ProportionEstimate:
    """
    Point-mass estimator 1 - n^(gamma-1) sum_j cos(sqrt(2 gamma log n) X_j).

    Args:
        sample (Sample): Statistics, standardized unless ``null`` is given
        gamma (float): Exponent in (0, 1/2)
        null (NullParams | None): Known null used to standardize first.
            Defaults to the standard null (0, 1), i.e. no transformation.
    """
    check_gamma(gamma)
    values = sample.values
    if null is not None:
        values = (values - null.u0) / null.sigma0
    return _cosine_estimate(values, gamma)


def estimate_eps_plugin(
        sample: Sample,
        gamma: float = const.DEFAULT_GAMMA,
        null: NullParams | None = None
    ) -> ProportionEstimate:
    """
    Plug-in estimator: standardize by the Fourier null estimate, then apply the
    point-mass estimator. Passing ``null`` skips the null estimation step.
    """
    check_gamma(gamma)
    if sample.n < 2:
        raise InvalidInputError('Plug-in estimator needs at least two values.')
    if null is None:
        null = estimate_null(sample, gamma)
    return estimate_eps_known_null(sample, gamma, null)


def phase_function_estimator(
        sample: Sample,
        gamma: float,
        omega: WeightDensity
    ) -> ProportionEstimate:
    """
    Phase-function estimator 1 - Re psi_n(t; omega) with
    psi_n(t; omega) = int omega(xi) exp(t^2 xi^2 / 2) phi_n(t xi) dxi,
    evaluated at t = sqrt(2 gamma log n).

    The imaginary part of phi_n is odd in xi and integrates to zero against
    the symmetric weight, so only the cosine part is integrated, over [0, 1].

    Raises:
        NumericalIntegrationError: quadrature did not reach relative tolerance 1e-9
    """
    check_gamma(gamma)
    values = sample.values
    t = point_mass_frequency(sample.n, gamma)

    def integrand(xi):
        return omega(xi) * math.exp(0.5 * t * t * xi * xi) * np.cos(t * xi * values).mean()

    result = quad(
        integrand, 0.0, 1.0, epsabs=0.0, epsrel=const.QUAD_EPSREL,
        limit=const.QUAD_LIMIT, full_output=1
    )
    if len(result) > 3:
        raise NumericalIntegrationError(
            f'Phase-function quadrature failed ({omega.kind}): {result[3]}'
        )
    psi = 2.0 * result[0]
    return ProportionEstimate.from_raw(1.0 - psi, gamma, t)
