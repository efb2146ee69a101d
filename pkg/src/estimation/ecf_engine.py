"""
Empirical and model characteristic functions, and the first-crossing
frequency threshold used by every Fourier-domain estimator.
"""
import math
from typing import TYPE_CHECKING, Callable
import numpy as np
from scipy.optimize import bisect
from src.estimation import constants as const
from src.estimation.types import Sample, FrequencyThreshold
from src.utils.errors import (
    InvalidInputError, ThresholdNotFoundError, UnsupportedModelError
)

if TYPE_CHECKING:
    from src.simulation.generators import MixtureSpec


def check_gamma(gamma: float):
    if not (0.0 < gamma < 0.5):
        raise InvalidInputError(f'gamma must lie in (0, 1/2), got {gamma}.')


def _check_t(t: float):
    if not np.isfinite(t):
        raise InvalidInputError(f'Frequency must be finite, got {t}.')


def ecf_eval(sample: Sample, t: float) -> complex:
    """
    Empirical characteristic function (1/n) sum_j exp(i t X_j).

    Args:
        sample (Sample): Test statistics
        t (float): Frequency

    Returns:
        complex: phi_n(t)
    """
    _check_t(t)
    tx = t * sample.values
    n = sample.n
    return complex(np.cos(tx).sum() / n, np.sin(tx).sum() / n)


def ecf_deriv(sample: Sample, t: float) -> complex:
    """
    Exact derivative (i/n) sum_j X_j exp(i t X_j) of the empirical
    characteristic function.
    """
    _check_t(t)
    x = sample.values
    tx = t * x
    n = sample.n
    return complex(-(x * np.sin(tx)).sum() / n, (x * np.cos(tx)).sum() / n)


def model_cf(spec: 'MixtureSpec', t: float) -> complex:
    """Closed-form characteristic function of a simulation model."""
    _check_t(t)
    if not getattr(spec, 'analytic_cf_available', False):
        raise UnsupportedModelError(
            f'No closed-form characteristic function for {spec!r}.'
        )
    return complex(spec.cf(t))


def model_cf_deriv(spec: 'MixtureSpec', t: float) -> complex:
    _check_t(t)
    if not getattr(spec, 'analytic_cf_available', False):
        raise UnsupportedModelError(
            f'No closed-form characteristic function for {spec!r}.'
        )
    return complex(spec.cf_deriv(t))


def _ecf_modulus_block(values: np.ndarray, ts: np.ndarray) -> np.ndarray:
    tx = np.multiply.outer(ts, values)
    c = np.cos(tx).sum(axis=1)
    s = np.sin(tx).sum(axis=1)
    return np.hypot(c, s) / values.size


def _first_crossing(
        modulus_block: Callable[[np.ndarray], np.ndarray],
        modulus: Callable[[float], float],
        level: float,
        t_max: float,
        block: int
    ) -> float:
    """
    Scan modulus on the fixed grid k * GRID_STEP, bracket the first grid
    point at or below ``level`` and bisect inside that bracket.
    """
    n_grid = int(math.ceil(t_max / const.GRID_STEP))
    prev = 0.0 # |phi(0)| = 1 > level
    for start in range(1, n_grid + 1, block):
        ks = np.arange(start, min(start + block, n_grid + 1))
        ts = ks * const.GRID_STEP
        below = np.nonzero(modulus_block(ts) <= level)[0]
        if below.size:
            hi = float(ts[below[0]])
            lo = float(ts[below[0] - 1]) if below[0] > 0 else prev
            return bisect(
                lambda s: modulus(s) - level, lo, hi,
                xtol=const.BISECT_TOL, maxiter=200
            )
        prev = float(ts[-1])

    raise ThresholdNotFoundError(
        f'|phi| never reached {level:.3e} below t_max = {t_max:.4f}.'
    )


def threshold_freq(sample: Sample, gamma: float) -> FrequencyThreshold:
    """
    Data-driven threshold t_n(gamma): first t > 0 with |phi_n(t)| <= n^(-gamma).

    Args:
        sample (Sample): Test statistics, n >= 2
        gamma (float): Exponent in (0, 1/2)

    Returns:
        FrequencyThreshold: t_hat with the gamma used and |phi_n(t_hat)|

    Raises:
        ThresholdNotFoundError: No crossing below 3 * sqrt(2 log n)
    """
    check_gamma(gamma)
    n = sample.n
    if n < 2:
        raise InvalidInputError('threshold_freq needs at least two values.')

    level = n ** (-gamma)
    t_max = const.CEILING_FACTOR * math.sqrt(2.0 * math.log(n))
    block = max(1, min(const.SCAN_BLOCK, 2_000_000 // n))
    values = sample.values

    t_hat = _first_crossing(
        lambda ts: _ecf_modulus_block(values, ts),
        lambda s: abs(ecf_eval(sample, s)),
        level, t_max, block
    )
    return FrequencyThreshold(t_hat, gamma, abs(ecf_eval(sample, t_hat)))


def deterministic_threshold_freq(spec: 'MixtureSpec', n: int, gamma: float) -> float:
    """Population threshold t_n(gamma) computed on the analytic CF."""
    check_gamma(gamma)
    if n < 2:
        raise InvalidInputError('n must be at least 2.')
    if not getattr(spec, 'analytic_cf_available', False):
        raise UnsupportedModelError(
            f'No closed-form characteristic function for {spec!r}.'
        )

    level = n ** (-gamma)
    t_max = const.CEILING_FACTOR * math.sqrt(2.0 * math.log(n))
    return _first_crossing(
        lambda ts: np.abs(spec.cf(ts)),
        lambda s: abs(complex(spec.cf(s))),
        level, t_max, const.SCAN_BLOCK
    )
