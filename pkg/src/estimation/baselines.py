"""
Competitor estimators: two-sided p-values, Storey's proportion estimator and
a central-matching null/proportion estimator.
"""
import math
import numpy as np
from scipy.stats import norm
from src.estimation import constants as const
from src.estimation.types import NullParams, ProportionEstimate, PValueVector, Sample
from src.utils.errors import DivergenceError, InvalidInputError


def pvalues_from_null(sample: Sample, null: NullParams) -> PValueVector:
    z = np.abs(sample.values - null.u0) / null.sigma0
    # sf keeps full relative precision in the far tail
    return PValueVector(np.minimum(1.0, 2.0 * norm.sf(z)))


def storey_estimator(pvals: PValueVector, lam: float = const.STOREY_LAMBDA) -> ProportionEstimate:
    """
    Storey's estimator: pi0 = #{p > lambda} / ((1 - lambda) n), eps = 1 - pi0.

    Args:
        pvals (PValueVector): p-values
        lam (float): Tuning parameter in (0, 1). Defaults to 0.5
    """
    if not (0.0 < lam < 1.0):
        raise InvalidInputError(f'lambda must lie in (0, 1), got {lam}.')
    above = int(np.count_nonzero(pvals.values > lam))
    pi0 = above / ((1.0 - lam) * pvals.n)
    return ProportionEstimate.from_raw(1.0 - pi0)


def _central_window(counts: np.ndarray) -> tuple[int, int]:
    """Contiguous run of bins around the mode with count >= half the modal count."""
    mode = int(np.argmax(counts))
    half = 0.5 * counts[mode]
    lo = mode
    while lo > 0 and counts[lo - 1] >= half:
        lo -= 1
    hi = mode
    while hi < counts.size - 1 and counts[hi + 1] >= half:
        hi += 1
    return lo, hi


def efron_estimator(sample: Sample) -> tuple[NullParams, ProportionEstimate]:
    """
    Central matching. Histogram with Scott's-rule bins anchored at the median,
    fit a quadratic to the log-counts of the central window by Poisson-weighted
    least squares and read the null from its vertex and curvature. The
    proportion comes from the fitted peak height against the total mass.

    Args:
        sample (Sample): Statistics, n >= 500

    Returns:
        tuple[NullParams, ProportionEstimate]: (u0, sigma0) and eps

    Raises:
        DivergenceError: degenerate histogram, nonnegative curvature, or a
            vertex outside the central window
    """
    x = sample.values
    n = sample.n
    if n < const.EFRON_MIN_N:
        raise InvalidInputError(
            f'Central matching needs at least {const.EFRON_MIN_N} values, got {n}.'
        )

    sd = float(np.std(x, ddof=1))
    width = const.SCOTT_FACTOR * sd * n ** (-1.0 / 3.0)
    if not width > 0:
        raise DivergenceError('Zero-width histogram bins: sample has no spread.')

    center = float(np.median(x))
    k_lo = math.floor((x.min() - center) / width + 0.5)
    k_hi = math.ceil((x.max() - center) / width + 0.5)
    edges = center + width * (np.arange(k_lo, k_hi + 1) - 0.5)
    counts, _ = np.histogram(x, bins=edges)
    mids = 0.5 * (edges[:-1] + edges[1:]) - center

    lo, hi = _central_window(counts)
    if hi - lo + 1 < 3:
        raise DivergenceError(f'Central window has {hi - lo + 1} bins; need at least 3.')

    xs = mids[lo:hi + 1]
    ys = counts[lo:hi + 1].astype(float)
    # polyfit weights multiply residuals; Poisson var(log y) ~ 1/y
    b2, b1, b0 = np.polyfit(xs, np.log(ys), 2, w=np.sqrt(ys))
    if not b2 < 0:
        raise DivergenceError(f'Log-count curvature {b2:.4e} is not negative.')

    vertex = float(-b1 / (2.0 * b2))
    if not (xs[0] <= vertex <= xs[-1]):
        raise DivergenceError('Fitted vertex lies outside the central window.')

    sigma2 = float(-1.0 / (2.0 * b2))
    sigma0 = math.sqrt(sigma2)
    log_peak = b0 + b1 * vertex + b2 * vertex * vertex
    pi0 = math.exp(log_peak) * sigma0 * math.sqrt(2.0 * math.pi) / (n * width)

    return NullParams(center + vertex, sigma0), ProportionEstimate.from_raw(1.0 - pi0)
