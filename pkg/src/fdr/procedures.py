from dataclasses import dataclass
from typing import Callable
import numpy as np
from scipy.stats import norm
from src.estimation import constants as const
from src.estimation.types import NullParams, ProportionEstimate, PValueVector, Sample
from src.utils.errors import DensitySupportError, InvalidInputError, LevelOverflowError

DensityFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class RejectionSet:
    rejected: np.ndarray

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.rejected))


def _check_alpha(alpha: float):
    if not (0.0 < alpha < 1.0):
        raise InvalidInputError(f'alpha must lie in (0, 1), got {alpha}.')


def _step_up(pvals: np.ndarray, level: float) -> RejectionSet:
    n = pvals.size
    ordered = np.sort(pvals, kind='stable')
    passing = np.nonzero(ordered <= level * np.arange(1, n + 1) / n)[0]
    if passing.size == 0:
        return RejectionSet(np.zeros(n, dtype=bool))
    cutoff = ordered[passing[-1]]
    return RejectionSet(pvals <= cutoff)


def bh_stepup(pvals: PValueVector, alpha: float) -> RejectionSet:
    """
    Benjamini-Hochberg step-up. Rejects every hypothesis with p <= p_(k*),
    k* the largest k with p_(k) <= k alpha / n.
    """
    _check_alpha(alpha)
    return _step_up(pvals.values, alpha)


def adaptive_bh(pvals: PValueVector, alpha: float, eps_hat: ProportionEstimate) -> RejectionSet:
    """
    Step-up at the inflated level alpha / (1 - eps_hat).

    Raises:
        LevelOverflowError: 1 - eps_hat below 1e-6
    """
    _check_alpha(alpha)
    remaining = 1.0 - eps_hat.clamped
    if remaining < const.LEVEL_CAP:
        raise LevelOverflowError(
            f'Estimated proportion {eps_hat.clamped:.6f} leaves no room for the null.'
        )
    return _step_up(pvals.values, alpha / remaining)


def null_density(null: NullParams) -> DensityFn:
    return lambda x: norm.pdf(x, loc=null.u0, scale=null.sigma0)


def lfdr_values(
        sample: Sample,
        eps_hat: ProportionEstimate,
        null: NullParams,
        f_tilde: DensityFn
    ) -> np.ndarray:
    """
    Local false discovery rates (1 - eps) f_null(x) / f(x), capped at 1.

    Args:
        sample (Sample): Statistics
        eps_hat (ProportionEstimate): Proportion estimate (clamped value used)
        null (NullParams): Null parameters
        f_tilde (callable): Marginal density, e.g. a DensityEstimate

    Raises:
        DensitySupportError: f_tilde is not strictly positive at a sample point
    """
    x = sample.values
    f = np.asarray(f_tilde(x), dtype=float)
    bad = np.nonzero(~(f > 0))[0]
    if bad.size:
        raise DensitySupportError(
            f'Marginal density vanishes at x = {x[bad[0]]:.6g} ({bad.size} points).'
        )
    lfdr = (1.0 - eps_hat.clamped) * norm.pdf(x, loc=null.u0, scale=null.sigma0) / f
    return np.minimum(lfdr, 1.0)


def adaptz_from_lfdr(lfdr: np.ndarray, alpha: float) -> RejectionSet:
    _check_alpha(alpha)
    order = np.argsort(lfdr, kind='stable')
    ordered = lfdr[order]
    running = np.cumsum(ordered) / np.arange(1, ordered.size + 1)
    passing = np.nonzero(running <= alpha)[0]
    if passing.size == 0:
        return RejectionSet(np.zeros(lfdr.size, dtype=bool))
    # ties at the cutoff are rejected together
    return RejectionSet(lfdr <= ordered[passing[-1]])


def adaptz(
        sample: Sample,
        alpha: float,
        eps_hat: ProportionEstimate,
        null: NullParams,
        f_tilde: DensityFn
    ) -> RejectionSet:
    """
    Reject the k* smallest Lfdr values, k* the largest k whose running mean
    of ordered Lfdr stays at or below alpha.
    """
    return adaptz_from_lfdr(lfdr_values(sample, eps_hat, null, f_tilde), alpha)


def evaluate_fdp(rej: RejectionSet, truth: np.ndarray | None) -> float:
    """False discovery proportion; 0 for an empty rejection set."""
    if truth is None:
        raise InvalidInputError('FDP needs ground-truth labels.')
    truth = np.asarray(truth, dtype=bool)
    if truth.size != rej.rejected.size:
        raise InvalidInputError('truth and rejections differ in length.')
    false = int(np.count_nonzero(rej.rejected & ~truth))
    return false / max(1, rej.count)
