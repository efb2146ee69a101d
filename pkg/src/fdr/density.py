"""
Gaussian kernel density estimation with Silverman or leave-one-out
cross-validated bandwidths.

Large samples are evaluated on a linearly binned grid and convolved with a
truncated kernel; the direct O(n m) sum is used when it is small enough.
"""
import math
from dataclasses import dataclass, field
import numpy as np
from src.estimation.types import Sample
from src.utils.errors import DegenerateSampleError, InvalidInputError

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_DIRECT_LIMIT = 4_000_000 # max n * m evaluated by direct summation
_CHUNK = 1024
_BINS = 4096
_KERNEL_SD = 6.0 # truncation of the binned kernel, in bandwidths

MIN_KDE_N = 10
CV_GRID_SIZE = 20
CV_GRID_SPAN = (0.2, 3.0) # multiples of the Silverman bandwidth


def silverman_bandwidth(values: np.ndarray) -> float:
    sd = float(np.std(values, ddof=1))
    q75, q25 = np.percentile(values, [75, 25])
    spread = min(sd, (q75 - q25) / 1.34)
    if spread <= 0:
        spread = sd
    return 0.9 * spread * values.size ** (-0.2)


def default_cv_grid(values: np.ndarray, size: int = CV_GRID_SIZE) -> np.ndarray:
    h = silverman_bandwidth(values)
    return h * np.geomspace(CV_GRID_SPAN[0], CV_GRID_SPAN[1], size)


def _direct_sum(data: np.ndarray, points: np.ndarray, h: float) -> np.ndarray:
    out = np.empty(points.size)
    for start in range(0, points.size, _CHUNK):
        block = points[start:start + _CHUNK]
        z = np.subtract.outer(block, data) / h
        out[start:start + _CHUNK] = np.exp(-0.5 * z * z).sum(axis=1)
    return out / (data.size * h * _SQRT_2PI)


def _binned_sum(data: np.ndarray, points: np.ndarray, h: float) -> np.ndarray:
    lo = min(data.min(), points.min()) - _KERNEL_SD * h
    hi = max(data.max(), points.max()) + _KERNEL_SD * h
    grid = np.linspace(lo, hi, _BINS)
    delta = grid[1] - grid[0]

    # linear binning
    pos = (data - lo) / delta
    left = np.clip(np.floor(pos).astype(int), 0, _BINS - 2)
    frac = pos - left
    weights = np.bincount(left, 1.0 - frac, _BINS) + np.bincount(left + 1, frac, _BINS)

    half = int(math.ceil(_KERNEL_SD * h / delta))
    offsets = np.arange(-half, half + 1) * delta / h
    kernel = np.exp(-0.5 * offsets * offsets)
    dens = np.convolve(weights, kernel, mode='same') / (data.size * h * _SQRT_2PI)
    return np.interp(points, grid, dens)


@dataclass(frozen=True)
class DensityEstimate:
    """
    Gaussian-kernel density estimate.

    Args:
        data (np.ndarray): Sample the estimate is built on
        bandwidth (float): Kernel standard deviation h > 0
        rule (str): How the bandwidth was chosen
    """
    data: np.ndarray
    bandwidth: float
    rule: str = 'fixed'
    cv_scores: dict = field(default_factory=dict, compare=False)

    def __call__(self, x) -> np.ndarray:
        points = np.atleast_1d(np.asarray(x, dtype=float))
        if self.data.size * points.size <= _DIRECT_LIMIT:
            return _direct_sum(self.data, points, self.bandwidth)
        return _binned_sum(self.data, points, self.bandwidth)

    def evaluator(self, x) -> np.ndarray:
        return self(x)


def _loo_log_likelihood(data: np.ndarray, h: float) -> float:
    n = data.size
    if n * n <= _DIRECT_LIMIT:
        full = _direct_sum(data, data, h) * n
    else:
        full = _binned_sum(data, data, h) * n
    self_term = 1.0 / (h * _SQRT_2PI)
    loo = (full - self_term) / (n - 1)
    if np.any(loo <= 0):
        return -np.inf
    return float(np.log(loo).sum())


def kde(
        sample: Sample,
        bandwidth_rule: str = 'silverman',
        grid: np.ndarray | None = None,
        bandwidth: float | None = None
    ) -> DensityEstimate:
    """
    Build a Gaussian KDE.

    Args:
        sample (Sample): At least 10 values
        bandwidth_rule (str): 'silverman', 'loo_cv' or 'fixed'
        grid (np.ndarray | None): Candidate bandwidths for 'loo_cv'.
            Defaults to 20 log-spaced multiples of the Silverman bandwidth
        bandwidth (float | None): Bandwidth for 'fixed'

    Raises:
        DegenerateSampleError: Sample has zero variance
    """
    data = sample.values
    if data.size < MIN_KDE_N:
        raise InvalidInputError(f'KDE needs at least {MIN_KDE_N} values, got {data.size}.')
    if not np.std(data) > 0:
        raise DegenerateSampleError('KDE input has zero variance.')

    if bandwidth_rule == 'silverman':
        return DensityEstimate(data, silverman_bandwidth(data), 'silverman')

    if bandwidth_rule == 'fixed':
        if bandwidth is None or not bandwidth > 0:
            raise InvalidInputError('A positive bandwidth is required for the fixed rule.')
        return DensityEstimate(data, float(bandwidth), 'fixed')

    if bandwidth_rule == 'loo_cv':
        candidates = default_cv_grid(data) if grid is None else np.asarray(grid, dtype=float)
        if candidates.size == 0 or np.any(candidates <= 0):
            raise InvalidInputError('Bandwidth grid must be non-empty and positive.')
        scores = {float(h): _loo_log_likelihood(data, float(h)) for h in candidates}
        best = max(scores, key=scores.get)
        return DensityEstimate(data, best, 'loo_cv', scores)

    raise InvalidInputError(f'Unknown bandwidth rule {bandwidth_rule!r}.')
