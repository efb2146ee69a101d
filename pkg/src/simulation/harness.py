import math
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, replace
import numpy as np
import pandas as pd
from tqdm import tqdm
from src.estimation.baselines import efron_estimator, pvalues_from_null, storey_estimator
from src.estimation.null_estimation import fit_null
from src.estimation.proportion_estimation import estimate_eps_known_null, estimate_eps_plugin
from src.estimation.types import ProportionEstimate, Sample
from src.fdr.density import kde
from src.fdr.procedures import adaptive_bh, adaptz, evaluate_fdp
from src.simulation.generators import generate
from src.simulation.seeding import replication_rng
from src.simulation.settings import GridPoint, SettingConfig, resolve_grid_point, true_value
from src.utils.errors import DensitySupportError, EstimatorFailure, LevelOverflowError

CHUNK_SIZE = 25 # replications per submitted task

# Failures that drop one replication of one estimator instead of the run
_COUNTED = (EstimatorFailure, LevelOverflowError, DensitySupportError)


class _LazyFits:
    """Per-replication cache so estimators sharing a fit compute it once."""

    def __init__(self, sample: Sample, point: GridPoint):
        self.sample = sample
        self.point = point
        self._cache = {}

    def get(self, key, compute):
        if key not in self._cache:
            try:
                self._cache[key] = (compute(), None)
            except _COUNTED as exc:
                self._cache[key] = (None, exc)
        value, exc = self._cache[key]
        if exc is not None:
            raise exc
        return value

    def fourier_null(self):
        return self.get('fourier', lambda: fit_null(self.sample, self.point.gamma))

    def efron(self):
        return self.get('efron', lambda: efron_estimator(self.sample))

    def known_pvalues(self):
        return self.get('pvalues', lambda: pvalues_from_null(self.sample, self.point.spec.null))


def _point_estimate(name: str, fits: _LazyFits, cfg: SettingConfig) -> float:
    sample, point = fits.sample, fits.point
    if name == 'eps_plugin':
        null = fits.fourier_null().params
        return estimate_eps_plugin(sample, point.gamma, null=null).raw
    if name == 'u0_cj':
        return fits.fourier_null().params.u0
    if name == 'sigma0_sq_cj':
        return fits.fourier_null().sigma2
    if name == 'sigma0_cj':
        return fits.fourier_null().params.sigma0
    if name == 'eps_cj':
        return estimate_eps_known_null(sample, point.gamma, null=point.spec.null).raw
    if name == 'eps_storey':
        return storey_estimator(fits.known_pvalues(), cfg.lam).clamped
    if name == 'eps_efron':
        return fits.efron()[1].clamped
    if name == 'u0_efron':
        return fits.efron()[0].u0
    if name == 'sigma0_efron':
        return fits.efron()[0].sigma0
    raise ValueError(f'Unknown estimator {name!r}')


def _estimation_replication(cfg: SettingConfig, point: GridPoint, sample: Sample) -> list[float]:
    fits = _LazyFits(sample, point)
    out = []
    for name in cfg.estimators:
        try:
            estimate = _point_estimate(name, fits, cfg)
            out.append((estimate - true_value(name, point.spec)) ** 2)
        except _COUNTED:
            out.append(math.nan)
    return out


def _testing_inputs(name: str, fits: _LazyFits, cfg: SettingConfig):
    """(eps_hat, null) for one estimator arm of a testing setting."""
    sample, point = fits.sample, fits.point
    spec = point.spec
    if name == 'oracle':
        return ProportionEstimate.from_raw(spec.eps), spec.null
    if cfg.procedure == 'adaptive_bh':
        # null known: proportions only
        if name == 'cj':
            return estimate_eps_known_null(sample, point.gamma, null=spec.null), spec.null
        if name == 'storey':
            return storey_estimator(fits.known_pvalues(), cfg.lam), spec.null
        if name == 'efron':
            return fits.efron()[1], spec.null
    else:
        if name == 'cj':
            fit = fits.fourier_null()
            return estimate_eps_plugin(sample, point.gamma, null=fit.params), fit.params
        if name == 'efron':
            null, eps_hat = fits.efron()
            return eps_hat, null
    raise ValueError(f'Estimator {name!r} is not available for {cfg.procedure}')


def _testing_replication(cfg: SettingConfig, point: GridPoint, sample: Sample) -> list[float]:
    fits = _LazyFits(sample, point)
    out = []
    for name in cfg.estimators:
        try:
            eps_hat, null = _testing_inputs(name, fits, cfg)
            if cfg.procedure == 'adaptive_bh':
                rejections = adaptive_bh(fits.known_pvalues(), cfg.alpha, eps_hat)
            else:
                if name == 'oracle':
                    f_tilde = point.spec.density
                else:
                    f_tilde = fits.get('kde', lambda: kde(sample, cfg.bandwidth_rule))
                rejections = adaptz(sample, cfg.alpha, eps_hat, null, f_tilde)
            out.append(evaluate_fdp(rejections, sample.truth))
        except _COUNTED:
            out.append(math.nan)
    return out


def run_replication(cfg: SettingConfig, grid_index: int, rep_index: int) -> list[float]:
    """
    One replication at one grid point: squared errors (estimation settings) or
    FDPs (testing settings) per estimator, NaN marking a failure.
    """
    point = resolve_grid_point(cfg, cfg.grid[grid_index])
    rng = replication_rng(cfg.master_seed, grid_index, rep_index)
    sample = generate(point.spec, point.n, rng, point.block_length)
    if cfg.is_testing:
        return _testing_replication(cfg, point, sample)
    return _estimation_replication(cfg, point, sample)


def _run_chunk(cfg: SettingConfig, grid_index: int, reps: range):
    return grid_index, reps.start, [run_replication(cfg, grid_index, r) for r in reps]


@dataclass
class SimulationReport(ABC):
    """
    Per-replication outcomes indexed (grid point, estimator, replication).
    NaN entries are estimator failures.
    """
    setting_id: str
    sweep_param: str
    grid: tuple
    estimators: tuple[str, ...]
    replications: int
    values: np.ndarray

    def _column(self, g: int, e: int) -> np.ndarray:
        col = self.values[g, e]
        return col[~np.isnan(col)]

    def failures(self, g: int, e: int) -> int:
        return int(np.count_nonzero(np.isnan(self.values[g, e])))

    @staticmethod
    def _mean_se(x: np.ndarray) -> tuple[float, float]:
        if x.size == 0:
            return math.nan, math.nan
        se = float(np.std(x, ddof=1) / math.sqrt(x.size)) if x.size > 1 else math.nan
        return float(np.mean(x)), se

    @abstractmethod
    def to_frame(self) -> pd.DataFrame:
        """One row per (grid point, estimator)."""


@dataclass
class MSEReport(SimulationReport):
    """Squared errors per replication; MSE is their mean and SE its standard error."""

    def mse(self, g: int, e: int) -> float:
        return self._mean_se(self._column(g, e))[0]

    def se(self, g: int, e: int) -> float:
        return self._mean_se(self._column(g, e))[1]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for g, value in enumerate(self.grid):
            for e, name in enumerate(self.estimators):
                mse, se = self._mean_se(self._column(g, e))
                rows.append({
                    'grid_value': value, 'estimator': name, 'mse': mse, 'se': se,
                    'failures': self.failures(g, e),
                })
        return pd.DataFrame(rows, columns=['grid_value', 'estimator', 'mse', 'se', 'failures'])


@dataclass
class TestingReport(SimulationReport):
    """FDP per replication; FDR is their mean, MSE of FDP is taken around alpha."""

    __test__ = False # not a pytest class

    alpha: float = 0.10

    def fdr(self, g: int, e: int) -> float:
        return self._mean_se(self._column(g, e))[0]

    def mse_fdp(self, g: int, e: int) -> float:
        return self._mean_se((self._column(g, e) - self.alpha) ** 2)[0]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for g, value in enumerate(self.grid):
            for e, name in enumerate(self.estimators):
                fdp = self._column(g, e)
                fdr, fdr_se = self._mean_se(fdp)
                mse, mse_se = self._mean_se((fdp - self.alpha) ** 2)
                rows.append({
                    'grid_value': value, 'estimator': name, 'fdr': fdr, 'fdr_se': fdr_se,
                    'mse_fdp': mse, 'mse_fdp_se': mse_se, 'failures': self.failures(g, e),
                })
        columns = ['grid_value', 'estimator', 'fdr', 'fdr_se', 'mse_fdp', 'mse_fdp_se', 'failures']
        return pd.DataFrame(rows, columns=columns)


def _collect(cfg: SettingConfig, workers: int, progress: bool) -> np.ndarray:
    values = np.full((len(cfg.grid), len(cfg.estimators), cfg.replications), np.nan)
    tasks = [
        (g, range(start, min(start + CHUNK_SIZE, cfg.replications)))
        for g in range(len(cfg.grid))
        for start in range(0, cfg.replications, CHUNK_SIZE)
    ]
    bar = tqdm(total=len(cfg.grid) * cfg.replications,
               desc=f'Setting {cfg.setting_id}', disable=not progress)

    def store(result):
        g, start, outcomes = result
        for offset, outcome in enumerate(outcomes):
            values[g, :, start + offset] = outcome
        bar.update(len(outcomes))

    if workers <= 1:
        for g, reps in tasks:
            store(_run_chunk(cfg, g, reps))
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_run_chunk, cfg, g, reps) for g, reps in tasks]
            for future in as_completed(futures):
                store(future.result())
    bar.close()
    return values


def run_setting(cfg: SettingConfig, workers: int = 1, progress: bool = True) -> MSEReport:
    """
    Run every replication of an estimation setting.

    Args:
        cfg (SettingConfig): Setting to run (not a testing setting)
        workers (int): Worker processes; 1 runs inline
        progress (bool): Show a tqdm progress bar

    Returns:
        MSEReport: Squared errors per (grid point, estimator, replication)
    """
    if cfg.is_testing:
        raise ValueError(f'Setting {cfg.setting_id} is a testing setting; use run_testing_setting.')
    values = _collect(cfg, workers, progress)
    return MSEReport(cfg.setting_id, cfg.sweep_param, tuple(cfg.grid),
                     tuple(cfg.estimators), cfg.replications, values)


def run_testing_setting(
        cfg: SettingConfig,
        procedure: str | None = None,
        estimators: tuple[str, ...] | None = None,
        workers: int = 1,
        progress: bool = True
    ) -> TestingReport:
    """
    Run a testing setting and record the FDP of each estimator arm. All arms of
    one replication see the same data.

    Args:
        cfg (SettingConfig): A testing setting (5a, 5b or 5c)
        procedure (str | None): 'adaptive_bh' or 'adaptz'; defaults to cfg's
        estimators (tuple | None): Subset of cj, storey, efron, oracle
    """
    overrides = {}
    if procedure is not None:
        overrides['procedure'] = procedure
    if estimators is not None:
        overrides['estimators'] = tuple(estimators)
    if overrides:
        cfg = replace(cfg, **overrides)
    if not cfg.is_testing:
        raise ValueError(f'Setting {cfg.setting_id} has no testing procedure.')

    values = _collect(cfg, workers, progress)
    return TestingReport(cfg.setting_id, cfg.sweep_param, tuple(cfg.grid),
                         tuple(cfg.estimators), cfg.replications, values, alpha=cfg.alpha)
