"""
Registry of the standard simulation settings and their configuration type.

Estimation settings report squared errors of point estimates; testing
settings (5a, 5b, 5c) report false discovery proportions.
"""
from dataclasses import dataclass, field, asdict, replace
import numpy as np
from src.estimation.constants import DEFAULT_GAMMA, STOREY_LAMBDA
from src.estimation.types import NullParams
from src.simulation.generators import DOUBLE_EXP, GAUSSIAN, MixtureSpec
from src.utils.errors import ConfigValidationError

DEFAULT_N = 10_000
DEFAULT_REPLICATIONS = 1000
DEFAULT_SEED = 2009
DEFAULT_ALPHA = 0.10

# Point estimators, named <parameter>_<method>
ESTIMATORS = (
    'eps_plugin', 'u0_cj', 'sigma0_sq_cj', 'sigma0_cj', 'eps_cj',
    'eps_storey', 'eps_efron', 'u0_efron', 'sigma0_efron',
)
TESTING_ESTIMATORS = ('cj', 'storey', 'efron', 'oracle')
PROCEDURES = ('adaptive_bh', 'adaptz')
BANDWIDTH_RULES = ('silverman', 'loo_cv')


def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    count = int(round((stop - start) / step)) + 1
    return tuple(float(np.round(start + k * step, 10)) for k in range(count))


@dataclass(frozen=True)
class SettingDefinition:
    setting_id: str
    sweep_param: str
    grid: tuple
    base: MixtureSpec
    estimators: tuple[str, ...]
    procedure: str | None = None
    bandwidth_rule: str = 'silverman'
    description: str = ''


_GAUSS = MixtureSpec(eps=0.2, nonnull_kind=GAUSSIAN, scale=1.2)
_LAPLACE = MixtureSpec(eps=0.2, nonnull_kind=DOUBLE_EXP, scale=1.2)
_EPS_GRID = _grid(0.03, 0.30, 0.03)
_SCALE_GRID = _grid(1.2, 2.1, 0.1)
_FOURIER = ('eps_plugin', 'u0_cj', 'sigma0_sq_cj')

SETTINGS: dict[str, SettingDefinition] = {
    '1': SettingDefinition(
        '1', 'gamma', _grid(0.08, 0.38, 0.03), _GAUSS, _FOURIER,
        description='Gaussian mixture, sweep of the tuning exponent'
    ),
    '2': SettingDefinition(
        '2', 'n', (2000, 5000, 10000, 15000, 20000, 50000, 100000, 500000), _GAUSS, _FOURIER,
        description='Gaussian mixture, sweep of the number of tests'
    ),
    '3a': SettingDefinition(
        '3a', 'eps', _EPS_GRID, _GAUSS, ('eps_cj', 'eps_efron', 'eps_storey'),
        description='Known null, sweep of the proportion'
    ),
    '3b': SettingDefinition(
        '3b', 'sigma', _SCALE_GRID, _GAUSS, ('eps_plugin', 'eps_efron', 'eps_storey'),
        description='Sweep of the nonnull scale'
    ),
    '4a': SettingDefinition(
        '4a', 'eps', _EPS_GRID, _LAPLACE, ('eps_cj', 'eps_storey', 'eps_efron'),
        description='Double-exponential nonnulls, known null, sweep of the proportion'
    ),
    '4b': SettingDefinition(
        '4b', 'tau', _SCALE_GRID, _LAPLACE, _FOURIER,
        description='Double-exponential nonnulls, unknown null, sweep of tau'
    ),
    '4c': SettingDefinition(
        '4c', 'block_length', (0, 10, 20, 30, 40, 50), _GAUSS,
        ('eps_plugin', 'u0_cj', 'sigma0_cj', 'eps_efron', 'u0_efron', 'sigma0_efron'),
        description='Block-dependent statistics, unknown null'
    ),
    '5a': SettingDefinition(
        '5a', 'eps', _EPS_GRID, _GAUSS, ('cj', 'storey', 'efron'), procedure='adaptive_bh',
        description='Adaptive BH, sweep of the proportion'
    ),
    '5b': SettingDefinition(
        '5b', 'sigma', _SCALE_GRID, _GAUSS, ('cj', 'storey', 'efron'), procedure='adaptive_bh',
        description='Adaptive BH, sweep of the nonnull scale'
    ),
    '5c': SettingDefinition(
        '5c', 'sigma0', _grid(0.5, 1.0, 0.1), _GAUSS.with_updates(scale=1.3), ('cj', 'efron'),
        procedure='adaptz', bandwidth_rule='loo_cv',
        description='AdaptZ with estimated null, sweep of the null scale'
    ),
}


@dataclass(frozen=True)
class SettingConfig:
    """
    One simulation run.

    Args:
        setting_id (str): Key into SETTINGS
        n (int): Number of statistics per replication (Setting 2 sweeps it)
        replications (int): Replications per grid point, >= 1
        gamma (float): Tuning exponent of the Fourier estimators
        sweep_param (str): Name of the swept parameter
        grid (tuple): Values of the swept parameter
        master_seed (int): Root of the per-replication seeds
    """
    setting_id: str
    n: int = DEFAULT_N
    replications: int = DEFAULT_REPLICATIONS
    gamma: float = DEFAULT_GAMMA
    sweep_param: str = ''
    grid: tuple = ()
    master_seed: int = DEFAULT_SEED
    estimators: tuple[str, ...] = ()
    procedure: str | None = None
    alpha: float = DEFAULT_ALPHA
    lam: float = STOREY_LAMBDA
    bandwidth_rule: str = 'silverman'

    def __post_init__(self):
        if self.setting_id not in SETTINGS:
            raise ConfigValidationError(
                f'Unknown setting {self.setting_id!r}; expected one of {sorted(SETTINGS)}.'
            )
        if not isinstance(self.replications, int) or self.replications < 1:
            raise ConfigValidationError(
                f'replications must be a positive integer, got {self.replications!r}.'
            )
        if not isinstance(self.n, int) or self.n < 2:
            raise ConfigValidationError(f'n must be an integer >= 2, got {self.n!r}.')
        if not (0.0 < self.gamma < 0.5):
            raise ConfigValidationError(f'gamma must lie in (0, 1/2), got {self.gamma}.')
        if not (0.0 < self.alpha < 1.0):
            raise ConfigValidationError(f'alpha must lie in (0, 1), got {self.alpha}.')
        if not (0.0 < self.lam < 1.0):
            raise ConfigValidationError(f'lam must lie in (0, 1), got {self.lam}.')
        if self.master_seed < 0:
            raise ConfigValidationError('master_seed must be non-negative.')
        if len(self.grid) == 0:
            raise ConfigValidationError('The sweep grid is empty.')
        if self.bandwidth_rule not in BANDWIDTH_RULES:
            raise ConfigValidationError(f'Unknown bandwidth rule {self.bandwidth_rule!r}.')

        allowed = TESTING_ESTIMATORS if self.procedure else ESTIMATORS
        unknown = [e for e in self.estimators if e not in allowed]
        if unknown or not self.estimators:
            raise ConfigValidationError(
                f'Estimators {unknown or "[]"} are not valid here; choose from {allowed}.'
            )
        if self.procedure is not None and self.procedure not in PROCEDURES:
            raise ConfigValidationError(f'Unknown procedure {self.procedure!r}.')
        if self.procedure == 'adaptz' and 'storey' in self.estimators:
            raise ConfigValidationError('AdaptZ needs a null estimate; storey provides none.')

    @property
    def definition(self) -> SettingDefinition:
        return SETTINGS[self.setting_id]

    @property
    def is_testing(self) -> bool:
        return self.procedure is not None

    def to_dict(self) -> dict:
        out = asdict(self)
        out['grid'] = list(self.grid)
        out['estimators'] = list(self.estimators)
        return out


def build_setting(setting_id: str, **overrides) -> SettingConfig:
    """
    SettingConfig populated from the registry, with keyword overrides.
    None-valued overrides are ignored.
    """
    if setting_id not in SETTINGS:
        raise ConfigValidationError(
            f'Unknown setting {setting_id!r}; expected one of {sorted(SETTINGS)}.'
        )
    definition = SETTINGS[setting_id]
    values = dict(
        setting_id=setting_id,
        sweep_param=definition.sweep_param,
        grid=definition.grid,
        estimators=definition.estimators,
        procedure=definition.procedure,
        bandwidth_rule=definition.bandwidth_rule,
    )
    for key, value in overrides.items():
        if value is not None:
            values[key] = tuple(value) if key in ('grid', 'estimators') else value
    return SettingConfig(**values)


@dataclass(frozen=True)
class GridPoint:
    spec: MixtureSpec
    n: int
    gamma: float
    block_length: int | None = None


def resolve_grid_point(cfg: SettingConfig, value) -> GridPoint:
    """Model, sample size and gamma at one value of the swept parameter."""
    base = cfg.definition.base
    param = cfg.sweep_param
    if param == 'gamma':
        return GridPoint(base, cfg.n, float(value))
    if param == 'n':
        return GridPoint(base, int(value), cfg.gamma)
    if param == 'eps':
        return GridPoint(base.with_updates(eps=float(value)), cfg.n, cfg.gamma)
    if param in ('sigma', 'tau'):
        return GridPoint(base.with_updates(scale=float(value)), cfg.n, cfg.gamma)
    if param == 'sigma0':
        null = NullParams(base.null.u0, float(value))
        return GridPoint(base.with_updates(null=null), cfg.n, cfg.gamma)
    if param == 'block_length':
        return GridPoint(base, cfg.n, cfg.gamma, int(value))
    raise ConfigValidationError(f'Unknown sweep parameter {param!r}.')


def true_value(estimator: str, spec: MixtureSpec) -> float:
    parameter = estimator.rsplit('_', 1)[0]
    if parameter == 'eps':
        return spec.eps
    if parameter == 'u0':
        return spec.null.u0
    if parameter == 'sigma0_sq':
        return spec.null.sigma0 ** 2
    if parameter == 'sigma0':
        return spec.null.sigma0
    raise ConfigValidationError(f'No target for estimator {estimator!r}.')


def with_replications(cfg: SettingConfig, replications: int) -> SettingConfig:
    return replace(cfg, replications=replications)
