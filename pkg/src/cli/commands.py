"""
Command implementations behind ``scripts/run_cli.py``. Each command takes a
validated configuration tree and returns its result with an exit status.
"""
from pathlib import Path
import pandas as pd
from src.estimation.null_estimation import fit_null
from src.estimation.proportion_estimation import estimate_eps_known_null, estimate_eps_plugin
from src.estimation.types import NullParams, Sample
from src.lower_bound.pipeline import run_lowerbound
from src.lower_bound.space import SpaceParams
from src.simulation.pipeline import run_reproduce, run_simulation
from src.simulation.settings import build_setting
from src.utils.io import config_hash, read_zscores, save_to_json


def cmd_estimate(config: dict) -> tuple[dict, int]:
    """
    Estimate the null and the nonnull proportion from a file of z-scores.

    In 'estimate' mode the null is fitted at the data-driven threshold and
    the plug-in proportion estimator is used; in 'known' mode the given
    (u0, sigma0) standardize the data before the point-mass estimator.

    Raises:
        ParseError: Malformed input file
        EstimatorFailure: The estimator's own error, unchanged
    """
    sample = Sample(read_zscores(config['input']))
    gamma = float(config['gamma'])

    if config['null_mode'] == 'known':
        null = NullParams(float(config['u0']), float(config['sigma0']))
        eps = estimate_eps_known_null(sample, gamma, null)
        sigma2, t_hat = null.sigma0 ** 2, None
    else:
        fit = fit_null(sample, gamma)
        null = fit.params
        eps = estimate_eps_plugin(sample, gamma, null=null)
        sigma2, t_hat = fit.sigma2, fit.threshold.t_hat

    result = {
        'n': sample.n,
        'gamma': gamma,
        'null_mode': config['null_mode'],
        'u0_hat': null.u0,
        'sigma0_sq_hat': sigma2,
        'eps_raw': eps.raw,
        'eps_clamped': eps.clamped,
        't_hat': t_hat,
        't_used': eps.t_used,
        'config_hash': config_hash(config),
    }
    if config.get('output'):
        save_to_json(result, config['output'])
    return result, 0


def cmd_simulate(config: dict, output_dir: str | Path, workers: int = 1) -> tuple[pd.DataFrame, int]:
    cfg = build_setting(
        config['setting'],
        n=config['n'],
        replications=config['replications'],
        gamma=config['gamma'],
        grid=config['grid'],
        master_seed=config['master_seed'],
        estimators=config['estimators'],
        procedure=config['procedure'],
        alpha=config['alpha'],
        lam=config['lam'],
        bandwidth_rule=config['bandwidth_rule'],
    )
    return run_simulation(cfg, output_dir, workers=workers), 0


def cmd_reproduce(config: dict, output_dir: str | Path, workers: int = 1) -> tuple[pd.DataFrame, int]:
    frame = run_reproduce(
        config['target'],
        seed=config['seed'],
        scale=float(config['scale']),
        output_dir=output_dir,
        workers=workers,
        grid=config['grid'],
    )
    return frame, 0


def cmd_lowerbound(config: dict, output_dir: str | Path | None = None) -> tuple[dict, int]:
    """Build and verify one least-favorable pair; exit status 1 when any check fails."""
    params = SpaceParams(
        alpha=float(config['alpha']),
        beta=float(config['beta']),
        eps0=float(config['eps0']),
        q=float(config['q']),
        a=float(config['a']),
        A=None if config['A'] is None else float(config['A']),
        n=int(config['n']),
    )
    report = run_lowerbound(
        config['kind'],
        params,
        vartheta0=float(config['vartheta0']),
        theta0=float(config['theta0']),
        tol=float(config['tol']),
        n_sweep=config['n_sweep'],
        output_dir=output_dir,
        dump_csv=bool(config['dump_csv']),
        provenance={'config_hash': config_hash(config)},
    )
    return report, 0 if report['passed'] else 1
