import json
import pytest
import numpy as np
from src.cli.commands import cmd_estimate, cmd_lowerbound, cmd_reproduce, cmd_simulate
from src.estimation.proportion_estimation import estimate_eps_known_null
from src.estimation.types import NullParams, Sample
from src.simulation.generators import MixtureSpec, gen_gaussian_mixture
from src.utils.config import validate_config
from src.utils.errors import ParseError
from scripts.run_cli import build_parser, merged_config, resolve_workers

@pytest.fixture
def zscore_file(tmp_path):
    sample = gen_gaussian_mixture(MixtureSpec(eps=0.1), 5_000, 3)
    path = tmp_path / 'z.csv'
    path.write_text('z\n' + '\n'.join(f'{v:.17g}' for v in sample.values) + '\n')
    return path, sample

# ----------- Estimate Tests ---------- #
def test_estimate_known_null(zscore_file, tmp_path):
    path, sample = zscore_file
    out = tmp_path / 'result.json'
    config = validate_config('estimate', {
        'input': str(path), 'null_mode': 'known', 'u0': 0.0, 'sigma0': 1.0, 'output': str(out)
    })
    result, status = cmd_estimate(config)
    expected = estimate_eps_known_null(sample, 0.2, NullParams(0.0, 1.0))
    assert status == 0
    assert result['eps_raw'] == expected.raw
    assert result['t_hat'] is None
    assert json.loads(out.read_text())['config_hash'] == result['config_hash']

def test_estimate_fitted_null(zscore_file):
    path, _ = zscore_file
    result, status = cmd_estimate(validate_config('estimate', {'input': str(path)}))
    assert status == 0
    assert result['n'] == 5_000
    assert result['u0_hat'] == pytest.approx(0.0, abs=0.3)
    assert result['sigma0_sq_hat'] == pytest.approx(1.0, abs=0.3)
    assert 0.0 <= result['eps_clamped'] <= 1.0
    assert result['t_hat'] > 0

def test_estimate_empty_file(tmp_path):
    path = tmp_path / 'empty.csv'
    path.write_text('')
    with pytest.raises(ParseError):
        cmd_estimate(validate_config('estimate', {'input': str(path)}))

# ----------- Simulation Command Tests ---------- #
def test_simulate_command(tmp_path):
    config = validate_config('simulate', {'setting': '3a', 'n': 2_000, 'replications': 2, 'grid': [0.15]})
    frame, status = cmd_simulate(config, tmp_path)
    assert status == 0
    assert (tmp_path / 'setting_3a.csv').exists()
    assert set(frame['estimator']) == {'eps_cj', 'eps_efron', 'eps_storey'}

def test_reproduce_command(tmp_path):
    config = validate_config('reproduce', {'target': 'table1', 'scale': 0.001, 'grid': [0.2]})
    frame, status = cmd_reproduce(config, tmp_path)
    assert status == 0
    assert set(frame['setting']) == {'1'}

# ----------- Lower Bound Command Tests ---------- #
def test_lowerbound_exit_status(tmp_path):
    config = validate_config('lowerbound', {'kind': 'mean', 'n_sweep': []})
    report, status = cmd_lowerbound(config, tmp_path)
    assert status == 0 and report['passed']
    assert len(report['config_hash']) == 64

    config['tol'] = 1e-30
    _, status = cmd_lowerbound(config)
    assert status == 1

# ----------- Argument Parsing Tests ---------- #
def test_flags_override_config_file(tmp_path):
    path = tmp_path / 'sim.json'
    path.write_text(json.dumps({'setting': '1', 'replications': 10, 'workers': 3}))
    args = build_parser().parse_args(['simulate', '--config', str(path), '--replications', '4', '--seed', '9'])
    tree = merged_config(args)
    assert tree['replications'] == 4
    assert tree['master_seed'] == 9
    assert tree['setting'] == '1'

def test_resolve_workers(monkeypatch):
    monkeypatch.setenv('FOURIER_NULL_WORKERS', '6')
    assert resolve_workers(2, {'workers': 3}) == 2
    assert resolve_workers(None, {'workers': 3}) == 3
    assert resolve_workers(None, {}) == 6
    monkeypatch.delenv('FOURIER_NULL_WORKERS')
    assert resolve_workers(None, {}) == 1
