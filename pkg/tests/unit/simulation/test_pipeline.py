import json
import pytest
import pandas as pd
from src.simulation.pipeline import TARGETS, run_reproduce, run_simulation, scaled_replications
from src.simulation.published_values import published_mse
from src.simulation.settings import build_setting
from src.utils.errors import ConfigValidationError

# ----------- Helper Tests ---------- #
def test_scaled_replications():
    assert scaled_replications(1.0) == 1000
    assert scaled_replications(0.05) == 50
    assert scaled_replications(1e-6) == 1
    with pytest.raises(ConfigValidationError):
        scaled_replications(0.0)

def test_published_lookup():
    grid = build_setting('1').grid
    assert published_mse('1', 'eps_plugin', grid, 0.2) == pytest.approx(4.14e-4)
    assert published_mse('1', 'eps_plugin', grid, 0.21) is None
    assert published_mse('5a', 'cj', grid, 0.2) is None

def test_every_target_names_known_settings():
    for settings in TARGETS.values():
        for setting_id in settings:
            build_setting(setting_id)

# ----------- Output Tests ---------- #
def test_run_simulation_writes_outputs(tmp_path):
    cfg = build_setting('1', n=2_000, replications=2, grid=[0.2])
    frame = run_simulation(cfg, tmp_path, progress=False)

    on_disk = pd.read_csv(tmp_path / 'setting_1.csv')
    assert list(on_disk.columns) == list(frame.columns)
    assert on_disk['published'].iloc[0] == pytest.approx(4.14e-4)

    record = json.loads((tmp_path / 'setting_1.json').read_text())
    assert record['seed'] == 2009
    assert record['config']['n'] == 2_000
    assert len(record['config_hash']) == 64
    assert {'numpy', 'scipy', 'pandas', 'python'} <= set(record['versions'])

def test_same_seed_byte_identical(tmp_path):
    cfg = build_setting('3a', n=2_000, replications=2, grid=[0.15])
    run_simulation(cfg, tmp_path / 'a', progress=False)
    run_simulation(cfg, tmp_path / 'b', progress=False)
    for name in ('setting_3a.csv', 'setting_3a.json'):
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes()

def test_reproduce_target(tmp_path):
    frame = run_reproduce('table1', seed=7, scale=0.002, output_dir=tmp_path,
                          grid=[0.2], progress=False)
    assert (frame['target'] == 'table1').all()
    assert set(frame['estimator']) == {'eps_plugin', 'u0_cj', 'sigma0_sq_cj'}
    record = json.loads((tmp_path / 'table1.json').read_text())
    assert record['seed'] == 7
    assert record['config']['settings'][0]['replications'] == 2

def test_reproduce_rejects_bad_requests(tmp_path):
    with pytest.raises(ConfigValidationError):
        run_reproduce('table9', seed=1, scale=0.01, output_dir=tmp_path)
    with pytest.raises(ConfigValidationError):
        run_reproduce('table3', seed=1, scale=0.01, output_dir=tmp_path, grid=[0.1])
