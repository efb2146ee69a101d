import math
from dataclasses import replace
import pytest
import numpy as np
from src.simulation import harness
from src.simulation.harness import run_replication, run_setting, run_testing_setting
from src.simulation.settings import build_setting
from src.utils.errors import DivergenceError, ThresholdNotFoundError

@pytest.fixture
def small_estimation():
    return build_setting('1', n=2_000, replications=3, grid=[0.2])

@pytest.fixture
def small_testing():
    return build_setting('5a', n=2_000, replications=2, grid=[0.2],
                         estimators=['cj', 'storey', 'oracle'])

# ----------- Replication Tests ---------- #
def test_replication_is_reproducible(small_estimation):
    a = run_replication(small_estimation, 0, 1)
    b = run_replication(small_estimation, 0, 1)
    np.testing.assert_array_equal(a, b)
    assert len(a) == len(small_estimation.estimators)

def test_replications_differ(small_estimation):
    assert run_replication(small_estimation, 0, 0) != run_replication(small_estimation, 0, 1)

def test_failures_are_counted(monkeypatch, small_estimation):
    def fail(*args, **kwargs):
        raise ThresholdNotFoundError('no crossing')
    monkeypatch.setattr(harness, 'fit_null', fail)

    report = run_setting(small_estimation, progress=False)
    for e in range(len(small_estimation.estimators)):
        assert report.failures(0, e) == 3
        assert math.isnan(report.mse(0, e))

def test_shared_failure_keeps_other_estimators(monkeypatch):
    cfg = build_setting('3a', n=2_000, replications=2, grid=[0.15])
    def fail(sample):
        raise DivergenceError('forced')
    monkeypatch.setattr(harness, 'efron_estimator', fail)
    report = run_setting(cfg, progress=False)
    frame = report.to_frame().set_index('estimator')
    assert frame.loc['eps_efron', 'failures'] == 2
    assert frame.loc['eps_cj', 'failures'] == 0
    assert frame.loc['eps_storey', 'failures'] == 0

# ----------- Estimation Setting Tests ---------- #
def test_run_setting_report(small_estimation):
    report = run_setting(small_estimation, progress=False)
    assert report.values.shape == (1, 3, 3)
    frame = report.to_frame()
    assert list(frame.columns) == ['grid_value', 'estimator', 'mse', 'se', 'failures']
    assert list(frame['estimator']) == list(small_estimation.estimators)
    finite = frame['mse'].dropna()
    assert (finite >= 0).all()

def test_workers_do_not_change_results(small_estimation):
    serial = run_setting(small_estimation, workers=1, progress=False)
    parallel = run_setting(small_estimation, workers=2, progress=False)
    np.testing.assert_array_equal(serial.values, parallel.values)

def test_run_setting_rejects_testing(small_testing):
    with pytest.raises(ValueError):
        run_setting(small_testing, progress=False)

# ----------- Testing Setting Tests ---------- #
def test_testing_setting_fdp(small_testing):
    report = run_testing_setting(small_testing, progress=False)
    fdp = report.values[~np.isnan(report.values)]
    assert fdp.size > 0
    assert np.all((fdp >= 0) & (fdp <= 1))
    frame = report.to_frame()
    assert {'fdr', 'mse_fdp', 'failures'} <= set(frame.columns)
    assert report.alpha == 0.10

def test_testing_procedure_override(small_testing):
    report = run_testing_setting(small_testing, procedure='adaptz',
                                 estimators=('cj', 'oracle'), progress=False)
    assert report.estimators == ('cj', 'oracle')

def test_mse_fdp_around_alpha():
    report = harness.TestingReport('5a', 'eps', (0.2,), ('cj',), 2, np.array([[[0.1, 0.3]]]), alpha=0.1)
    assert report.fdr(0, 0) == pytest.approx(0.2)
    assert report.mse_fdp(0, 0) == pytest.approx(0.02)

def test_testing_report_takes_setting_alpha(small_testing):
    report = run_testing_setting(replace(small_testing, alpha=0.05), progress=False)
    assert report.alpha == 0.05
    oracle = report.estimators.index('oracle')
    fdp = report._column(0, oracle)
    assert report.mse_fdp(0, oracle) == pytest.approx(np.mean((fdp - 0.05) ** 2))

def test_report_base_is_abstract():
    with pytest.raises(TypeError):
        harness.SimulationReport('1', 'eps', (0.2,), ('cj',), 1, np.zeros((1, 1, 1)))
