from dataclasses import replace
import pytest
import numpy as np
from scipy.stats import norm
from src.lower_bound import least_favorable
from src.lower_bound.least_favorable import KINDS, build_pair, spatial_grid
from src.lower_bound.space import SpaceParams
from src.lower_bound.verify import (
    chi2_distance, run_checks, verify_low_freq_match, verify_normalization, verify_positivity,
    verify_round_trip, verify_symmetry, verify_zero_mass
)
from src.utils.errors import (
    ConstructionFailedError, InvalidInputError, NumericalWarning, SupportError
)

@pytest.fixture(scope='module')
def pairs():
    params = SpaceParams()
    return {kind: build_pair(kind, params) for kind in KINDS}

# ----------- Construction Tests ---------- #
def test_spatial_grid():
    x = spatial_grid()
    assert x.size == 2401
    assert x[0] == -60.0 and x[-1] == 60.0
    assert x[1] - x[0] == pytest.approx(0.05)

@pytest.mark.parametrize('kind', KINDS)
def test_perturbation_has_zero_mass(pairs, kind):
    assert pairs[kind].diagnostics['hat_w1_at_zero'] == 0.0
    assert verify_zero_mass(pairs[kind]).passed

@pytest.mark.parametrize('kind', KINDS)
def test_densities_are_proper(pairs, kind):
    pair = pairs[kind]
    assert verify_positivity(pair).passed
    assert verify_normalization(pair).passed
    assert verify_symmetry(pair).passed

@pytest.mark.parametrize('kind', KINDS)
def test_low_frequencies_match(pairs, kind):
    result = verify_low_freq_match(pairs[kind])
    assert result.passed, result.details

@pytest.mark.parametrize('kind', KINDS)
def test_round_trip(pairs, kind):
    assert verify_round_trip(pairs[kind]).passed

@pytest.mark.parametrize('kind', KINDS)
def test_all_checks_pass(pairs, kind):
    failed = [c.name for c in run_checks(pairs[kind]) if not c.passed]
    assert failed == []

@pytest.mark.parametrize('kind', KINDS)
def test_parameters_differ_by_delta(pairs, kind):
    pair = pairs[kind]
    assert pair.delta > 0
    assert pair.param_2 - pair.param_1 == pytest.approx(pair.delta, rel=1e-6)

def test_variance_gap(pairs):
    pair = pairs['variance']
    d = pair.diagnostics
    expected = d['theta0'] * d['vartheta0'] * d['eta'] * d['tau'] ** -5
    assert pair.delta == pytest.approx(expected, rel=1e-12)

def test_gaps_shrink_with_n():
    small = build_pair('mean', SpaceParams(n=1_000))
    large = build_pair('mean', SpaceParams(n=100_000))
    assert large.delta < small.delta

def test_invalid_requests():
    with pytest.raises(InvalidInputError):
        build_pair('median', SpaceParams())
    with pytest.raises(InvalidInputError):
        build_pair('variance', SpaceParams(), vartheta0=0.0)

# ----------- Shrinking Tests ---------- #
def test_shrinks_and_warns(monkeypatch):
    calls = {'n': 0}
    real = least_favorable.is_nonnegative

    def flaky(h, *args):
        calls['n'] += 1
        return calls['n'] > 2 and real(h, *args)

    monkeypatch.setattr(least_favorable, 'is_nonnegative', flaky)
    with pytest.warns(NumericalWarning):
        pair = build_pair('proportion', SpaceParams())
    assert pair.diagnostics['halvings'] == 1
    assert pair.diagnostics['vartheta0'] == pytest.approx(0.05)
    assert pair.diagnostics['theta0'] == pytest.approx(0.05)

def test_gives_up(monkeypatch):
    monkeypatch.setattr(least_favorable, 'is_nonnegative', lambda h, *args: False)
    with pytest.raises(ConstructionFailedError):
        build_pair('mean', SpaceParams())

# ----------- chi2 Tests ---------- #
def test_self_pair_chi2_is_zero(pairs):
    assert chi2_distance(pairs['variance'].self_pair()) == 0.0

def test_swapped_pair(pairs):
    pair = pairs['proportion']
    back = pair.swapped()
    assert back.param_1 == pair.param_2
    assert np.array_equal(back.diff, -pair.diff)

def test_chi2_is_asymmetric(pairs):
    x = pairs['variance'].x
    f1, f2 = norm.pdf(x), norm.pdf(x, scale=1.2)
    pair = replace(pairs['variance'], f1=f1, f2=f2, diff=f2 - f1)
    # closed forms: 1 / (s sqrt(2 - s^2)) - 1 and s / sqrt(2 - 1/s^2) - 1
    assert chi2_distance(pair) == pytest.approx(0.11359, abs=1e-4)
    assert chi2_distance(pair.swapped()) == pytest.approx(0.05023, abs=1e-4)

def test_chi2_needs_positive_f1(pairs):
    pair = pairs['mean']
    f1 = pair.f1.copy()
    f1[np.argmin(np.abs(pair.x))] = 0.0
    with pytest.raises(SupportError):
        chi2_distance(replace(pair, f1=f1))

def test_n_chi2_is_small(pairs):
    for pair in pairs.values():
        assert pair.params.n * chi2_distance(pair) < 0.5

# ----------- Fault Injection Tests ---------- #
def test_injected_band_fault_is_located(pairs):
    pair = pairs['variance']
    idx = int(np.argmin(np.abs(pair.t_grid - 1.0)))
    cf2 = pair.cf2.copy()
    cf2[idx] += 1e-4
    result = verify_low_freq_match(replace(pair, cf2=cf2))
    assert not result.passed
    assert result.value == pytest.approx(1e-4, rel=1e-3)
    assert result.details['location'] == pytest.approx(pair.t_grid[idx])
