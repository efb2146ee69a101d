import pytest
import numpy as np
from src.estimation.baselines import efron_estimator, pvalues_from_null, storey_estimator
from src.estimation.types import NullParams, PValueVector, Sample
from src.simulation.generators import MixtureSpec, gen_gaussian_mixture
from src.utils.errors import DivergenceError, InvalidInputError

# ----------- p-value Tests ---------- #
def test_pvalues_two_sided():
    sample = Sample(np.array([1.0, 1.0 + 1.959963984540054 * 2.0, 1.0 - 1.959963984540054 * 2.0]))
    p = pvalues_from_null(sample, NullParams(1.0, 2.0)).values
    assert p[0] == pytest.approx(1.0)
    assert p[1] == pytest.approx(0.05, rel=1e-9)
    assert p[2] == pytest.approx(0.05, rel=1e-9)

def test_pvalues_keep_tail_precision():
    p = pvalues_from_null(Sample(np.array([30.0])), NullParams()).values
    assert 0.0 < p[0] < 1e-190

# ----------- Storey Tests ---------- #
def test_storey_hand_computed():
    assert storey_estimator(PValueVector([0.1, 0.2, 0.6, 0.9]), 0.5).raw == pytest.approx(0.0)
    assert storey_estimator(PValueVector([0.1, 0.2, 0.3, 0.9]), 0.5).raw == pytest.approx(0.5)

def test_storey_clamps_negative():
    est = storey_estimator(PValueVector([0.6, 0.7, 0.8, 0.9]), 0.5)
    assert est.raw == pytest.approx(-1.0)
    assert est.clamped == 0.0
    assert est.gamma is None

@pytest.mark.parametrize('lam', [0.0, 1.0, 1.5])
def test_storey_rejects_lambda(lam):
    with pytest.raises(InvalidInputError):
        storey_estimator(PValueVector([0.5]), lam)

@pytest.mark.parametrize('seed', [0, 1, 2])
def test_storey_matches_brute_force_count(seed):
    rng = np.random.default_rng(seed)
    p = rng.uniform(size=257) ** rng.uniform(0.5, 2.0)
    above = sum(1 for value in p if value > 0.5)
    expected = 1.0 - above / (0.5 * p.size)
    est = storey_estimator(PValueVector(p), 0.5)
    assert est.raw == pytest.approx(expected, abs=1e-12)
    assert storey_estimator(PValueVector(rng.permutation(p)), 0.5).raw == est.raw

# ----------- Central Matching Tests ---------- #
def test_efron_on_pure_null():
    rng = np.random.default_rng(12)
    sample = Sample(0.3 + 1.2 * rng.standard_normal(10_000))
    null, eps = efron_estimator(sample)
    assert null.u0 == pytest.approx(0.3, abs=0.1)
    assert null.sigma0 == pytest.approx(1.2, abs=0.15)
    assert eps.clamped < 0.1

def test_efron_needs_enough_values():
    with pytest.raises(InvalidInputError):
        efron_estimator(Sample(np.zeros(100)))

def test_efron_zero_spread():
    with pytest.raises(DivergenceError):
        efron_estimator(Sample(np.ones(600)))

def test_efron_follows_location_shift():
    sample = gen_gaussian_mixture(MixtureSpec(eps=0.1), 20_000, 29)
    base_null, base_eps = efron_estimator(sample)
    shifted_null, shifted_eps = efron_estimator(Sample(sample.values + 5.0))
    assert shifted_null.u0 == pytest.approx(base_null.u0 + 5.0, abs=1e-9)
    assert shifted_null.sigma0 == pytest.approx(base_null.sigma0, rel=1e-9)
    assert shifted_eps.raw == pytest.approx(base_eps.raw, abs=1e-9)
    assert type(shifted_null.u0) is float and type(shifted_null.sigma0) is float
