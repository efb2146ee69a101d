import pytest
import numpy as np
from scipy.integrate import trapezoid
from src.estimation.types import NullParams
from src.simulation.generators import (
    DOUBLE_EXP, GAUSSIAN, MixtureSpec, gen_block_dependent, gen_double_exp_mixture,
    gen_gaussian_mixture, generate
)
from src.utils.errors import InvalidInputError

GAUSS_SPEC = MixtureSpec(eps=0.2, null=NullParams(0.5, 1.3))
LAPLACE_SPEC = MixtureSpec(eps=0.3, nonnull_kind=DOUBLE_EXP, scale=1.5)

def _ecf(values, t):
    return np.exp(1j * np.outer(t, values)).mean(axis=1)

# ----------- MixtureSpec Tests ---------- #
@pytest.mark.parametrize('kwargs', [
    {'eps': 1.5},
    {'nonnull_kind': 'cauchy'},
    {'l1': 1.0, 'r1': 0.0},
    {'scale': 0.0},
])
def test_invalid_spec(kwargs):
    with pytest.raises(InvalidInputError):
        MixtureSpec(**kwargs)

@pytest.mark.parametrize('spec', [GAUSS_SPEC, LAPLACE_SPEC])
def test_density_integrates_to_one(spec):
    x = np.linspace(-30, 30, 60_001)
    assert trapezoid(spec.density(x), x) == pytest.approx(1.0, abs=1e-6)

@pytest.mark.parametrize('spec', [GAUSS_SPEC, LAPLACE_SPEC])
def test_cf_is_transform_of_density(spec):
    x = np.linspace(-40, 40, 160_001)
    f = spec.density(x)
    for t in (0.3, 1.0, 2.5):
        numeric = trapezoid(f * np.exp(1j * t * x), x)
        assert abs(numeric - spec.cf(t)) < 1e-6

@pytest.mark.parametrize('spec', [GAUSS_SPEC, LAPLACE_SPEC])
def test_cf_deriv_finite_difference(spec):
    h = 1e-6
    for t in (0.0, 0.7, 2.0):
        fd = (spec.cf(t + h) - spec.cf(t - h)) / (2 * h)
        assert abs(fd - spec.cf_deriv(t)) < 1e-6

def test_with_updates_validates():
    assert GAUSS_SPEC.with_updates(eps=0.1).eps == 0.1
    with pytest.raises(InvalidInputError):
        GAUSS_SPEC.with_updates(eps=-0.1)

# ----------- Sampler Tests ---------- #
def test_same_seed_same_sample():
    a = gen_gaussian_mixture(GAUSS_SPEC, 1_000, 7)
    b = gen_gaussian_mixture(GAUSS_SPEC, 1_000, 7)
    c = gen_gaussian_mixture(GAUSS_SPEC, 1_000, 8)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.truth, b.truth)
    assert not np.array_equal(a.values, c.values)

@pytest.mark.parametrize('spec, sampler', [
    (GAUSS_SPEC, gen_gaussian_mixture),
    (LAPLACE_SPEC, gen_double_exp_mixture),
])
def test_sample_matches_cf(spec, sampler):
    sample = sampler(spec, 200_000, 11)
    t = np.array([0.25, 0.75, 1.5])
    assert np.max(np.abs(_ecf(sample.values, t) - spec.cf(t))) < 0.01
    assert sample.truth.mean() == pytest.approx(spec.eps, abs=0.01)

def test_sampler_checks_kind():
    with pytest.raises(InvalidInputError):
        gen_gaussian_mixture(LAPLACE_SPEC, 10, 0)
    with pytest.raises(InvalidInputError):
        gen_double_exp_mixture(GAUSS_SPEC, 10, 0)

def test_generate_dispatch():
    assert np.array_equal(generate(LAPLACE_SPEC, 50, 3).values,
                          gen_double_exp_mixture(LAPLACE_SPEC, 50, 3).values)
    assert np.array_equal(generate(GAUSS_SPEC, 50, 3, block_length=5).values,
                          gen_block_dependent(GAUSS_SPEC, 50, 5, 3).values)

# ----------- Block Dependence Tests ---------- #
def test_block_layout():
    sample = gen_block_dependent(MixtureSpec(), 1_000, 10, 4)
    assert sample.truth[:800].sum() == 0
    assert sample.truth[800:].all()

def test_block_null_marginal_and_correlation():
    sample = gen_block_dependent(MixtureSpec(), 200_000, 10, 4)
    null = sample.values[:160_000]
    assert null.std() == pytest.approx(1.0, abs=0.02)
    lag1 = np.corrcoef(null[:-1], null[1:])[0, 1]
    assert lag1 == pytest.approx(10 / 11, abs=0.01)

def test_block_length_zero_is_independent():
    sample = gen_block_dependent(MixtureSpec(), 100_000, 0, 4)
    null = sample.values[:80_000]
    assert abs(np.corrcoef(null[:-1], null[1:])[0, 1]) < 0.02

def test_negative_block_length():
    with pytest.raises(InvalidInputError):
        gen_block_dependent(MixtureSpec(), 100, -1, 0)
