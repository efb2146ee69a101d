import pytest
import numpy as np
from src.estimation.types import NullParams, ProportionEstimate, PValueVector, Sample
from src.fdr.procedures import (
    adaptive_bh, adaptz, adaptz_from_lfdr, bh_stepup, evaluate_fdp, lfdr_values, RejectionSet
)
from src.estimation.baselines import pvalues_from_null
from src.simulation.generators import MixtureSpec, gen_gaussian_mixture
from src.utils.errors import DensitySupportError, InvalidInputError, LevelOverflowError

def _eps(value):
    return ProportionEstimate.from_raw(value)

# ----------- Step-up Tests ---------- #
def test_bh_hand_computed():
    rej = bh_stepup(PValueVector([0.01, 0.02, 0.03, 0.5]), 0.1)
    assert rej.rejected.tolist() == [True, True, True, False]
    assert rej.count == 3

def test_bh_is_step_up():
    # p_(1) fails its own threshold but p_(2) passes, so both are rejected
    rej = bh_stepup(PValueVector([0.04, 0.05, 0.9]), 0.1)
    assert rej.rejected.tolist() == [True, True, False]

def test_bh_unsorted_input():
    rej = bh_stepup(PValueVector([0.5, 0.03, 0.01, 0.02]), 0.1)
    assert rej.rejected.tolist() == [False, True, True, True]

def test_bh_nothing_rejected():
    assert bh_stepup(PValueVector([0.5, 0.6]), 0.1).count == 0

@pytest.mark.parametrize('alpha', [0.0, 1.0, -0.1])
def test_bh_rejects_alpha(alpha):
    with pytest.raises(InvalidInputError):
        bh_stepup(PValueVector([0.5]), alpha)

def test_adaptive_bh_inflates_level():
    pvals = PValueVector([0.01, 0.06, 0.12, 0.5])
    assert bh_stepup(pvals, 0.1).count == 1
    assert adaptive_bh(pvals, 0.1, _eps(0.5)).count == 3

def test_adaptive_bh_with_zero_eps_is_bh():
    pvals = PValueVector(np.linspace(0.001, 0.9, 40))
    assert np.array_equal(adaptive_bh(pvals, 0.1, _eps(-0.2)).rejected, bh_stepup(pvals, 0.1).rejected)

def test_adaptive_bh_level_overflow():
    with pytest.raises(LevelOverflowError):
        adaptive_bh(PValueVector([0.5]), 0.1, _eps(1.0))

@pytest.fixture
def mixture_pvalues():
    sample = gen_gaussian_mixture(MixtureSpec(eps=0.2), 2000, 13)
    return pvalues_from_null(sample, NullParams(0.0, 1.0))

def test_bh_count_grows_with_alpha(mixture_pvalues):
    counts = [bh_stepup(mixture_pvalues, alpha).count for alpha in np.linspace(0.01, 0.5, 25)]
    assert counts == sorted(counts)
    assert counts[-1] > 0

def test_bh_follows_permutation(mixture_pvalues):
    order = np.random.default_rng(4).permutation(mixture_pvalues.n)
    shuffled = PValueVector(mixture_pvalues.values[order])
    np.testing.assert_array_equal(
        bh_stepup(shuffled, 0.1).rejected, bh_stepup(mixture_pvalues, 0.1).rejected[order]
    )

# ----------- Lfdr Tests ---------- #
def test_lfdr_capped_at_one():
    sample = Sample(np.array([0.0, 3.0]))
    lfdr = lfdr_values(sample, _eps(0.0), NullParams(), lambda x: np.full(np.size(x), 0.1))
    assert lfdr[0] == 1.0
    assert lfdr[1] == pytest.approx(0.00443184841 / 0.1, rel=1e-6)

def test_lfdr_density_vanishes():
    sample = Sample(np.array([0.0, 1.0]))
    with pytest.raises(DensitySupportError):
        lfdr_values(sample, _eps(0.1), NullParams(), lambda x: np.where(np.asarray(x) > 0.5, 0.0, 1.0))

def test_adaptz_hand_computed():
    rej = adaptz_from_lfdr(np.array([0.2, 0.01, 0.9, 0.05]), 0.1)
    assert rej.rejected.tolist() == [True, True, False, True]

def test_adaptz_ties_rejected_together():
    rej = adaptz_from_lfdr(np.array([0.02, 0.15, 0.15]), 0.1)
    assert rej.count == 3

def test_adaptz_nothing_rejected():
    assert adaptz_from_lfdr(np.array([0.5, 0.6]), 0.1).count == 0

def test_adaptz_end_to_end():
    sample = Sample(np.array([0.0, 0.1, 4.0, 5.0]))
    f = lambda x: 0.5 * np.exp(-0.5 * np.square(x)) / np.sqrt(2 * np.pi) + 0.05
    rej = adaptz(sample, 0.1, _eps(0.5), NullParams(), f)
    assert rej.rejected.tolist() == [False, False, True, True]

# ----------- FDP Tests ---------- #
def test_fdp_empty_rejection():
    assert evaluate_fdp(RejectionSet(np.zeros(3, dtype=bool)), np.array([True, False, False])) == 0.0

def test_fdp_hand_computed():
    rej = RejectionSet(np.array([True, True, False]))
    assert evaluate_fdp(rej, np.array([True, False, False])) == 0.5

def test_fdp_needs_truth():
    with pytest.raises(InvalidInputError):
        evaluate_fdp(RejectionSet(np.zeros(2, dtype=bool)), None)
