import math
import pytest
from src.lower_bound.space import SpaceParams, absolute_moment, smallest_even_above
from src.utils.errors import InvalidInputError

def test_absolute_moment():
    assert absolute_moment(2.0) == pytest.approx(1.0)
    assert absolute_moment(1.0) == pytest.approx(math.sqrt(2 / math.pi))
    assert absolute_moment(4.0) == pytest.approx(3.0)

@pytest.mark.parametrize('x, k', [(5.0, 6), (6.0, 8), (4.5, 6), (3.0, 4)])
def test_smallest_even_above(x, k):
    assert smallest_even_above(x) == k

def test_default_space():
    params = SpaceParams()
    assert params.k == 6
    assert params.eta == pytest.approx(0.05)
    assert params.tau == pytest.approx(math.sqrt(3 * math.log(10_000)))
    assert params.A == pytest.approx(1.1 * math.sqrt(2.0))

def test_tau_scales_with_a():
    assert SpaceParams(a=2.0).tau == pytest.approx(SpaceParams().tau / 2)

def test_with_n():
    params = SpaceParams().with_n(1_000)
    assert params.n == 1_000
    assert params.eta == pytest.approx(0.5 * 1_000 ** -0.25)

@pytest.mark.parametrize('kwargs', [
    {'alpha': 2.0},
    {'beta': 0.5},
    {'eps0': 1.0},
    {'q': 0.0},
    {'a': -1.0},
    {'n': 1},
    {'A': 1.0},
])
def test_invalid_space(kwargs):
    with pytest.raises(InvalidInputError):
        SpaceParams(**kwargs)
