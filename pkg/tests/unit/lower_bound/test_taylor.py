import math
import pytest
import numpy as np
from scipy.special import expit
from src.lower_bound.taylor import Jet

T = np.array([0.3, 1.0, 2.5])

def test_variable_and_constant():
    X = Jet.variable(T, 3, slope=2.0)
    assert np.array_equal(X.derivative(0), T)
    assert np.all(X.derivative(1) == 2.0)
    assert np.all(X.derivative(2) == 0.0)
    assert Jet.constant(4.0, 2, T.shape).derivative(0).tolist() == [4.0] * 3

def test_exp_derivatives():
    E = Jet.variable(T, 5).exp()
    for m in range(6):
        np.testing.assert_allclose(E.derivative(m), np.exp(T), rtol=1e-12)

def test_expm1_keeps_precision():
    E = Jet.variable(np.array([1e-12]), 2).expm1()
    assert E.derivative(0)[0] == pytest.approx(1e-12, rel=1e-10)
    assert E.derivative(1)[0] == pytest.approx(1.0)

def test_reciprocal():
    R = (1.0 + Jet.variable(np.array([1.0]), 4)).reciprocal()
    for j in range(5):
        assert R.c[j][0] == pytest.approx((-1) ** j / 2 ** (j + 1))

def test_power_matches_monomial():
    np.testing.assert_allclose(Jet.power(T, 3.0, 5).c, Jet.monomial(T, 3, 5).c, rtol=1e-12, atol=1e-14)

def test_monomial_at_zero():
    M = Jet.monomial(np.array([0.0]), 5, 6)
    assert M.derivative(5)[0] == math.factorial(5)
    assert M.derivative(4)[0] == 0.0

def test_product_rule():
    X = Jet.variable(T, 4)
    np.testing.assert_allclose((X * X * X).c, Jet.monomial(T, 3, 4).c, atol=1e-14)

def test_sin_affine():
    S = Jet.sin_affine(T, 2.0, 4)
    for j in range(5):
        np.testing.assert_allclose(S.derivative(j), 2.0 ** j * np.sin(2.0 * T + 0.5 * j * math.pi), atol=1e-12)

def test_logistic_derivatives():
    Y = Jet.variable(T, 2).logistic()
    s = expit(T)
    np.testing.assert_allclose(Y.derivative(0), s)
    np.testing.assert_allclose(Y.derivative(1), s * (1 - s), rtol=1e-12)
    np.testing.assert_allclose(Y.derivative(2), s * (1 - s) * (1 - 2 * s), rtol=1e-10)

def test_select():
    a = Jet.constant(1.0, 1, (3,))
    b = Jet.constant(2.0, 1, (3,))
    mask = np.array([True, False, True])
    assert a.select(mask, b).derivative(0).tolist() == [2.0, 1.0, 2.0]
