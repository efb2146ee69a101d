"""
Building blocks of the perturbation spectra: the base profile xi and the
smooth cutoffs s1, s2 made from the mollifier ramp

    r(x) = exp(-1/x) / (exp(-1/x) + exp(-1/(1-x))),  r = 0 for x <= 0, 1 for x >= 1.

Each function has a jet counterpart (arguments t >= 0) for the tail checks.
"""
import math
import numpy as np
from scipy.special import expit
from src.lower_bound.taylor import Jet

S1_INNER = (1.0 / 3.0, 2.0 / 3.0) # falls from 1 to 0
S1_OUTER = (4.0 / 3.0, 5.0 / 3.0) # rises from 0 to 1
S2_START = 1.0 / 3.0 # s2 falls over [tau + 1/3, tau + 2/3]
S2_END = 2.0 / 3.0
BAND_SLOPE = 3.0 # 1 / band width
_RAMP_CLIP = 1e-6


def xi_coefficient(k: int) -> float:
    return (-1) ** (k // 2) * math.pi / math.factorial(k - 1)


def xi_base(t, k: int, alpha: float):
    """
    ((-1)^(k/2) pi / (k-1)!) |t|^(k-1) for |t| <= 1, and |t|^(-alpha) beyond.
    """
    a = np.abs(np.asarray(t, dtype=float))
    with np.errstate(divide='ignore'):
        out = np.where(a <= 1.0, xi_coefficient(k) * a ** (k - 1), a ** (-alpha))
    return out if out.ndim else float(out)


def mollifier_ramp(x):
    x = np.asarray(x, dtype=float)
    inside = (x > 0.0) & (x < 1.0)
    xc = np.where(inside, x, 0.5)
    out = np.where(x >= 1.0, 1.0, 0.0)
    out = np.where(inside, expit(1.0 / (1.0 - xc) - 1.0 / xc), out)
    return out if out.ndim else float(out)


def smooth_cutoff_s1(t):
    """0 on ||t| - 1| <= 1/3, 1 on ||t| - 1| >= 2/3."""
    a = np.abs(np.asarray(t, dtype=float))
    out = np.ones_like(a)
    inner = (a >= S1_INNER[0]) & (a <= S1_INNER[1])
    out = np.where(inner, mollifier_ramp(BAND_SLOPE * (S1_INNER[1] - a)), out)
    out = np.where((a > S1_INNER[1]) & (a < S1_OUTER[0]), 0.0, out)
    outer = (a >= S1_OUTER[0]) & (a <= S1_OUTER[1])
    out = np.where(outer, mollifier_ramp(BAND_SLOPE * (a - S1_OUTER[0])), out)
    return out if out.ndim else float(out)


def smooth_cutoff_s2(t, tau_n: float):
    """1 on |t| <= tau_n + 1/3, 0 on |t| >= tau_n + 2/3."""
    a = np.abs(np.asarray(t, dtype=float))
    lo, hi = tau_n + S2_START, tau_n + S2_END
    out = np.where(a <= lo, 1.0, 0.0)
    band = (a > lo) & (a < hi)
    out = np.where(band, mollifier_ramp(BAND_SLOPE * (hi - a)), out)
    return out if out.ndim else float(out)


# ---- jets, for t >= 0 ----

def _ramp_jet(x, slope: float, order: int) -> Jet:
    """Jet in t of r(x(t)) where x(t) has value x and derivative slope."""
    x = np.clip(x, _RAMP_CLIP, 1.0 - _RAMP_CLIP)
    X = Jet.variable(x, order, slope)
    return ((1.0 - X).reciprocal() - X.reciprocal()).logistic()


def s1_jet(t: np.ndarray, order: int) -> Jet:
    t = np.asarray(t, dtype=float)
    jet = Jet.constant(np.where((t > S1_INNER[1]) & (t < S1_OUTER[0]), 0.0, 1.0), order, t.shape)
    inner = (t >= S1_INNER[0]) & (t <= S1_INNER[1])
    if inner.any():
        ramp = _ramp_jet(BAND_SLOPE * (S1_INNER[1] - t), -BAND_SLOPE, order)
        jet = jet.select(inner, ramp)
    outer = (t >= S1_OUTER[0]) & (t <= S1_OUTER[1])
    if outer.any():
        ramp = _ramp_jet(BAND_SLOPE * (t - S1_OUTER[0]), BAND_SLOPE, order)
        jet = jet.select(outer, ramp)
    return jet


def s2_jet(t: np.ndarray, tau_n: float, order: int) -> Jet:
    t = np.asarray(t, dtype=float)
    lo, hi = tau_n + S2_START, tau_n + S2_END
    jet = Jet.constant(np.where(t <= lo, 1.0, 0.0), order, t.shape)
    band = (t > lo) & (t < hi)
    if band.any():
        ramp = _ramp_jet(BAND_SLOPE * (hi - t), -BAND_SLOPE, order)
        jet = jet.select(band, ramp)
    return jet


def xi_jet(t: np.ndarray, k: int, alpha: float, order: int) -> Jet:
    t = np.asarray(t, dtype=float)
    low = t <= 1.0
    poly = Jet.monomial(np.where(low, t, 0.0), k - 1, order) * xi_coefficient(k)
    tail = Jet.power(np.where(low, 2.0, t), -alpha, order)
    return tail.select(low, poly)
