"""
Numerical checks on constructed density pairs.
"""
import math
from dataclasses import asdict, dataclass, field
import numpy as np
from scipy.integrate import trapezoid
from src.lower_bound.least_favorable import DensityPair, build_pair, is_nonnegative
from src.lower_bound.space import SpaceParams
from src.lower_bound.spectra import PerturbationSpectrum, power_tail_derivative_coefficient
from src.lower_bound.transforms import (
    forward_transform, oscillatory_moments, power_tail_cosine, sorted_breaks
)
from src.utils.errors import SupportError

CORE_WIDTH = 6.0 # chi2 core is |x| <= 6 sqrt(a^2 + 1)
TAIL_U = np.geomspace(5e3, 5e4, 8)
TAIL_BAND = (0.8, 1.2)
PARTNER_TAIL_TOL = 0.2
ROUND_TRIP_T = (0.0, 0.5, 1.0, 2.0, 3.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _core_mask(pair: DensityPair) -> np.ndarray:
    return np.abs(pair.x) <= CORE_WIDTH * math.sqrt(pair.params.a ** 2 + 1.0)


def heavy_tail_constant(pair: DensityPair) -> float:
    """Largest C with f1(x) >= C eta (1 + |x|)^(-k) over the chi2 core."""
    core = _core_mask(pair)
    weight = (1.0 + np.abs(pair.x[core])) ** pair.params.k
    return float(np.min(pair.f1[core] * weight) / pair.params.eta)


def chi2_components(pair: DensityPair) -> dict:
    """
    Core trapezoid of (f2 - f1)^2 / f1 and an upper bound on the rest.

    Outside the core, f1 >= C eta (1 + |x|)^(-k) and
    |f2 - f1| <= D (1 + |x|)^(-k) with D the grid supremum of |diff| (1 + |x|)^k,
    so the tail is at most 2 D^2 (1 + X)^(1-k) / ((k - 1) C eta).

    Raises:
        SupportError: f1 is not strictly positive on the core
    """
    core = _core_mask(pair)
    x, f1, diff = pair.x[core], pair.f1[core], pair.diff[core]
    if np.any(f1 <= 0.0):
        bad = float(x[np.argmax(f1 <= 0.0)])
        raise SupportError(f'f1 is not positive at x = {bad:.4f}.')
    core_value = float(trapezoid(diff**2 / f1, x))

    k, eta = pair.params.k, pair.params.eta
    edge = float(x.max())
    outer = ~core
    envelope = np.abs(pair.diff[outer]) * (1.0 + np.abs(pair.x[outer])) ** k
    sup = float(envelope.max()) if envelope.size else 0.0
    c_fit = heavy_tail_constant(pair)
    tail = 2.0 * sup**2 * (1.0 + edge) ** (1 - k) / ((k - 1) * c_fit * eta) if sup > 0 else 0.0
    return {'core': core_value, 'tail_bound': tail, 'c_fit': c_fit, 'core_edge': edge}


def chi2_distance(pair: DensityPair) -> float:
    """chi2(f1, f2) = integral (f2 - f1)^2 / f1, with the tail bounded from above."""
    parts = chi2_components(pair)
    return parts['core'] + parts['tail_bound']


def verify_low_freq_match(pair: DensityPair, tol: float = 1e-8) -> CheckResult:
    """max_{|t| <= tau_n} |cf1 - cf2|, relative to max |cf1|."""
    band = np.abs(pair.t_grid) <= pair.params.tau
    gap = np.abs(pair.cf1[band] - pair.cf2[band]) / np.abs(pair.cf1).max()
    where = int(np.argmax(gap))
    worst = float(gap[where])
    return CheckResult(
        name='low_frequency_match',
        passed=worst <= tol,
        value=worst,
        tolerance=tol,
        details={'location': float(pair.t_grid[band][where]), 'tau': pair.params.tau},
    )


def tail_ratio(spectrum: PerturbationSpectrum, u: np.ndarray) -> np.ndarray:
    """
    |u|^k w(u) from k integrations by parts:

        u^k w(u) = L + (-1)^(k/2) / pi * integral_0^inf [E^(k) cos(tu) + O^(k) sin(tu)] dt

    where L comes from the |t|^(k-1) kink of the spectrum at the origin.
    """
    k = spectrum.k

    def derivative(t):
        even, odd = spectrum.jets(t, k)
        return even.derivative(k), odd.derivative(k)

    u = np.asarray(u, dtype=float)
    if spectrum.support_end is None:
        breaks = spectrum.breakpoints()
        cos_part, sin_part = oscillatory_moments(derivative, breaks, u)
        cos_part += power_tail_cosine(
            u, breaks[-1], spectrum.alpha + k, power_tail_derivative_coefficient(spectrum.alpha, k)
        )
    else:
        breaks = sorted_breaks(spectrum.breakpoints(), spectrum.support_end)
        cos_part, sin_part = oscillatory_moments(derivative, breaks, u)
    return spectrum.leading_tail + (-1) ** (k // 2) * (cos_part + sin_part) / math.pi


def _loglog_slope(u: np.ndarray, deviation: np.ndarray) -> float | None:
    keep = deviation > 0
    if keep.sum() < 2:
        return None
    return float(np.polyfit(np.log(u[keep]), np.log(deviation[keep]), 1)[0])


def verify_tail(pair: DensityPair, u: np.ndarray = TAIL_U) -> CheckResult:
    """
    Heavy tails: |u|^k w1(u) in [0.8, 1.2] over the outer decade, the partner's
    |u|^k w2(u) within 20% of its limit, and a positive fitted floor constant
    C in f1(x) >= C eta (1 + |x|)^(-k).
    """
    base, partner = pair.perturbation.base, pair.perturbation.partner
    base_ratio = tail_ratio(base, u)
    partner_ratio = tail_ratio(partner, u)
    partner_dev = np.abs(partner_ratio / partner.leading_tail - 1.0)
    c_fit = heavy_tail_constant(pair)

    base_ok = bool(np.all((base_ratio >= TAIL_BAND[0]) & (base_ratio <= TAIL_BAND[1])))
    partner_ok = bool(np.all(partner_dev <= PARTNER_TAIL_TOL))
    return CheckResult(
        name='heavy_tail',
        passed=base_ok and partner_ok and c_fit > 0,
        value=float(np.max(np.abs(base_ratio - 1.0))),
        tolerance=TAIL_BAND[1] - 1.0,
        details={
            'u': u.tolist(),
            'base_ratio': base_ratio.tolist(),
            'partner_ratio': partner_ratio.tolist(),
            'partner_limit': partner.leading_tail,
            'partner_deviation_slope': _loglog_slope(u, partner_dev),
            'c_fit': c_fit,
        },
    )


def verify_zero_mass(pair: DensityPair, tol: float = 1e-8) -> CheckResult:
    """hat w1(0) = 0; the grid integral of w1 is reported alongside."""
    value = pair.diagnostics['hat_w1_at_zero']
    return CheckResult(
        name='zero_mass_perturbation',
        passed=value <= tol,
        value=value,
        tolerance=tol,
        details={'grid_integral_w1': float(trapezoid(pair.perturbation.w1, pair.x))},
    )


def verify_positivity(pair: DensityPair) -> CheckResult:
    worst = min(float(pair.h1.min()), float(pair.h2.min()))
    return CheckResult(
        name='mixing_density_positivity',
        passed=is_nonnegative(pair.h1) and is_nonnegative(pair.h2),
        value=worst,
        details={
            'min_h1': float(pair.h1.min()),
            'min_h2': float(pair.h2.min()),
            'halvings': pair.diagnostics.get('halvings', 0),
        },
    )


def verify_normalization(pair: DensityPair, tol: float = 1e-6) -> CheckResult:
    masses = {
        name: float(trapezoid(values, pair.x))
        for name, values in (('h1', pair.h1), ('h2', pair.h2), ('f1', pair.f1), ('f2', pair.f2))
    }
    worst = max(abs(m - 1.0) for m in masses.values())
    return CheckResult(
        name='normalization', passed=worst <= tol, value=worst, tolerance=tol, details=masses
    )


def verify_round_trip(pair: DensityPair, t=ROUND_TRIP_T, tol: float = 1e-6) -> CheckResult:
    """Forward transforms of the tabulated f's against the analytic characteristic functions."""
    t = np.asarray(t, dtype=float)
    gaps = []
    for f, cf in ((pair.f1, pair.cf1_fn), (pair.f2, pair.cf2_fn)):
        gaps.append(np.abs(forward_transform(pair.x, f, t) - cf(t)))
    gaps = np.concatenate(gaps)
    worst = float(gaps.max())
    return CheckResult(
        name='transform_round_trip', passed=worst <= tol, value=worst, tolerance=tol,
        details={'t': t.tolist()},
    )


def verify_symmetry(pair: DensityPair, tol: float = 1e-12) -> CheckResult:
    """hat w(-t) = conj(hat w(t)), so both perturbations are real."""
    p = pair.perturbation
    worst = 0.0
    for hat in (p.hat_w1, p.hat_w2):
        worst = max(worst, float(np.max(np.abs(hat[::-1] - np.conj(hat)))))
    return CheckResult(name='spectrum_symmetry', passed=worst <= tol, value=worst, tolerance=tol)


def check_chi2_decay(
        kind: str,
        params: SpaceParams,
        n_sweep=(1_000, 10_000, 100_000),
        vartheta0: float = 0.1,
        theta0: float = 0.1
    ) -> CheckResult:
    """n * chi2(f1, f2) must strictly decrease along ``n_sweep``."""
    scaled = []
    for n in n_sweep:
        pair = build_pair(kind, params.with_n(n), vartheta0, theta0)
        scaled.append(n * chi2_distance(pair))
    decreasing = bool(np.all(np.diff(scaled) < 0))
    return CheckResult(
        name='chi2_decay',
        passed=decreasing,
        value=float(scaled[-1]),
        details={'n': list(n_sweep), 'n_chi2': scaled},
    )


def run_checks(pair: DensityPair, tol: float = 1e-8) -> list[CheckResult]:
    """All single-pair checks; ``tol`` is the low-frequency tolerance."""
    chi2 = chi2_components(pair)
    n_chi2 = pair.params.n * (chi2['core'] + chi2['tail_bound'])
    return [
        verify_zero_mass(pair),
        verify_symmetry(pair),
        verify_positivity(pair),
        verify_normalization(pair),
        verify_round_trip(pair),
        verify_low_freq_match(pair, tol),
        verify_tail(pair),
        CheckResult(name='chi2_distance', passed=n_chi2 < 0.5, value=n_chi2, tolerance=0.5, details=chi2),
    ]
