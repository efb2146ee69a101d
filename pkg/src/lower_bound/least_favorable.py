"""
Least-favorable density pairs for the null variance, the null mean and the
nonnull proportion.

Every pair mixes a N(0, a^2) null with a nonnull component whose mixing
density is h = phi + vartheta0 * w, where w is a zero-mass perturbation built
from its spectrum. The partner spectrum is chosen so the two mixtures have
identical characteristic functions on |t| <= tau_n + 1/3 while the target
parameter differs by delta_n.
"""
import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass, field, replace
import numpy as np
from scipy.stats import norm
from src.lower_bound.cutoffs import S2_END, S2_START, smooth_cutoff_s2
from src.lower_bound.space import SpaceParams
from src.lower_bound.spectra import (
    BaseSpectrum, MeanPartner, PartnerSpectrum, ProportionPartner, VariancePartner
)
from src.lower_bound.transforms import FourierQuadrature, power_tail_cosine, sorted_breaks
from src.utils.errors import ConstructionFailedError, InvalidInputError, NumericalWarning

KINDS = ('variance', 'mean', 'proportion')

X_HALF_WIDTH = 60.0
X_STEP = 0.05
FREQ_POINTS = 2**16 + 1
TAIL_MARGIN = 4.0 # T >= tau_n + 4
GAUSS_CUTOFF = 9.0 # and T >= 9 / a, where exp(-a^2 T^2 / 2) underflows the mixtures
MAX_HALVINGS = 40
POSITIVITY_FLOOR = 1e-12 # relative to max h

ComplexFn = Callable[[np.ndarray], np.ndarray]


def spatial_grid(half_width: float = X_HALF_WIDTH, step: float = X_STEP) -> np.ndarray:
    count = int(round(2 * half_width / step)) + 1
    return np.linspace(-half_width, half_width, count)


def truncation_frequency(params: SpaceParams) -> float:
    return max(params.tau + TAIL_MARGIN, GAUSS_CUTOFF / params.a)


def is_nonnegative(h: np.ndarray, floor: float = POSITIVITY_FLOOR) -> bool:
    return float(h.min()) >= -floor * float(h.max())


def _gauss_cf(t, variance: float):
    return np.exp(-0.5 * variance * np.asarray(t) ** 2)


def _smoothed(parts, variance: float):
    """Spectrum parts multiplied by the N(0, variance) characteristic function."""
    def inner(t):
        even, odd = parts(t)
        g = _gauss_cf(t, variance)
        return g * even, g * odd
    return inner


def _shifted(parts, shift: float):
    """Spectrum parts of x -> w(x - shift)."""
    def inner(t):
        even, odd = parts(t)
        c, s = np.cos(shift * t), np.sin(shift * t)
        return even * c - odd * s, even * s + odd * c
    return inner


@dataclass(frozen=True)
class PerturbationPair:
    """
    Base perturbation w1 and its partner w2, as spectra and on the spatial grid.
    """
    base: BaseSpectrum
    partner: PartnerSpectrum
    t_grid: np.ndarray
    hat_w1: np.ndarray
    hat_w2: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    vartheta0: float
    theta0: float
    delta: float


@dataclass(frozen=True)
class DensityPair:
    """
    Two mixture densities tabulated on ``x`` and their characteristic
    functions on ``t_grid``. ``diff`` is f2 - f1, computed from its own
    spectrum so it keeps full relative precision where f1 and f2 agree.

    ``param_1`` and ``param_2`` are the target parameter of f1 and f2: the
    null variance, the null mean or the nonnull proportion, by ``kind``.
    """
    kind: str
    params: SpaceParams
    x: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    diff: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    t_grid: np.ndarray
    cf1: np.ndarray
    cf2: np.ndarray
    cf1_fn: ComplexFn
    cf2_fn: ComplexFn
    delta: float
    param_1: float
    param_2: float
    perturbation: PerturbationPair | None = None
    diagnostics: dict = field(default_factory=dict)

    def swapped(self) -> 'DensityPair':
        return replace(
            self,
            f1=self.f2, f2=self.f1, diff=-self.diff,
            h1=self.h2, h2=self.h1,
            cf1=self.cf2, cf2=self.cf1,
            cf1_fn=self.cf2_fn, cf2_fn=self.cf1_fn,
            param_1=self.param_2, param_2=self.param_1,
        )

    def self_pair(self) -> 'DensityPair':
        """f1 paired with itself (delta forced to 0)."""
        return replace(
            self,
            f2=self.f1, diff=np.zeros_like(self.f1), h2=self.h1,
            cf2=self.cf1, cf2_fn=self.cf1_fn,
            delta=0.0, param_2=self.param_1,
        )


def _partner(kind: str, base: BaseSpectrum, params: SpaceParams, vartheta0: float, theta0: float):
    eta, tau = params.eta, params.tau
    K = (1.0 - eta) / (vartheta0 * eta)
    if kind == 'variance':
        delta = theta0 * vartheta0 * eta * tau ** (-(params.alpha + 2.0))
        return VariancePartner(base, tau, K, delta), delta
    if kind == 'mean':
        delta = vartheta0 * theta0 * eta * tau ** (-(params.alpha + 1.0))
        return MeanPartner(base, tau, K, delta), delta
    delta = vartheta0 * theta0 * eta * tau ** (-params.alpha)
    return ProportionPartner(base, tau, eta, delta, vartheta0), delta


def _partner_bump(kind: str, x: np.ndarray, delta: float) -> np.ndarray:
    """Gaussian part of the partner's nonnull mixing density."""
    if kind == 'variance':
        return norm.pdf(x, scale=math.sqrt(1.0 - delta))
    return norm.pdf(x)


def _assemble(kind, params, quadrature, base, partner, vartheta0, delta):
    """Densities, their difference and the analytic characteristic functions."""
    x = quadrature.x
    a2, eta = params.a ** 2, params.eta
    spread = math.sqrt(a2 + 1.0)
    null = norm.pdf(x, scale=params.a)

    def hat_base(t):
        return np.exp(-0.5 * np.asarray(t) ** 2) + vartheta0 * base.value(t)

    def hat_partner(t, variance=1.0):
        return _gauss_cf(t, variance) + vartheta0 * partner.value(t)

    def cut(t):
        return 1.0 - smooth_cutoff_s2(t, params.tau)

    if kind == 'variance':
        a2_n = a2 + delta
        g1 = quadrature.inverse(_smoothed(base.parts, a2))
        g2 = quadrature.inverse(_smoothed(partner.parts, a2_n))
        f1 = (1 - eta) * null + eta * (norm.pdf(x, scale=spread) + vartheta0 * g1)
        f2 = (1 - eta) * norm.pdf(x, scale=math.sqrt(a2_n)) + eta * (norm.pdf(x, scale=spread) + vartheta0 * g2)

        def diff_parts(t):
            even = _gauss_cf(t, a2) * cut(t) * (
                (1 - eta) * np.expm1(-0.5 * delta * t * t) - eta * vartheta0 * base.parts(t)[0]
            )
            return even, np.zeros_like(t)

        def cf1(t):
            return _gauss_cf(t, a2) * ((1 - eta) + eta * hat_base(t))

        def cf2(t):
            return _gauss_cf(t, a2_n) * ((1 - eta) + eta * hat_partner(t, 1.0 - delta))

        return f1, f2, quadrature.inverse(diff_parts), cf1, cf2, a2, a2_n

    if kind == 'mean':
        half = 0.5 * delta
        g1_shift = quadrature.inverse(_shifted(_smoothed(base.parts, a2), half))
        g4_shift = quadrature.inverse(_shifted(_smoothed(partner.parts, a2), half))
        bump = norm.pdf(x, loc=half, scale=spread)
        f1 = (1 - eta) * null + eta * (bump + vartheta0 * g1_shift)
        f2 = (1 - eta) * norm.pdf(x, loc=delta, scale=params.a) + eta * (bump + vartheta0 * g4_shift)

        def diff_parts(t):
            g = _gauss_cf(t, a2) * cut(t)
            even = -eta * vartheta0 * g * base.parts(t)[0]
            odd = 2.0 * (1 - eta) * g * np.sin(half * t)
            return even, odd

        def cf1(t):
            return _gauss_cf(t, a2) * ((1 - eta) + eta * np.exp(1j * half * t) * hat_base(t))

        def cf2(t):
            return _gauss_cf(t, a2) * (
                (1 - eta) * np.exp(1j * delta * t) + eta * np.exp(1j * half * t) * hat_partner(t)
            )

        return f1, f2, quadrature.inverse(_shifted(diff_parts, half)), cf1, cf2, 0.0, delta

    g1 = quadrature.inverse(_smoothed(base.parts, a2))
    g6 = quadrature.inverse(_smoothed(partner.parts, a2))
    nonnull = norm.pdf(x, scale=spread)
    f1 = (1 - eta + delta) * null + (eta - delta) * (nonnull + vartheta0 * g1)
    f2 = (1 - eta) * null + eta * (nonnull + vartheta0 * g6)

    def diff_parts(t):
        even = -_gauss_cf(t, a2) * cut(t) * (
            -delta * np.expm1(-0.5 * t * t) + vartheta0 * (eta - delta) * base.parts(t)[0]
        )
        return even, np.zeros_like(t)

    def cf1(t):
        return _gauss_cf(t, a2) * ((1 - eta + delta) + (eta - delta) * hat_base(t))

    def cf2(t):
        return _gauss_cf(t, a2) * ((1 - eta) + eta * hat_partner(t))

    return f1, f2, quadrature.inverse(diff_parts), cf1, cf2, eta - delta, eta


def build_pair(
        kind: str,
        params: SpaceParams,
        vartheta0: float = 0.1,
        theta0: float = 0.1
    ) -> DensityPair:
    """
    Construct the least-favorable pair for one target parameter.

    vartheta0 is halved while h1 = phi + vartheta0 * w1 dips below zero;
    vartheta0 and theta0 are both halved while the partner's h does.

    Args:
        kind (str): 'variance', 'mean' or 'proportion'
        params (SpaceParams): Parameter space point
        vartheta0 (float): Starting perturbation size
        theta0 (float): Starting gap factor

    Returns:
        DensityPair: The tabulated pair with its perturbations and diagnostics

    Raises:
        InvalidInputError: Unknown kind or non-positive starting constants
        ConstructionFailedError: Still negative after 40 halvings
    """
    if kind not in KINDS:
        raise InvalidInputError(f'kind must be one of {KINDS}, got {kind!r}.')
    if not (vartheta0 > 0 and theta0 > 0):
        raise InvalidInputError('vartheta0 and theta0 must be positive.')

    t_max = truncation_frequency(params)
    x = spatial_grid()
    base = BaseSpectrum(params.k, params.alpha)
    breaks = sorted_breaks(
        base.breakpoints() + [params.tau + S2_START, params.tau + S2_END], t_max
    )
    quadrature = FourierQuadrature(x, breaks)
    # beyond T the base spectrum is exactly t^(-alpha)
    w1 = quadrature.inverse(base.parts) + power_tail_cosine(x, t_max, params.alpha) / math.pi
    phi = norm.pdf(x)

    halvings = 0
    start = (vartheta0, theta0)
    while True:
        partner, delta = _partner(kind, base, params, vartheta0, theta0)
        w2 = quadrature.inverse(partner.parts)
        h1 = phi + vartheta0 * w1
        h2 = _partner_bump(kind, x, delta) + vartheta0 * w2
        base_ok, partner_ok = is_nonnegative(h1), is_nonnegative(h2)
        if base_ok and partner_ok:
            break
        if halvings == MAX_HALVINGS:
            raise ConstructionFailedError(
                f'{kind} pair: h still negative after {MAX_HALVINGS} halvings '
                f'(vartheta0 = {vartheta0:.3e}, theta0 = {theta0:.3e}).'
            )
        halvings += 1
        vartheta0 /= 2.0
        if not partner_ok:
            theta0 /= 2.0

    if halvings:
        warnings.warn(
            f'{kind} pair: shrank (vartheta0, theta0) from {start} to '
            f'({vartheta0:.3e}, {theta0:.3e}) after {halvings} halvings.',
            NumericalWarning,
        )

    f1, f2, diff, cf1_fn, cf2_fn, param_1, param_2 = _assemble(
        kind, params, quadrature, base, partner, vartheta0, delta
    )
    t_grid = np.linspace(-t_max, t_max, FREQ_POINTS)
    perturbation = PerturbationPair(
        base=base,
        partner=partner,
        t_grid=t_grid,
        hat_w1=base.value(t_grid),
        hat_w2=partner.value(t_grid),
        w1=w1,
        w2=w2,
        vartheta0=vartheta0,
        theta0=theta0,
        delta=delta,
    )
    diagnostics = {
        'halvings': halvings,
        'vartheta0': vartheta0,
        'theta0': theta0,
        'eta': params.eta,
        'tau': params.tau,
        'k': params.k,
        'A': params.A,
        't_max': t_max,
        'hat_w1_at_zero': abs(complex(base.value(0.0))),
    }
    return DensityPair(
        kind=kind,
        params=params,
        x=x,
        f1=f1,
        f2=f2,
        diff=diff,
        h1=h1,
        h2=h2,
        t_grid=t_grid,
        cf1=cf1_fn(t_grid),
        cf2=cf2_fn(t_grid),
        cf1_fn=cf1_fn,
        cf2_fn=cf2_fn,
        delta=delta,
        param_1=param_1,
        param_2=param_2,
        perturbation=perturbation,
        diagnostics=diagnostics,
    )
