"""
Two-group mixture models and their samplers.

Nulls are N(u0, sigma0^2). Nonnulls are split evenly between two components
with means drawn per observation from Uniform(l1, r1) and Uniform(l2, r2),
and either Gaussian noise of scale sigma or double-exponential noise of
scale tau.
"""
import math
from dataclasses import dataclass, field, replace
import numpy as np
from scipy.stats import norm
from src.estimation.types import NullParams, Sample
from src.utils.errors import InvalidInputError

GAUSSIAN = 'gaussian_two_component'
DOUBLE_EXP = 'double_exp_two_component'
NONNULL_KINDS = (GAUSSIAN, DOUBLE_EXP)

NULL_SHARE = 0.8 # block-dependent layout: null / first / second component shares
FIRST_SHARE = 0.1

SeedLike = int | np.random.SeedSequence | np.random.Generator


def make_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


@dataclass(frozen=True)
class MixtureSpec:
    """
    Generative description of a simulation model.

    Args:
        eps (float): Nonnull proportion in [0, 1]
        null (NullParams): Null mean and standard deviation
        nonnull_kind (str): 'gaussian_two_component' or 'double_exp_two_component'
        l1, r1, l2, r2 (float): Uniform laws of the two component means
        scale (float): sigma (Gaussian) or tau (double exponential)
    """
    eps: float = 0.2
    null: NullParams = field(default_factory=NullParams)
    nonnull_kind: str = GAUSSIAN
    l1: float = -0.9
    r1: float = -0.1
    l2: float = 0.5
    r2: float = 1.5
    scale: float = 1.2

    def __post_init__(self):
        if not (0.0 <= self.eps <= 1.0):
            raise InvalidInputError(f'eps must lie in [0, 1], got {self.eps}.')
        if self.nonnull_kind not in NONNULL_KINDS:
            raise InvalidInputError(f'Unknown nonnull kind {self.nonnull_kind!r}.')
        bounds = (self.l1, self.r1, self.l2, self.r2)
        if not all(math.isfinite(b) for b in bounds):
            raise InvalidInputError('Uniform bounds must be finite.')
        if not (self.l1 < self.r1 and self.l2 < self.r2):
            raise InvalidInputError('Uniform bounds need l < r.')
        if not self.scale > 0:
            raise InvalidInputError(f'scale must be positive, got {self.scale}.')

    @property
    def analytic_cf_available(self) -> bool:
        return True

    def with_updates(self, **changes) -> 'MixtureSpec':
        return replace(self, **changes)

    # ---- characteristic function ----

    def _uniform_cf(self, t, lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        # np.sinc(x) = sin(pi x) / (pi x)
        return np.exp(1j * mid * t) * np.sinc(half * t / np.pi)

    def _uniform_cf_deriv(self, t, lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        s = np.sinc(half * t / np.pi)
        bt = half * t
        with np.errstate(divide='ignore', invalid='ignore'):
            ds = np.where(
                np.abs(bt) > 1e-4,
                (bt * np.cos(bt) - np.sin(bt)) / (half * np.square(t)),
                -half * bt / 3.0 # series: -b^2 t / 3
            )
        return np.exp(1j * mid * t) * (1j * mid * s + ds)

    def _noise_cf(self, t):
        if self.nonnull_kind == GAUSSIAN:
            return np.exp(-0.5 * self.scale**2 * np.square(t))
        return 1.0 / (1.0 + self.scale**2 * np.square(t))

    def _noise_cf_deriv(self, t):
        if self.nonnull_kind == GAUSSIAN:
            return -self.scale**2 * t * self._noise_cf(t)
        return -2.0 * self.scale**2 * t / np.square(1.0 + self.scale**2 * np.square(t))

    def null_cf(self, t):
        u0, s0 = self.null.u0, self.null.sigma0
        return np.exp(1j * u0 * t - 0.5 * s0**2 * np.square(t))

    def cf(self, t):
        """phi(t) = (1 - eps) phi_null(t) + eps/2 (U1(t) + U2(t)) K(t)."""
        t = np.asarray(t, dtype=float)
        means = self._uniform_cf(t, self.l1, self.r1) + self._uniform_cf(t, self.l2, self.r2)
        return (1.0 - self.eps) * self.null_cf(t) + 0.5 * self.eps * means * self._noise_cf(t)

    def cf_deriv(self, t):
        t = np.asarray(t, dtype=float)
        u0, s0 = self.null.u0, self.null.sigma0
        d_null = (1j * u0 - s0**2 * t) * self.null_cf(t)
        means = self._uniform_cf(t, self.l1, self.r1) + self._uniform_cf(t, self.l2, self.r2)
        d_means = (self._uniform_cf_deriv(t, self.l1, self.r1)
                   + self._uniform_cf_deriv(t, self.l2, self.r2))
        noise = self._noise_cf(t)
        d_noise = self._noise_cf_deriv(t)
        return (1.0 - self.eps) * d_null + 0.5 * self.eps * (d_means * noise + means * d_noise)

    # ---- density ----

    def _component_density(self, x, lo, hi):
        s = self.scale
        if self.nonnull_kind == GAUSSIAN:
            return (norm.cdf((x - lo) / s) - norm.cdf((x - hi) / s)) / (hi - lo)
        # Laplace density averaged over a uniform location
        return (_laplace_cdf(x - lo, s) - _laplace_cdf(x - hi, s)) / (hi - lo)

    def density(self, x):
        """Closed-form marginal density of one observation."""
        x = np.asarray(x, dtype=float)
        f_null = norm.pdf(x, loc=self.null.u0, scale=self.null.sigma0)
        f_alt = 0.5 * (self._component_density(x, self.l1, self.r1)
                       + self._component_density(x, self.l2, self.r2))
        return (1.0 - self.eps) * f_null + self.eps * f_alt


def _laplace_cdf(y, tau):
    return np.where(y < 0, 0.5 * np.exp(np.minimum(y, 0) / tau),
                    1.0 - 0.5 * np.exp(-np.maximum(y, 0) / tau))


def model_density(spec: MixtureSpec, x) -> np.ndarray:
    return spec.density(x)


@dataclass(frozen=True)
class DependenceConfig:
    block_length: int = 0

    def __post_init__(self):
        if self.block_length < 0:
            raise InvalidInputError(f'Block length must be >= 0, got {self.block_length}.')


def _component_means(rng, spec: MixtureSpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    return rng.uniform(spec.l1, spec.r1, n), rng.uniform(spec.l2, spec.r2, n)


def gen_gaussian_mixture(spec: MixtureSpec, n: int, seed: SeedLike) -> Sample:
    """
    Draw n statistics from the Gaussian two-component mixture.
    Draw order is fixed (labels, component, means, noise), so a seed maps to
    one bit-identical sample.
    """
    if spec.nonnull_kind != GAUSSIAN:
        raise InvalidInputError('gen_gaussian_mixture needs a Gaussian spec.')
    rng = make_rng(seed)
    nonnull = rng.random(n) < spec.eps
    first = rng.random(n) < 0.5
    mu1, mu2 = _component_means(rng, spec, n)
    noise = rng.standard_normal(n)

    alt = np.where(first, mu1, mu2) + spec.scale * noise
    null = spec.null.u0 + spec.null.sigma0 * noise
    return Sample(np.where(nonnull, alt, null), nonnull)


def gen_double_exp_mixture(spec: MixtureSpec, n: int, seed: SeedLike) -> Sample:
    """Nulls Gaussian; nonnulls DE(mu_i, tau) by inverse CDF."""
    if spec.nonnull_kind != DOUBLE_EXP:
        raise InvalidInputError('gen_double_exp_mixture needs a double-exponential spec.')
    rng = make_rng(seed)
    nonnull = rng.random(n) < spec.eps
    first = rng.random(n) < 0.5
    mu1, mu2 = _component_means(rng, spec, n)
    u = rng.random(n)
    z = rng.standard_normal(n)

    mu = np.where(first, mu1, mu2)
    tau = spec.scale
    with np.errstate(divide='ignore'):
        laplace = np.where(
            u < 0.5,
            mu + tau * np.log(2.0 * u),
            mu - tau * np.log(2.0 * (1.0 - u))
        )
    null = spec.null.u0 + spec.null.sigma0 * z
    return Sample(np.where(nonnull, laplace, null), nonnull)


def gen_block_dependent(spec: MixtureSpec, n: int, block_length: int, seed: SeedLike) -> Sample:
    """
    Block-dependent layout: z_j = (L + 1)^(-1/2) sum_{l=j}^{j+L} w_l. The first
    80% of entries are null z_j, the next 10% mu_1j + sigma z_j and the last
    10% mu_2j + sigma z_j. Null parameters of ``spec`` rescale the null block.
    """
    DependenceConfig(block_length)
    rng = make_rng(seed)
    w = rng.standard_normal(n + block_length)
    z = np.convolve(w, np.ones(block_length + 1), mode='valid') / math.sqrt(block_length + 1)

    n_null = int(round(NULL_SHARE * n))
    n_first = int(round((NULL_SHARE + FIRST_SHARE) * n)) - n_null
    n_second = n - n_null - n_first
    mu1 = rng.uniform(spec.l1, spec.r1, n_first)
    mu2 = rng.uniform(spec.l2, spec.r2, n_second)

    x = np.empty(n)
    x[:n_null] = spec.null.u0 + spec.null.sigma0 * z[:n_null]
    x[n_null:n_null + n_first] = mu1 + spec.scale * z[n_null:n_null + n_first]
    x[n_null + n_first:] = mu2 + spec.scale * z[n_null + n_first:]
    truth = np.arange(n) >= n_null
    return Sample(x, truth)


def generate(spec: MixtureSpec, n: int, seed: SeedLike, block_length: int | None = None) -> Sample:
    if block_length is not None:
        return gen_block_dependent(spec, n, block_length, seed)
    if spec.nonnull_kind == DOUBLE_EXP:
        return gen_double_exp_mixture(spec, n, seed)
    return gen_gaussian_mixture(spec, n, seed)
