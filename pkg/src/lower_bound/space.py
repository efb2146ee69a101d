import math
from dataclasses import dataclass, replace
from scipy.special import gamma as gamma_fn
from src.utils.errors import InvalidInputError

A_MARGIN = 1.1 # default A as a multiple of its lower bound


def absolute_moment(q: float) -> float:
    """E|Z|^q for Z ~ N(0, 1)."""
    return 2.0 ** (q / 2.0) * gamma_fn((q + 1.0) / 2.0) / math.sqrt(math.pi)


def smallest_even_above(x: float) -> int:
    return 2 * math.floor(x / 2.0) + 2


@dataclass(frozen=True)
class SpaceParams:
    """
    Parameter space of the lower-bound constructions.

    Args:
        alpha (float): Tail exponent of the base spectrum, > 2
        beta (float): Sparsity exponent in [0, 1/2)
        eps0 (float): Proportion scale in (0, 1)
        q (float): Moment order, > 0
        a (float): Null standard deviation of the mixtures, > 0
        A (float | None): Moment bound; defaults to 1.1 times its lower bound
        n (int): Sample size
    """
    alpha: float = 3.0
    beta: float = 0.25
    eps0: float = 0.5
    q: float = 2.0
    a: float = 1.0
    A: float | None = None
    n: int = 10_000

    def __post_init__(self):
        if not self.alpha > 2:
            raise InvalidInputError(f'alpha must exceed 2, got {self.alpha}.')
        if not (0.0 <= self.beta < 0.5):
            raise InvalidInputError(f'beta must lie in [0, 1/2), got {self.beta}.')
        if not (0.0 < self.eps0 < 1.0):
            raise InvalidInputError(f'eps0 must lie in (0, 1), got {self.eps0}.')
        if not (self.q > 0 and self.a > 0):
            raise InvalidInputError('q and a must be positive.')
        if self.n < 2:
            raise InvalidInputError(f'n must be at least 2, got {self.n}.')
        if self.A is None:
            object.__setattr__(self, 'A', A_MARGIN * self.A_lower_bound)
        elif not self.A > self.A_lower_bound:
            raise InvalidInputError(
                f'A = {self.A} must exceed sqrt(a^2 + 1) M_q^(1/q) = {self.A_lower_bound:.6f}.'
            )

    @property
    def A_lower_bound(self) -> float:
        return math.sqrt(self.a**2 + 1.0) * absolute_moment(self.q) ** (1.0 / self.q)

    @property
    def eta(self) -> float:
        return self.eps0 * self.n ** (-self.beta)

    @property
    def tau(self) -> float:
        return math.sqrt(3.0 * math.log(self.n)) / self.a

    @property
    def k(self) -> int:
        return smallest_even_above(2.0 * self.q + 1.0)

    def with_n(self, n: int) -> 'SpaceParams':
        return replace(self, n=n)
