from dataclasses import dataclass, field
from typing import Callable
import numpy as np
from src.utils.errors import InvalidInputError


@dataclass(frozen=True)
class Sample:
    """
    Test statistics X_1..X_n with optional ground truth.

    Args:
        values (np.ndarray): Finite real statistics, length n >= 1
        truth (np.ndarray | None): Boolean nonnull indicators, same length
    """
    values: np.ndarray
    truth: np.ndarray | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size == 0:
            raise InvalidInputError('Sample must contain at least one value.')
        if not np.all(np.isfinite(values)):
            raise InvalidInputError('Sample values must be finite.')
        object.__setattr__(self, 'values', values)

        if self.truth is not None:
            truth = np.asarray(self.truth, dtype=bool).ravel()
            if truth.size != values.size:
                raise InvalidInputError(
                    f'truth has length {truth.size}, expected {values.size}.'
                )
            object.__setattr__(self, 'truth', truth)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def standardized(self, u0: float, sigma0: float) -> 'Sample':
        return Sample((self.values - u0) / sigma0, self.truth)


@dataclass(frozen=True)
class NullParams:
    u0: float = 0.0
    sigma0: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.u0) and np.isfinite(self.sigma0)):
            raise InvalidInputError('Null parameters must be finite.')
        if self.sigma0 <= 0:
            raise InvalidInputError(f'sigma0 must be positive, got {self.sigma0}.')


@dataclass(frozen=True)
class FrequencyThreshold:
    t_hat: float
    gamma: float
    modulus_at_t: float


@dataclass(frozen=True)
class ProportionEstimate:
    """
    Proportion estimate. ``gamma`` and ``t_used`` are None for baselines
    that are not frequency-based.
    """
    raw: float
    clamped: float
    gamma: float | None = None
    t_used: float | None = None

    @classmethod
    def from_raw(cls, raw: float, gamma: float | None = None,
                 t_used: float | None = None) -> 'ProportionEstimate':
        return cls(float(raw), min(1.0, max(0.0, float(raw))), gamma, t_used)


@dataclass(frozen=True)
class PValueVector:
    values: np.ndarray
    sidedness: str = 'two-sided'

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if np.any(~np.isfinite(values)) or np.any((values < 0) | (values > 1)):
            raise InvalidInputError('p-values must lie in [0, 1].')
        object.__setattr__(self, 'values', values)

    @property
    def n(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class CfHandle:
    """A characteristic-function-like curve and its exact derivative."""
    value: Callable[[float], complex]
    deriv: Callable[[float], complex]
    label: str = field(default='', compare=False)
