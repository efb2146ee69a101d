"""
Perturbation spectra w-hat(t) = E(t) + i O(t), E even and real, O odd and
real, so that the spatial perturbation w(u) is real. Spectra are evaluated
on t >= 0; negative frequencies follow by symmetry.
"""
import math
from abc import ABC, abstractmethod
import numpy as np
from src.lower_bound.cutoffs import (
    S1_INNER, S1_OUTER, S2_END, S2_START, s1_jet, s2_jet, smooth_cutoff_s1,
    smooth_cutoff_s2, xi_base, xi_jet
)
from src.lower_bound.taylor import Jet


class PerturbationSpectrum(ABC):
    """Common interface of the base spectrum and its partners."""

    #: |u|^k w(u) -> leading_tail as u -> infinity
    leading_tail = 1.0

    def __init__(self, k: int, alpha: float):
        self.k = k
        self.alpha = alpha

    @abstractmethod
    def parts(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(E(t), O(t)) for t >= 0."""
        pass

    @abstractmethod
    def jets(self, t: np.ndarray, order: int) -> tuple[Jet, Jet]:
        """Taylor jets of (E, O) at t >= 0."""
        pass

    @property
    @abstractmethod
    def support_end(self) -> float | None:
        """Right end of the support, None when the spectrum has a power tail."""
        pass

    def breakpoints(self) -> list[float]:
        return [0.0, S1_INNER[0], S1_INNER[1], S1_OUTER[0], S1_OUTER[1]]

    def value(self, t) -> np.ndarray:
        """Complex spectrum on any real frequencies."""
        t = np.asarray(t, dtype=float)
        even, odd = self.parts(np.abs(t))
        return even + 1j * np.sign(t) * odd


class BaseSpectrum(PerturbationSpectrum):
    """w1-hat = s1 * xi; vanishes at t = 0 and decays like |t|^(-alpha)."""

    def parts(self, t):
        t = np.asarray(t, dtype=float)
        return smooth_cutoff_s1(t) * xi_base(t, self.k, self.alpha), np.zeros_like(t)

    def jets(self, t, order):
        even = s1_jet(t, order) * xi_jet(t, self.k, self.alpha, order)
        return even, Jet.constant(0.0, order, np.shape(t))

    @property
    def support_end(self):
        return None


class PartnerSpectrum(PerturbationSpectrum):
    """Spectra truncated by s2 at tau_n + 2/3."""

    def __init__(self, base: BaseSpectrum, tau_n: float):
        super().__init__(base.k, base.alpha)
        self.base = base
        self.tau_n = tau_n

    @property
    def support_end(self):
        return self.tau_n + S2_END

    def breakpoints(self):
        return super().breakpoints() + [self.tau_n + S2_START, self.tau_n + S2_END]


class VariancePartner(PartnerSpectrum):
    """w2-hat = s2 (exp(delta t^2 / 2) w1-hat + K (exp(delta t^2 / 2) - 1))."""

    def __init__(self, base, tau_n, K: float, delta: float):
        super().__init__(base, tau_n)
        self.K = K
        self.delta = delta

    def parts(self, t):
        t = np.asarray(t, dtype=float)
        e1, _ = self.base.parts(t)
        q = 0.5 * self.delta * t * t
        even = smooth_cutoff_s2(t, self.tau_n) * (np.exp(q) * e1 + self.K * np.expm1(q))
        return even, np.zeros_like(t)

    def jets(self, t, order):
        e1, zero = self.base.jets(t, order)
        T = Jet.variable(t, order)
        q = (0.5 * self.delta) * T * T
        even = s2_jet(t, self.tau_n, order) * (q.exp() * e1 + self.K * q.expm1())
        return even, zero


class MeanPartner(PartnerSpectrum):
    """w4-hat = s2 (w1-hat - 2 i K sin(delta t / 2))."""

    def __init__(self, base, tau_n, K: float, delta: float):
        super().__init__(base, tau_n)
        self.K = K
        self.delta = delta

    def parts(self, t):
        t = np.asarray(t, dtype=float)
        e1, _ = self.base.parts(t)
        s2 = smooth_cutoff_s2(t, self.tau_n)
        return s2 * e1, -2.0 * self.K * s2 * np.sin(0.5 * self.delta * t)

    def jets(self, t, order):
        e1, _ = self.base.jets(t, order)
        s2 = s2_jet(t, self.tau_n, order)
        odd = (-2.0 * self.K) * s2 * Jet.sin_affine(t, 0.5 * self.delta, order)
        return s2 * e1, odd


class ProportionPartner(PartnerSpectrum):
    """w6-hat = s2 (((eta - delta)/eta) w1-hat + (delta / (vartheta0 eta)) (1 - exp(-t^2/2)))."""

    def __init__(self, base, tau_n, eta: float, delta: float, vartheta0: float):
        super().__init__(base, tau_n)
        self.ratio = (eta - delta) / eta
        self.lift = delta / (vartheta0 * eta)
        self.leading_tail = self.ratio

    def parts(self, t):
        t = np.asarray(t, dtype=float)
        e1, _ = self.base.parts(t)
        even = smooth_cutoff_s2(t, self.tau_n) * (self.ratio * e1 - self.lift * np.expm1(-0.5 * t * t))
        return even, np.zeros_like(t)

    def jets(self, t, order):
        e1, zero = self.base.jets(t, order)
        T = Jet.variable(t, order)
        g = (-0.5 * T * T).expm1()
        even = s2_jet(t, self.tau_n, order) * (self.ratio * e1 - self.lift * g)
        return even, zero


def power_tail_derivative_coefficient(alpha: float, k: int) -> float:
    """d^k/dt^k t^(-alpha) = coefficient * t^(-alpha-k)."""
    return (-1) ** k * math.prod(alpha + j for j in range(k))
