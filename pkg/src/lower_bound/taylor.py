"""
Truncated Taylor expansions ("jets") evaluated at many points at once.

A jet of order m at points t holds coefficients c_0..c_m with
f(t + h) = sum_j c_j h^j + O(h^(m+1)); the j-th derivative is j! c_j.
"""
import math
import numpy as np
from scipy.special import expit


class Jet:

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @classmethod
    def variable(cls, t, order: int, slope: float = 1.0) -> 'Jet':
        """Jet of the affine map h -> t + slope * h."""
        t = np.asarray(t, dtype=float)
        c = np.zeros((order + 1,) + t.shape)
        c[0] = t
        if order >= 1:
            c[1] = slope
        return cls(c)

    @classmethod
    def constant(cls, value, order: int, shape=()) -> 'Jet':
        c = np.zeros((order + 1,) + tuple(shape))
        c[0] = value
        return cls(c)

    @classmethod
    def power(cls, t, p: float, order: int) -> 'Jet':
        """Jet of s -> s^p at t > 0 (generalized binomial coefficients)."""
        t = np.asarray(t, dtype=float)
        c = np.zeros((order + 1,) + t.shape)
        c[0] = t ** p
        for j in range(1, order + 1):
            c[j] = c[j - 1] * (p - j + 1) / (j * t)
        return cls(c)

    @classmethod
    def monomial(cls, t, power: int, order: int) -> 'Jet':
        """Jet of s -> s^power for an integer power >= 0, valid at t = 0."""
        t = np.asarray(t, dtype=float)
        c = np.zeros((order + 1,) + t.shape)
        for j in range(min(order, power) + 1):
            c[j] = math.comb(power, j) * t ** (power - j)
        return cls(c)

    @classmethod
    def sin_affine(cls, t, slope: float, order: int) -> 'Jet':
        """Jet of s -> sin(slope * s) at t."""
        t = np.asarray(t, dtype=float)
        c = np.zeros((order + 1,) + t.shape)
        phase = slope * t
        for j in range(order + 1):
            c[j] = slope ** j * np.sin(phase + 0.5 * j * math.pi) / math.factorial(j)
        return cls(c)

    def derivative(self, m: int) -> np.ndarray:
        return math.factorial(m) * self.c[m]

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Jet):
            return other.c
        out = np.zeros_like(self.c)
        out[0] = other
        return out

    def __add__(self, other):
        return Jet(self.c + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.c - self._coerce(other))

    def __rsub__(self, other):
        return Jet(self._coerce(other) - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * other)
        a, b = self.c, other.c
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
        for k in range(out.shape[0]):
            for j in range(k + 1):
                out[k] += a[j] * b[k - j]
        return Jet(out)

    __rmul__ = __mul__

    def exp(self) -> 'Jet':
        a = self.c
        e = np.zeros_like(a)
        e[0] = np.exp(a[0])
        for k in range(1, a.shape[0]):
            for j in range(1, k + 1):
                e[k] += j * a[j] * e[k - j]
            e[k] /= k
        return Jet(e)

    def expm1(self) -> 'Jet':
        out = self.exp()
        out.c[0] = np.expm1(self.c[0])
        return out

    def reciprocal(self) -> 'Jet':
        a = self.c
        r = np.zeros_like(a)
        r[0] = 1.0 / a[0]
        for k in range(1, a.shape[0]):
            acc = np.zeros_like(a[0])
            for j in range(1, k + 1):
                acc += a[j] * r[k - j]
            r[k] = -r[0] * acc
        return Jet(r)

    def logistic(self) -> 'Jet':
        """expit of the jet, from y' = (y - y^2) z'."""
        z = self.c
        y = np.zeros_like(z)
        p = np.zeros_like(z)
        y[0] = expit(z[0])
        for k in range(z.shape[0] - 1):
            square = np.zeros_like(z[0])
            for i in range(k + 1):
                square += y[i] * y[k - i]
            p[k] = y[k] - square
            acc = np.zeros_like(z[0])
            for j in range(k + 1):
                acc += p[j] * (k + 1 - j) * z[k + 1 - j]
            y[k + 1] = acc / (k + 1)
        return Jet(y)

    def select(self, mask: np.ndarray, other: 'Jet') -> 'Jet':
        """Pointwise choice: ``other`` where mask holds, self elsewhere."""
        return Jet(np.where(mask, other.c, self.c))
