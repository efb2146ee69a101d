"""
Quadrature for the cosine/sine transforms of the perturbation spectra.

A real function w with spectrum E(t) + i O(t) (E even, O odd) is recovered as

    w(u) = (1/pi) * integral_0^inf [E(t) cos(tu) + O(t) sin(tu)] dt.
"""
import math
import warnings
from collections.abc import Callable, Sequence
import numpy as np
from scipy.integrate import quad, trapezoid
from src.utils.errors import NumericalWarning

PANEL_WIDTH = 0.02
GL_ORDER = 10
CHUNK_ROWS = 256
MOMENT_ORDER = 8
MOMENT_CHUNK = 50_000
TAIL_EPSABS = 1e-13 # QAWF honours only the absolute tolerance

SpectrumParts = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def gauss_legendre_nodes(
        breaks: Sequence[float],
        panel_width: float = PANEL_WIDTH,
        order: int = GL_ORDER
    ) -> tuple[np.ndarray, np.ndarray]:
    """
    Composite Gauss-Legendre rule on [breaks[0], breaks[-1]]. Every interval
    between consecutive breakpoints is split into panels no wider than
    ``panel_width``, so panel edges always land on the breakpoints.
    """
    ref_nodes, ref_weights = np.polynomial.legendre.leggauss(order)
    edges = []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi <= lo:
            continue
        count = max(1, math.ceil((hi - lo) / panel_width))
        edges.append(np.linspace(lo, hi, count + 1)[:-1])
    left = np.concatenate(edges)
    right = np.append(left[1:], breaks[-1])
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = (mid[:, None] + half[:, None] * ref_nodes[None, :]).ravel()
    weights = (half[:, None] * ref_weights[None, :]).ravel()
    return nodes, weights


def sorted_breaks(points: Sequence[float], end: float) -> list[float]:
    """Breakpoints clipped to [0, end], deduplicated and sorted."""
    kept = {0.0, float(end)}
    kept.update(float(p) for p in points if 0.0 < p < end)
    return sorted(kept)


class FourierQuadrature:
    """
    Inverse cosine/sine transform onto a fixed spatial grid.

    Args:
        x (np.ndarray): Spatial grid
        breaks (Sequence[float]): Frequency breakpoints; the last one is the
            truncation frequency T
    """

    def __init__(
            self,
            x: np.ndarray,
            breaks: Sequence[float],
            panel_width: float = PANEL_WIDTH,
            order: int = GL_ORDER
        ):
        self.x = np.asarray(x, dtype=float)
        self.t_max = float(breaks[-1])
        self.nodes, self.weights = gauss_legendre_nodes(breaks, panel_width, order)

    def inverse(self, parts: SpectrumParts) -> np.ndarray:
        """(1/pi) * integral_0^T [E cos(tx) + O sin(tx)] dt on the grid."""
        even, odd = parts(self.nodes)
        even = even * self.weights
        odd = odd * self.weights
        has_odd = bool(np.any(odd))
        out = np.empty_like(self.x)
        for start in range(0, self.x.size, CHUNK_ROWS):
            phase = np.outer(self.x[start:start + CHUNK_ROWS], self.nodes)
            block = np.cos(phase) @ even
            if has_odd:
                block += np.sin(phase) @ odd
            out[start:start + CHUNK_ROWS] = block
        return out / math.pi


def power_tail_cosine(
        u: np.ndarray,
        start: float,
        exponent: float,
        coefficient: float = 1.0
    ) -> np.ndarray:
    """
    integral_start^inf coefficient * t^(-exponent) cos(t u) dt, for exponent > 1.

    Uses QUADPACK's Fourier integral routine; the value depends on |u| only.
    """
    u = np.abs(np.asarray(u, dtype=float))
    unique, inverse = np.unique(u, return_inverse=True)
    values = np.empty_like(unique)
    for i, freq in enumerate(unique):
        if freq == 0.0:
            values[i] = start ** (1.0 - exponent) / (exponent - 1.0)
            continue
        result = quad(
            lambda s: s ** (-exponent), start, np.inf,
            weight='cos', wvar=freq, epsabs=TAIL_EPSABS, limlst=100, full_output=1,
        )
        if len(result) > 3:
            warnings.warn(f'Fourier tail integral at u = {freq}: {result[3]}', NumericalWarning)
        values[i] = result[0]
    return coefficient * values[inverse].reshape(u.shape)


def forward_transform(x: np.ndarray, f: np.ndarray, t: Sequence[float]) -> np.ndarray:
    """Trapezoid approximation of integral f(x) exp(itx) dx at each t."""
    x = np.asarray(x, dtype=float)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return np.array([trapezoid(f * np.exp(1j * s * x), x) for s in t])


def oscillatory_moments(
        derivative: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
        breaks: Sequence[float],
        u: np.ndarray,
        nodes_per_panel: int = MOMENT_ORDER,
        chunk: int = MOMENT_CHUNK
    ) -> tuple[np.ndarray, np.ndarray]:
    """
    integral of D_E(t) cos(tu) dt and D_O(t) sin(tu) dt over [breaks[0], breaks[-1]].

    ``derivative`` maps frequencies to the pair (D_E, D_O). Panels are kept
    below half a period of the fastest oscillation, and nodes are processed in
    chunks so memory stays bounded for large u.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    width = min(PANEL_WIDTH, math.pi / float(u.max()))
    nodes, weights = gauss_legendre_nodes(breaks, width, nodes_per_panel)
    cos_part = np.zeros_like(u)
    sin_part = np.zeros_like(u)
    for start in range(0, nodes.size, chunk):
        t = nodes[start:start + chunk]
        w = weights[start:start + chunk]
        d_even, d_odd = derivative(t)
        phase = np.outer(u, t)
        cos_part += np.cos(phase) @ (d_even * w)
        if np.any(d_odd):
            sin_part += np.sin(phase) @ (d_odd * w)
    return cos_part, sin_part
