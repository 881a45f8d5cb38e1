"""Dar-Bruckstein sampling: every segment gets the same mass of |f'|^(2/3)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .approximation import BoundaryVector
from .signal import DiscretizedSignal


@dataclass(frozen=True, eq=False)
class DerivativeDensity:
    """Cumulative integral of ``|f'|**(2/3)`` sampled at the M + 1 cell edges.

    ``cum`` is piecewise linear between edges.
    """

    a: float
    b: float
    cum: np.ndarray

    @property
    def total(self) -> float:
        return float(self.cum[-1])

    @property
    def M(self) -> int:
        return self.cum.size - 1

    def edges(self) -> np.ndarray:
        return self.a + np.arange(self.M + 1) * ((self.b - self.a) / self.M)

    def mass_at(self, x) -> np.ndarray:
        """Cumulative density from ``a`` to ``x``."""
        return np.interp(x, self.edges(), self.cum)


def derivative_density(signal: DiscretizedSignal) -> DerivativeDensity:
    """Estimate ``|f'|**(2/3)`` by forward differences between adjacent cells.

    The difference across edge ``j + 1`` is spread over cell ``j``; the last
    cell repeats the final difference so that a linear ramp has constant
    density. A jump of height J contributes ``|J|**(2/3) * delta**(1/3)``,
    which depends on the grid.
    """
    if signal.M < 2:
        raise ValueError("need at least two cells to estimate a derivative")
    delta = signal.delta
    slope = np.diff(signal.values) / delta
    mass = np.cbrt(slope * slope) * delta
    cum = np.zeros(signal.M + 1)
    np.cumsum(np.append(mass, mass[-1]), out=cum[1:])
    cum.setflags(write=False)
    return DerivativeDensity(signal.a, signal.b, cum)


def db_boundaries(density: DerivativeDensity, N: int) -> BoundaryVector:
    """Positions where the cumulative density crosses ``i * total / N``.

    Crossings are interpolated linearly inside a cell; on a flat stretch the
    leftmost point is taken. A zero total falls back to uniform boundaries.
    """
    if N < 1:
        raise ValueError(f"segment count must be >= 1, got {N}")
    a, b = density.a, density.b
    if density.total <= 0:
        return BoundaryVector.uniform(a, b, N)
    cum = density.cum
    edges = density.edges()
    levels = density.total * np.arange(1, N) / N
    k = np.searchsorted(cum, levels, side="left")
    k = np.clip(k, 1, density.M)
    lo, hi = cum[k - 1], cum[k]
    frac = np.divide(levels - lo, hi - lo, out=np.zeros_like(levels), where=hi > lo)
    x = edges[k - 1] + frac * (edges[k] - edges[k - 1])
    return BoundaryVector(a, b, np.clip(np.maximum.accumulate(x), a, b))


def dar_bruckstein(signal: DiscretizedSignal, N: int) -> BoundaryVector:
    """Dar-Bruckstein boundary vector with ``N`` segments."""
    if N == 1:
        return BoundaryVector(signal.a, signal.b, [])
    return db_boundaries(derivative_density(signal), N)
