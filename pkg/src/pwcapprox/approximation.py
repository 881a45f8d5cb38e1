"""Boundary vectors, the mean-value approximation u and its energy E(x)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signal import DiscretizedSignal


@dataclass(frozen=True, eq=False)
class BoundaryVector:
    """Interior segment boundaries ``x_1 <= ... <= x_{N-1}`` on ``[a, b]``.

    Ties and endpoint-touching values are allowed; they yield zero-width
    segments.
    """

    a: float
    b: float
    boundaries: np.ndarray

    def __post_init__(self):
        x = np.array(self.boundaries, dtype=float).ravel()
        if not self.b > self.a:
            raise ValueError(f"empty domain [{self.a}, {self.b}]")
        if x.size and (x[0] < self.a or x[-1] > self.b or np.any(np.diff(x) < 0)):
            raise ValueError("boundaries must be nondecreasing inside [a, b]")
        x.setflags(write=False)
        object.__setattr__(self, "boundaries", x)

    @classmethod
    def from_unsorted(cls, a: float, b: float, x) -> "BoundaryVector":
        """Sort and clamp an arbitrary point cloud into a valid vector."""
        x = np.clip(np.sort(np.asarray(x, dtype=float).ravel()), a, b)
        return cls(a, b, x)

    @classmethod
    def uniform(cls, a: float, b: float, N: int) -> "BoundaryVector":
        return cls(a, b, a + np.arange(1, N) * ((b - a) / N))

    @property
    def N(self) -> int:
        """Number of segments."""
        return self.boundaries.size + 1

    def edges(self) -> np.ndarray:
        """``x_0 = a, x_1, ..., x_{N-1}, x_N = b``."""
        return np.concatenate([[self.a], self.boundaries, [self.b]])

    def widths(self) -> np.ndarray:
        return np.diff(self.edges())

    def is_strict(self) -> bool:
        return bool(np.all(self.widths() > 0))

    def __len__(self) -> int:
        return self.boundaries.size

    def __repr__(self) -> str:
        return f"BoundaryVector(a={self.a}, b={self.b}, boundaries={self.boundaries.tolist()})"


@dataclass(frozen=True, eq=False)
class PiecewiseApprox:
    boundaries: BoundaryVector
    segment_values: np.ndarray
    segment_errors: np.ndarray
    mse: float

    @property
    def N(self) -> int:
        return self.segment_values.size


def _as_boundaries(signal: DiscretizedSignal, x) -> BoundaryVector:
    if isinstance(x, BoundaryVector):
        if x.a != signal.a or x.b != signal.b:
            raise ValueError(
                f"boundary domain [{x.a}, {x.b}] does not match signal domain "
                f"[{signal.a}, {signal.b}]"
            )
        return x
    x = np.sort(np.asarray(x, dtype=float).ravel())
    if x.size and (x[0] < signal.a or x[-1] > signal.b):
        raise ValueError(f"boundaries outside signal domain [{signal.a}, {signal.b}]")
    return BoundaryVector(signal.a, signal.b, x)


def _segment_moments(signal: DiscretizedSignal, edges: np.ndarray):
    F1, F2 = signal.cumulative(edges)
    return np.diff(F1, axis=-1), np.diff(F2, axis=-1), np.diff(edges, axis=-1)


def _segment_errors(I1, I2, width):
    positive = width > 0
    u = np.divide(I1, width, out=np.zeros_like(I1), where=positive)
    err = I2 - 2.0 * u * I1 + u * u * width
    return u, np.where(positive, np.maximum(err, 0.0), 0.0)


def build_approximation(signal: DiscretizedSignal, x) -> PiecewiseApprox:
    """Mean-value piecewise-constant approximation for boundaries ``x``.

    A zero-width segment takes the value of the cell it sits in and has
    zero error.
    """
    bv = _as_boundaries(signal, x)
    edges = bv.edges()
    I1, I2, width = _segment_moments(signal, edges)
    u, err = _segment_errors(I1, I2, width)
    flat = width <= 0
    if np.any(flat):
        u[flat] = signal.values[signal.cell_index(edges[:-1][flat])]
    return PiecewiseApprox(bv, u, err, float(err.sum() / signal.length))


def energy(signal: DiscretizedSignal, x) -> float:
    """``E(x) = sum(e_i) / (b - a)``; ``x`` is sorted before evaluation."""
    return build_approximation(signal, x).mse


def energies(signal: DiscretizedSignal, X: np.ndarray, presorted: bool = False) -> np.ndarray:
    """Energy of every row of ``X`` (shape ``(n, N-1)``).

    Rows are sorted and clamped to ``[a, b]`` first unless ``presorted`` says
    they already are.
    """
    X = np.asarray(X, dtype=float)
    if not presorted:
        X = np.clip(np.sort(X, axis=-1), signal.a, signal.b)
    shape = X.shape[:-1] + (1,)
    edges = np.concatenate([np.full(shape, signal.a), X, np.full(shape, signal.b)], axis=-1)
    _, err = _segment_errors(*_segment_moments(signal, edges))
    return err.sum(axis=-1) / signal.length


def segment_error_report(approx: PiecewiseApprox) -> tuple[float, float, float]:
    """``(min e_i, max e_i, max/min)`` over positive-width segments.

    The ratio is ``math.inf`` when the smallest error is zero.
    """
    err = approx.segment_errors[approx.boundaries.widths() > 0]
    lo, hi = float(err.min()), float(err.max())
    return lo, hi, hi / lo if lo > 0 else math.inf


def linearized_error(h: float, slope: float) -> float:
    """Segment error ``h**3 * slope**2 / 12`` of a linear piece of width ``h``."""
    if not h > 0:
        raise ValueError(f"segment width must be positive, got {h}")
    return h**3 * slope**2 / 12.0


def exact_error_factor(eta: float) -> float:
    """``(1 - 3 eta + 3 eta**2) / 3``; equals 1/12 at eta = 1/2 and 1/3 at the ends."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    return (1.0 - 3.0 * eta + 3.0 * eta * eta) / 3.0


def step_table(approx: PiecewiseApprox) -> list[tuple[float, float]]:
    """Step coordinates for a ``const plot``: each segment start with its value, then ``(b, u_last)``.

    Zero-width segments are skipped.
    """
    edges = approx.boundaries.edges()
    rows = [
        (float(edges[i]), float(approx.segment_values[i]))
        for i in range(approx.N)
        if edges[i + 1] > edges[i]
    ]
    rows.append((float(edges[-1]), rows[-1][1]))
    return rows
