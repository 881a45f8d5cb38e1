"""Exact minimisation of E(x) over boundaries on a uniform candidate grid.

Both solvers price a segment with the same elementwise formula and add
segment costs left to right, so their energies agree bit for bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .approximation import BoundaryVector
from .signal import DiscretizedSignal

BRUTE_FORCE_LIMIT = 10**6


@dataclass(frozen=True)
class GridSpec:
    """Candidate boundaries ``a + k * delta / refine`` for ``k = 0 .. M * refine``."""

    refine: int = 1

    def __post_init__(self):
        if self.refine < 1:
            raise ValueError(f"grid refinement must be >= 1, got {self.refine}")


def _grid(signal: DiscretizedSignal, grid: GridSpec):
    G = signal.M * grid.refine
    x = signal.a + np.arange(G + 1) * (signal.delta / grid.refine)
    x[-1] = signal.b
    F1, F2 = signal.cumulative(x)
    return G, x, F1, F2


def _cost(x, F1, F2, i, j):
    """Squared error of the mean over ``[x[i], x[j]]`` for index arrays ``i < j``."""
    I1 = F1[j] - F1[i]
    I2 = F2[j] - F2[i]
    width = x[j] - x[i]
    u = I1 / width
    return np.maximum(I2 - 2.0 * u * I1 + u * u * width, 0.0)


def _result(signal, x, idx, total):
    return BoundaryVector(signal.a, signal.b, x[list(idx)]), float(total / signal.length)


def dp_optimal(
    signal: DiscretizedSignal, N: int, grid: GridSpec = GridSpec()
) -> tuple[BoundaryVector, float]:
    """Grid-restricted global minimiser by optimal-partitioning DP.

    ``O(N * G**2)`` time with ``G = M * refine``. Among equal totals the
    smallest last boundary wins at every stage.
    """
    G, x, F1, F2 = _grid(signal, grid)
    if N < 1 or N > G:
        raise ValueError(f"need 1 <= N <= {G} candidate segments, got N={N}")
    j = np.arange(1, G + 1)
    cost = np.full((G + 1, G + 1), np.inf)
    for i in range(G):
        cost[i, i + 1 :] = _cost(x, F1, F2, np.full(G - i, i), j[i:])

    # best[k][j]: cheapest k-segment cover of [x_0, x_j]
    best = cost[0].copy()
    back = []
    for _ in range(2, N + 1):
        total = best[:, None] + cost
        arg = np.argmin(total, axis=0)
        back.append(arg)
        best = total[arg, np.arange(G + 1)]
    idx = []
    end = G
    for arg in reversed(back):
        end = int(arg[end])
        idx.append(end)
    return _result(signal, x, reversed(idx), best[G])


def brute_force(
    signal: DiscretizedSignal, N: int, grid: GridSpec = GridSpec()
) -> tuple[BoundaryVector, float]:
    """Enumerate every strictly increasing boundary tuple on the grid.

    Returns the lexicographically smallest minimiser. Refuses when more than
    ``BRUTE_FORCE_LIMIT`` tuples would be needed.
    """
    G, x, F1, F2 = _grid(signal, grid)
    if N < 1 or N > G:
        raise ValueError(f"need 1 <= N <= {G} candidate segments, got N={N}")
    count = math.comb(G - 1, N - 1)
    if count > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force needs {count} tuples, more than the limit {BRUTE_FORCE_LIMIT}"
        )
    combos = np.array(list(itertools.combinations(range(1, G), N - 1)), dtype=np.int64)
    combos = combos.reshape(count, N - 1)
    ends = np.concatenate(
        [np.zeros((count, 1), np.int64), combos, np.full((count, 1), G, np.int64)], axis=1
    )
    total = _cost(x, F1, F2, ends[:, 0], ends[:, 1])
    for s in range(1, N):
        total = total + _cost(x, F1, F2, ends[:, s], ends[:, s + 1])
    k = int(np.argmin(total))
    return _result(signal, x, combos[k], total[k])
