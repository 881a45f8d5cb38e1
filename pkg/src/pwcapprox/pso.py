"""SPSO-2011 particle swarm minimising E(x) directly.

Particles live in the box ``[a, b]**(N-1)``. After every move a position is
sorted and its velocity permuted along with it, so coordinate ``j`` means
"the j-th boundary" for every particle and the swarm's averaging steps
combine like with like. Updates are synchronous: all particles move, then
all bests are refreshed in index order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .approximation import BoundaryVector, energies
from .signal import DiscretizedSignal

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SwarmConfig:
    n: int = 1000
    K: int = 20
    c1: float = 0.5 + LN2
    c2: float = 0.5 + LN2
    omega: float = 1.0 / (2.0 * LN2)
    max_iter: int = 10_000
    stagnation_reset: int = 15
    energy_tolerance: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"swarm size must be >= 1, got {self.n}")
        if not 1 <= self.K <= self.n:
            raise ValueError(f"neighbourhood size must lie in [1, n], got {self.K}")
        if min(self.c1, self.c2, self.omega) < 0:
            raise ValueError("c1, c2 and omega must be nonnegative")
        if self.max_iter < 0 or self.stagnation_reset < 1:
            raise ValueError("max_iter must be >= 0 and stagnation_reset >= 1")
        if self.energy_tolerance < 0:
            raise ValueError("energy_tolerance must be >= 0")


class Particle(NamedTuple):
    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_energy: float
    energy: float


@dataclass(eq=False)
class SwarmState:
    """Row ``i`` of each array belongs to particle ``i``.

    ``links[i]`` lists the informers of particle ``i``: itself first, then
    ``K`` random particles.
    """

    positions: np.ndarray
    velocities: np.ndarray
    energies: np.ndarray
    best_positions: np.ndarray
    best_energies: np.ndarray
    links: np.ndarray
    global_best: np.ndarray
    global_best_energy: float
    rng: np.random.Generator
    iteration: int = 0
    stagnation: int = 0
    trace: list = field(default_factory=list)

    def particle(self, i: int) -> Particle:
        return Particle(
            self.positions[i],
            self.velocities[i],
            self.best_positions[i],
            float(self.best_energies[i]),
            float(self.energies[i]),
        )


def sample_ball(rng: np.random.Generator, centres: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """One uniform point from each closed Euclidean ball ``B(centres[i], radii[i])``."""
    centres = np.asarray(centres, dtype=float)
    n, d = centres.shape
    radii = np.asarray(radii, dtype=float)
    if d == 1:
        return centres + (radii * rng.uniform(-1.0, 1.0, n))[:, None]
    direction = rng.standard_normal((n, d))
    norm = np.linalg.norm(direction, axis=1, keepdims=True)
    # a zero draw has probability zero; guard anyway
    norm[norm == 0] = 1.0
    scale = radii * rng.random(n) ** (1.0 / d)
    return centres + direction / norm * scale[:, None]


def _random_links(rng: np.random.Generator, n: int, K: int) -> np.ndarray:
    return np.concatenate([np.arange(n)[:, None], rng.integers(0, n, size=(n, K))], axis=1)


def _sort_rows(X: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(X, axis=1, kind="stable")
    return np.take_along_axis(X, order, 1), np.take_along_axis(V, order, 1)


def init_swarm(signal: DiscretizedSignal, N: int, config: SwarmConfig) -> SwarmState:
    if N < 2:
        raise ValueError(f"a swarm needs N >= 2 segments, got {N}")
    rng = np.random.default_rng(config.seed)
    a, b = signal.a, signal.b
    shape = (config.n, N - 1)
    X = rng.uniform(a, b, shape)
    V = (rng.uniform(a, b, shape) - X) / 2.0
    X, V = _sort_rows(X, V)
    E = energies(signal, X)
    links = _random_links(rng, config.n, config.K)
    g = int(np.argmin(E))
    return SwarmState(
        positions=X,
        velocities=V,
        energies=E,
        best_positions=X.copy(),
        best_energies=E.copy(),
        links=links,
        global_best=X[g].copy(),
        global_best_energy=float(E[g]),
        rng=rng,
        trace=[float(E[g])],
    )


def step(state: SwarmState, signal: DiscretizedSignal, config: SwarmConfig) -> SwarmState:
    """Advance every particle by one iteration; ``state`` is updated in place and returned."""
    rng = state.rng
    X, V, P = state.positions, state.velocities, state.best_positions
    n, d = X.shape
    idx = np.arange(n)

    # self sits first in each row, so argmin keeps it on ties
    informer = state.links[idx, np.argmin(state.best_energies[state.links], axis=1)]
    L = P[informer]
    p = X + config.c1 * rng.random((n, d)) * (P - X)
    l = X + config.c2 * rng.random((n, d)) * (L - X)
    own = (informer == idx)[:, None]
    G = np.where(own, (X + p) / 2.0, (X + p + l) / 3.0)
    H = sample_ball(rng, G, np.linalg.norm(G - X, axis=1))

    V = config.omega * V + H - X
    X = X + V
    out = (X < signal.a) | (X > signal.b)
    X = np.clip(X, signal.a, signal.b)
    V = np.where(out, -0.5 * V, V)
    X, V = _sort_rows(X, V)

    E = energies(signal, X, presorted=True)
    better = E < state.best_energies
    P[better] = X[better]
    state.best_energies[better] = E[better]

    g = int(np.argmin(state.best_energies))
    if state.best_energies[g] < state.global_best_energy:
        state.global_best = P[g].copy()
        state.global_best_energy = float(state.best_energies[g])
        state.stagnation = 0
    else:
        state.stagnation += 1
        if state.stagnation >= config.stagnation_reset:
            state.links = _random_links(rng, n, config.K)
            state.stagnation = 0

    state.positions, state.velocities, state.energies = X, V, E
    state.iteration += 1
    state.trace.append(state.global_best_energy)
    return state


class RunResult(NamedTuple):
    boundaries: BoundaryVector
    energy: float
    iterations: int
    trace: list


def run(signal: DiscretizedSignal, N: int, config: SwarmConfig = SwarmConfig()) -> RunResult:
    """Fly the swarm until ``max_iter`` or the best energy is ``<= energy_tolerance``."""
    if N < 1:
        raise ValueError(f"segment count must be >= 1, got {N}")
    if N == 1:
        e = float(energies(signal, np.empty((1, 0)))[0])
        return RunResult(BoundaryVector(signal.a, signal.b, []), e, 0, [e])
    state = init_swarm(signal, N, config)
    while (
        state.iteration < config.max_iter
        and state.global_best_energy > config.energy_tolerance
    ):
        step(state, signal, config)
    best = BoundaryVector.from_unsorted(signal.a, signal.b, state.global_best)
    return RunResult(best, state.global_best_energy, state.iteration, state.trace)


def run_seed(base_seed: int, index: int) -> int:
    """Per-run 64-bit seed mixed from the base seed and the run index."""
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1, np.uint64)[0])


@dataclass(frozen=True, eq=False)
class RunStats:
    energies: np.ndarray
    seeds: tuple
    boundaries: tuple
    traces: tuple

    @property
    def mu(self) -> float:
        return float(np.mean(self.energies))

    @property
    def sigma(self) -> float:
        return float(np.std(self.energies))

    @property
    def min(self) -> float:
        return float(np.min(self.energies))

    @property
    def max(self) -> float:
        return float(np.max(self.energies))

    @property
    def best(self) -> int:
        return int(np.argmin(self.energies))


def _run_job(args):
    signal, N, config = args
    return run(signal, N, config)


def multi_run(
    signal: DiscretizedSignal,
    N: int,
    config: SwarmConfig = SwarmConfig(),
    runs: int = 50,
    jobs: int = 1,
) -> RunStats:
    """``runs`` independent swarms with seeds derived from ``config.seed``.

    Results do not depend on ``jobs``.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    seeds = tuple(run_seed(config.seed, i) for i in range(runs))
    tasks = [(signal, N, replace(config, seed=s)) for s in seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job, tasks))
    else:
        results = [_run_job(t) for t in tasks]
    return RunStats(
        energies=np.array([r.energy for r in results]),
        seeds=seeds,
        boundaries=tuple(r.boundaries for r in results),
        traces=tuple(r.trace for r in results),
    )
