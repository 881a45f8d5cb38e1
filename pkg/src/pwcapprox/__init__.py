"""Piecewise-constant approximation of 1-D signals with N segments.

Three solvers share one signal representation and one energy:

* :func:`dar_bruckstein` -- equal cube-root-derivative-mass sampling,
* :func:`run` / :func:`multi_run` -- SPSO-2011 particle swarm on the MSE,
* :func:`dp_optimal` -- exact dynamic programming on a candidate grid.
"""

from .signal import (
    DiscretizedSignal,
    NoiseSpec,
    PGMError,
    add_gaussian_noise,
    from_values,
    interval_integrals,
    load_csv,
    load_pgm_row,
    make_chirp,
    make_steps,
)
from .approximation import (
    BoundaryVector,
    PiecewiseApprox,
    build_approximation,
    energies,
    energy,
    exact_error_factor,
    linearized_error,
    segment_error_report,
    step_table,
)
from .dar_bruckstein import (
    DerivativeDensity,
    dar_bruckstein,
    db_boundaries,
    derivative_density,
)
from .pso import (
    RunResult,
    RunStats,
    SwarmConfig,
    SwarmState,
    init_swarm,
    multi_run,
    run,
    sample_ball,
    step,
)
from .dp import GridSpec, brute_force, dp_optimal

__all__ = [
    "BoundaryVector",
    "DerivativeDensity",
    "DiscretizedSignal",
    "GridSpec",
    "NoiseSpec",
    "PGMError",
    "PiecewiseApprox",
    "RunResult",
    "RunStats",
    "SwarmConfig",
    "SwarmState",
    "add_gaussian_noise",
    "brute_force",
    "build_approximation",
    "dar_bruckstein",
    "db_boundaries",
    "derivative_density",
    "dp_optimal",
    "energies",
    "energy",
    "exact_error_factor",
    "from_values",
    "init_swarm",
    "interval_integrals",
    "linearized_error",
    "load_csv",
    "load_pgm_row",
    "make_chirp",
    "make_steps",
    "multi_run",
    "run",
    "sample_ball",
    "segment_error_report",
    "step",
    "step_table",
]
