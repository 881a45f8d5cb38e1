"""Signal sources, solver dispatch, N sweeps and plain-text data tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .approximation import BoundaryVector, build_approximation, energy, step_table
from .dar_bruckstein import dar_bruckstein
from .dp import GridSpec, dp_optimal
from .pso import SwarmConfig, multi_run
from .signal import (
    DiscretizedSignal,
    NoiseSpec,
    add_gaussian_noise,
    load_csv,
    load_pgm_row,
    make_chirp,
    make_steps,
)

METHODS = ("db", "pso", "dp")


class SourceError(ValueError):
    """Unrecognised ``--source`` specification."""


def parse_source(
    source: str,
    cells: int = 100_000,
    sigma: float = 0.0,
    noise_seed: int = 0,
    domain: tuple[float, float] | None = None,
) -> DiscretizedSignal:
    """Build a signal from ``chirp``, ``csv:<path>``, ``pgm:<path>:<row>`` or ``steps:<count>:<seed>``.

    Noise with standard deviation ``sigma`` is added afterwards when positive.
    """
    kind, _, rest = source.partition(":")
    if kind == "chirp" and not rest:
        signal = make_chirp(cells)
    elif kind == "csv" and rest:
        a, b = domain if domain else (None, None)
        signal = load_csv(rest, a, b)
    elif kind == "pgm" and rest:
        path, sep, row = rest.rpartition(":")
        if not sep or not row.isdigit():
            raise SourceError(f"expected pgm:<path>:<row>, got {source!r}")
        signal = load_pgm_row(path, int(row))
    elif kind == "steps":
        parts = rest.split(":")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise SourceError(f"expected steps:<count>:<seed>, got {source!r}")
        signal = make_steps(int(parts[0]), int(parts[1]))
    else:
        raise SourceError(f"unknown source {source!r}")
    if sigma > 0:
        signal = add_gaussian_noise(signal, NoiseSpec(sigma, noise_seed))
    return signal


def parse_n_list(text: str) -> list[int]:
    """``"5,10,20"`` or an inclusive range ``"10:100:10"`` (combinable with commas)."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ":" in part:
            fields = [int(p) for p in part.split(":")]
            if len(fields) == 2:
                fields.append(1)
            start, stop, stride = fields
            if stride < 1:
                raise ValueError(f"bad range {part!r}")
            out.extend(range(start, stop + 1, stride))
        elif part:
            out.append(int(part))
    if not out or any(n < 1 for n in out) or out != sorted(set(out)):
        raise ValueError(f"N list must be nonempty, positive and strictly ascending: {text!r}")
    return out


def solve(
    signal: DiscretizedSignal,
    N: int,
    method: str,
    config: SwarmConfig = SwarmConfig(),
    runs: int = 1,
    refine: int = 1,
    jobs: int = 1,
):
    """Boundaries from one method; PSO returns the best of ``runs`` runs.

    Returns ``(boundaries, stats)`` where ``stats`` is the PSO ``RunStats``
    or ``None``.
    """
    if method == "db":
        return dar_bruckstein(signal, N), None
    if method == "dp":
        return dp_optimal(signal, N, GridSpec(refine))[0], None
    if method == "pso":
        stats = multi_run(signal, N, config, runs, jobs)
        return stats.boundaries[stats.best], stats
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class ExperimentRow:
    N: int
    db_mse: float
    mu: float
    sigma: float
    min: float
    max: float
    dp_mse: float | None = None


def sweep(
    signal: DiscretizedSignal,
    n_list: Iterable[int],
    config: SwarmConfig = SwarmConfig(),
    runs: int = 50,
    jobs: int = 1,
    refine: int | None = None,
) -> list[ExperimentRow]:
    """DB energy and PSO run statistics for every N; DP energy when ``refine`` is given."""
    rows = []
    for N in n_list:
        db = energy(signal, dar_bruckstein(signal, N))
        stats = multi_run(signal, N, config, runs, jobs)
        dp = dp_optimal(signal, N, GridSpec(refine))[1] if refine else None
        rows.append(ExperimentRow(N, db, stats.mu, stats.sigma, stats.min, stats.max, dp))
    return rows


def fmt(value: float) -> str:
    """Shortest round-tripping text for ``value``."""
    return repr(float(value))


def write_table(out: TextIO, header: Iterable[str], rows: Iterable[Iterable]) -> None:
    out.write(" ".join(header) + "\n")
    for row in rows:
        out.write(" ".join(str(v) if isinstance(v, (int, np.integer)) else fmt(v) for v in row) + "\n")


def write_sweep_table(out: TextIO, rows: list[ExperimentRow]) -> None:
    header = ["N", "DB-MSE", "mu", "sigma", "min", "max"]
    oracle = any(r.dp_mse is not None for r in rows)
    if oracle:
        header.append("DP-MSE")
    body = []
    for r in rows:
        line = [r.N, r.db_mse, r.mu, r.sigma, r.min, r.max]
        if oracle:
            line.append(r.dp_mse)
        body.append(line)
    write_table(out, header, body)


def write_log_tables(out_db: TextIO, out_pso: TextIO, rows: list[ExperimentRow]) -> None:
    """``N log10E`` for DB and ``N log10Min`` for the best PSO run."""
    write_table(out_db, ["N", "log10E"], [(r.N, _log10(r.db_mse)) for r in rows])
    write_table(out_pso, ["N", "log10Min"], [(r.N, _log10(r.min)) for r in rows])


def _log10(v: float) -> float:
    return math.log10(v) if v > 0 else -math.inf


def write_step_table(out: TextIO, signal: DiscretizedSignal, x: BoundaryVector) -> None:
    write_table(out, ["x", "fx"], step_table(build_approximation(signal, x)))
