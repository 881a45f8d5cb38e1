"""Signals on [a, b] stored as M uniform constant cells with prefix integrals."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np


class PGMError(ValueError):
    """Malformed or unsupported PGM input."""


class PGMFormatError(PGMError):
    pass


class PGMMaxvalError(PGMError):
    pass


class PGMRowError(PGMError, IndexError):
    pass


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class DiscretizedSignal:
    """Piecewise-constant signal: cell ``j`` covers ``[a + j*delta, a + (j+1)*delta)``.

    ``prefix1[k]`` and ``prefix2[k]`` hold the integrals of f and f**2 over
    the first ``k`` cells, so any interval statistic costs O(1).
    """

    a: float
    b: float
    values: np.ndarray
    prefix1: np.ndarray
    prefix2: np.ndarray

    @classmethod
    def from_array(cls, values, a: float, b: float) -> "DiscretizedSignal":
        vals = np.array(values, dtype=float).ravel()
        if vals.size == 0:
            raise ValueError("signal needs at least one cell")
        a, b = float(a), float(b)
        if not b > a:
            raise ValueError(f"empty domain [{a}, {b}]")
        if not np.all(np.isfinite(vals)):
            raise ValueError("signal values must be finite")
        delta = (b - a) / vals.size
        prefix1 = np.zeros(vals.size + 1)
        prefix2 = np.zeros(vals.size + 1)
        np.cumsum(vals * delta, out=prefix1[1:])
        np.cumsum(vals * vals * delta, out=prefix2[1:])
        return cls(a, b, _readonly(vals), _readonly(prefix1), _readonly(prefix2))

    @cached_property
    def squares(self) -> np.ndarray:
        return _readonly(self.values * self.values)

    @property
    def M(self) -> int:
        return self.values.size

    @property
    def delta(self) -> float:
        return (self.b - self.a) / self.values.size

    @property
    def length(self) -> float:
        return self.b - self.a

    def edges(self) -> np.ndarray:
        return self.a + np.arange(self.M + 1) * self.delta

    def midpoints(self) -> np.ndarray:
        return self.a + (np.arange(self.M) + 0.5) * self.delta

    def cell_index(self, x) -> np.ndarray:
        """Index of the cell containing ``x``; ``b`` maps to the last cell."""
        t = (np.asarray(x, dtype=float) - self.a) / self.delta
        return np.clip(np.floor(t).astype(np.int64), 0, self.M - 1)

    def cumulative(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Running integrals of f and f**2 from ``a`` up to each ``x``.

        Partial cells contribute in proportion to the covered width, so both
        results are piecewise linear and continuous in ``x``. ``x`` is assumed
        to lie in ``[a, b]``.
        """
        t = (np.asarray(x, dtype=float) - self.a) / self.delta
        k = t.astype(np.int64)
        np.clip(k, 0, self.M - 1, out=k)
        # x = b lands in the last cell with a full-width fraction
        frac = (t - k) * self.delta
        v = self.values[k]
        return self.prefix1[k] + frac * v, self.prefix2[k] + frac * self.squares[k]

    def __repr__(self) -> str:
        return f"DiscretizedSignal(a={self.a}, b={self.b}, M={self.M})"


@dataclass(frozen=True)
class NoiseSpec:
    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"noise sigma must be >= 0, got {self.sigma}")


def from_values(values: Sequence[float], a: float, b: float) -> DiscretizedSignal:
    """Signal whose cells carry ``values`` over the domain ``[a, b]``."""
    return DiscretizedSignal.from_array(values, a, b)


def chirp(x):
    return 255.0 * np.cos(2.0 * np.pi * x * (1.0 + 5.0 * x))


def chirp_derivative(x):
    return -255.0 * 2.0 * np.pi * (1.0 + 10.0 * x) * np.sin(2.0 * np.pi * x * (1.0 + 5.0 * x))


def make_chirp(M: int = 100_000) -> DiscretizedSignal:
    """``255 cos(2 pi x (1 + 5x))`` on [0, 1], sampled at the M cell midpoints."""
    if int(M) != M or M < 1:
        raise ValueError(f"cell count must be a positive integer, got {M}")
    M = int(M)
    mid = (np.arange(M) + 0.5) / M
    return DiscretizedSignal.from_array(chirp(mid), 0.0, 1.0)


def make_steps(count: int, seed: int = 0, cells: int = 256) -> DiscretizedSignal:
    """Random step signal on ``[0, cells]`` with unit cells.

    ``count`` plateaus with random lengths and integer levels in [0, 255].
    Serves as a stand-in for 8-bit image rows.
    """
    if count < 1 or count > cells:
        raise ValueError(f"step count must lie in [1, {cells}], got {count}")
    rng = np.random.default_rng(seed)
    cuts = np.sort(rng.choice(np.arange(1, cells), size=count - 1, replace=False))
    levels = rng.integers(0, 256, size=count)
    values = np.repeat(levels, np.diff(np.concatenate([[0], cuts, [cells]])))
    return DiscretizedSignal.from_array(values.astype(float), 0.0, float(cells))


def add_gaussian_noise(signal: DiscretizedSignal, spec: NoiseSpec) -> DiscretizedSignal:
    """Copy of ``signal`` with i.i.d. N(0, sigma**2) added to every cell."""
    if spec.sigma == 0:
        return DiscretizedSignal.from_array(signal.values, signal.a, signal.b)
    rng = np.random.default_rng(spec.seed)
    noise = rng.normal(0.0, spec.sigma, size=signal.M)
    return DiscretizedSignal.from_array(signal.values + noise, signal.a, signal.b)


def interval_integrals(signal: DiscretizedSignal, xl: float, xr: float) -> tuple[float, float, float]:
    """Return ``(int f, int f**2, xr - xl)`` over ``[xl, xr]``."""
    if not (signal.a <= xl <= xr <= signal.b):
        raise ValueError(
            f"interval [{xl}, {xr}] not ordered inside [{signal.a}, {signal.b}]"
        )
    if xl == xr:
        return 0.0, 0.0, 0.0
    (l1, r1), (l2, r2) = signal.cumulative([xl, xr])
    return float(r1 - l1), float(r2 - l2), xr - xl


def load_csv(path, a: float | None = None, b: float | None = None) -> DiscretizedSignal:
    """One value per line; a leading non-numeric header line is skipped.

    Without an explicit domain the cells get unit width on ``[0, count]``.
    """
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh)):
            if not row or not row[0].strip():
                continue
            try:
                values.append(float(row[0]))
            except ValueError:
                if lineno == 0:
                    continue
                raise ValueError(f"{path}:{lineno + 1}: not a number: {row[0]!r}") from None
    if not values:
        raise ValueError(f"{path}: no values")
    if a is None:
        a = 0.0
    if b is None:
        b = a + len(values)
    return from_values(values, a, b)


def _pgm_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise PGMFormatError("truncated PGM header")
        if data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def read_pgm(path) -> np.ndarray:
    """Parse a P2 or P5 graymap with maxval <= 255 into a (height, width) array."""
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMFormatError(f"{path}: not a P2/P5 PGM (magic {magic!r})")
    try:
        tokens, pos = _pgm_tokens(data[2:], 3)
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise PGMFormatError(f"{path}: bad PGM header") from None
    pos += 2
    if width < 1 or height < 1:
        raise PGMFormatError(f"{path}: bad image size {width}x{height}")
    if not 0 < maxval <= 255:
        raise PGMMaxvalError(f"{path}: maxval {maxval} unsupported (need 1..255)")
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates header and raster
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) < count:
            raise PGMFormatError(f"{path}: raster has {len(raster)} of {count} bytes")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        words = data[pos:].split()
        if len(words) < count:
            raise PGMFormatError(f"{path}: raster has {len(words)} of {count} samples")
        try:
            pixels = np.array([int(w) for w in words[:count]])
        except ValueError:
            raise PGMFormatError(f"{path}: non-integer sample in raster") from None
    if pixels.max() > maxval:
        raise PGMFormatError(f"{path}: sample exceeds maxval {maxval}")
    return pixels.reshape(height, width).astype(float)


def load_pgm_row(path, row: int) -> DiscretizedSignal:
    """Row ``row`` of a PGM image as a signal on ``[0, width]`` with unit pixels."""
    image = read_pgm(path)
    height, width = image.shape
    if not 0 <= row < height:
        raise PGMRowError(f"{path}: row {row} out of range for height {height}")
    return from_values(image[row], 0.0, float(width))
