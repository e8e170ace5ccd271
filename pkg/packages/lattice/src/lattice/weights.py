"""
Counter-based exponential weights.

Every uniform is a pure function of (master_seed, stream, row, position, space):

    key     = (master_seed, stream)
    counter = ((position + 2^62) >> 2, row + 2^62, space, 0)
    lane    = (position + 2^62) & 3

Philox4x64 yields four 64-bit words per counter; the word at `lane` is mapped to
a 53-bit uniform u = (raw >> 11) 2^-53 in [0, 1) and to an exponential by
inverse CDF, -log1p(-u) / rate.

Lattice weights are laid out by anti-diagonal: row = i + j, position = i,
space 0. Flat sequences (boundary increments, TASEP clocks) use row 0, space 1.
A wavefront therefore reads one contiguous run per diagonal.
"""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Protocol

import numpy as np
from domain.errors import BoundsError, InvalidParameterError
from domain.models import MAX_SEED, SeedSpec, Window

OFFSET = 2**62
UNIFORM_SCALE = 2.0**-53
LATTICE_SPACE = 0
FLAT_SPACE = 1

RateFn = Callable[[np.ndarray], np.ndarray]


class WeightSource(Protocol):
    """Anything that serves weights by anti-diagonal, rectangle or cell."""

    def diagonal(self, d: int, i_lo: int, i_hi: int) -> np.ndarray: ...

    def block(self, rect: Window) -> np.ndarray: ...

    def at(self, i: int, j: int) -> float: ...


def derive_replica_seed(master_seed: int, replica_index: int) -> int:
    """Mix (master_seed, replica_index) into an independent 64-bit master seed."""
    state = np.random.SeedSequence((master_seed, replica_index)).generate_state(1, np.uint64)
    return int(state[0])


def uniform_row(seed: SeedSpec, row: int, start: int, count: int, *, space: int = LATTICE_SPACE) -> np.ndarray:
    """Uniforms at positions start, ..., start + count - 1 of one row."""
    if count <= 0:
        return np.empty(0, dtype=np.float64)
    pos = start + OFFSET
    block, lane = pos >> 2, pos & 3
    counter = np.array([block, row + OFFSET, space, 0], dtype=np.uint64)
    key = np.array([seed.master_seed, int(seed.stream)], dtype=np.uint64)
    raw = np.random.Philox(key=key, counter=counter).random_raw(lane + count)[lane:]
    return (raw >> np.uint64(11)).astype(np.float64) * UNIFORM_SCALE


def uniform_at(seed: SeedSpec, row: int, position: int, *, space: int = LATTICE_SPACE) -> float:
    return float(uniform_row(seed, row, position, 1, space=space)[0])


def exponential_from_uniform(u: np.ndarray | float, rate: np.ndarray | float) -> np.ndarray:
    """Inverse CDF of Exp(rate); u in [0, 1) gives a finite nonnegative value."""
    # + 0.0 turns -0.0 at u = 0 into 0.0
    return -np.log1p(-np.asarray(u, dtype=np.float64)) / rate + 0.0


def sample_exponential(rate: float, seed: SeedSpec, counter: int) -> float:
    """
    Exponential draw at a flat counter position of the seed's stream.

    Raises
    ------
    InvalidParameterError
        If rate is not positive.
    """
    if rate <= 0:
        raise InvalidParameterError(f"rate must be positive, got {rate}")
    u = uniform_row(seed, 0, counter, 1, space=FLAT_SPACE)
    return float(exponential_from_uniform(u, rate)[0])


def exponential_sequence(seed: SeedSpec, start: int, count: int, rate: float = 1.0) -> np.ndarray:
    """Exponentials at flat positions start, ..., start + count - 1."""
    if rate <= 0:
        raise InvalidParameterError(f"rate must be positive, got {rate}")
    return exponential_from_uniform(uniform_row(seed, 0, start, count, space=FLAT_SPACE), rate)


@dataclass(frozen=True, slots=True)
class WeightField:
    """
    Deterministic field (i, j) -> omega_{i,j} ~ Exp(rate_fn(j)).

    `window` bounds point lookups when set; `rate_fn` maps row indices to rates
    (None means rate 1 everywhere).
    """

    seed: SeedSpec
    window: Window | None = None
    rate_fn: RateFn | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.seed.master_seed < MAX_SEED:
            raise InvalidParameterError(f"Invalid master seed {self.seed.master_seed}")

    def _rates(self, j: np.ndarray) -> np.ndarray | float:
        if self.rate_fn is None:
            return 1.0
        rates = np.asarray(self.rate_fn(j), dtype=np.float64)
        if np.any(rates <= 0):
            raise InvalidParameterError("rate_fn must return positive rates")
        return rates

    def _check_bounds(self, i_lo: int, i_hi: int, j_lo: int, j_hi: int) -> None:
        w = self.window
        if w is None:
            return
        if i_lo < w.i_min or i_hi > w.i_max or j_lo < w.j_min or j_hi > w.j_max:
            raise BoundsError(f"Cells i in [{i_lo}, {i_hi}], j in [{j_lo}, {j_hi}] leave the field window {w}")

    def diagonal(self, d: int, i_lo: int, i_hi: int) -> np.ndarray:
        """Weights of cells (i, d - i) for i = i_lo, ..., i_hi."""
        count = i_hi - i_lo + 1
        if count <= 0:
            return np.empty(0, dtype=np.float64)
        self._check_bounds(i_lo, i_hi, d - i_hi, d - i_lo)
        u = uniform_row(self.seed, d, i_lo, count)
        if self.rate_fn is None:
            return exponential_from_uniform(u, 1.0)
        j = d - np.arange(i_lo, i_hi + 1, dtype=np.int64)
        return exponential_from_uniform(u, self._rates(j))

    def block(self, rect: Window) -> np.ndarray:
        """Weights of a rectangle as an array indexed [i - i_min, j - j_min]."""
        out = np.empty((rect.width, rect.height), dtype=np.float64)
        for d in range(rect.i_min + rect.j_min, rect.i_max + rect.j_max + 1):
            lo = max(rect.i_min, d - rect.j_max)
            hi = min(rect.i_max, d - rect.j_min)
            ii = np.arange(lo, hi + 1)
            out[ii - rect.i_min, d - ii - rect.j_min] = self.diagonal(d, lo, hi)
        return out

    def at(self, i: int, j: int) -> float:
        return float(self.diagonal(i + j, i, i)[0])


def weight_at(field: WeightField, i: int, j: int) -> float:
    """
    Weight of cell (i, j).

    Raises
    ------
    BoundsError
        If (i, j) lies outside the field window.
    """
    return field.at(i, j)


def weight_diagonal(field: WeightField, d: int, i_lo: int, i_hi: int) -> np.ndarray:
    return field.diagonal(d, i_lo, i_hi)


def weight_block(field: WeightField, rect: Window) -> np.ndarray:
    return field.block(rect)


@dataclass(frozen=True, slots=True)
class ForcedField:
    """
    Field with prescribed weights on some cells and a fallback elsewhere.

    Used for hand-checked instances; cells not listed take `default`.
    """

    weights: dict[tuple[int, int], float]
    default: float = 0.0

    def diagonal(self, d: int, i_lo: int, i_hi: int) -> np.ndarray:
        return np.array([self.weights.get((i, d - i), self.default) for i in range(i_lo, i_hi + 1)], dtype=np.float64)

    def block(self, rect: Window) -> np.ndarray:
        out = np.full((rect.width, rect.height), self.default, dtype=np.float64)
        for (i, j), w in self.weights.items():
            if rect.contains(i, j):
                out[i - rect.i_min, j - rect.j_min] = w
        return out

    def at(self, i: int, j: int) -> float:
        return self.weights.get((i, j), self.default)
