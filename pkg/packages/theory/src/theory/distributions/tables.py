"""
Tabulated distribution functions.

A DistTable holds a CDF on an increasing grid. Densities come from centered
finite differences of the CDF, moments from Simpson integration of the density,
and sampling from the inverse of a monotone cubic (PCHIP) interpolant.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
from domain.errors import InvalidParameterError
from domain.types import Kernel
from scipy.integrate import simpson
from scipy.interpolate import PchipInterpolator

from theory.distributions.fredholm import DEFAULT_ORDER, tw_cdf

logger = logging.getLogger(__name__)

GRID_STEP = 0.02
TW_GRID = (-10.0, 6.0)


def default_grid(lo: float = TW_GRID[0], hi: float = TW_GRID[1], step: float = GRID_STEP) -> np.ndarray:
    n = int(round((hi - lo) / step)) + 1
    return np.linspace(lo, hi, n)


@dataclass(frozen=True, slots=True, eq=False)
class DistTable:
    """CDF values on an increasing grid; immutable once built."""

    s_grid: np.ndarray
    cdf: np.ndarray
    kind: str
    order: int
    _inverse: PchipInterpolator | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.s_grid.ndim != 1 or len(self.s_grid) < 3:
            raise InvalidParameterError("DistTable needs a one-dimensional grid of at least 3 points")
        if np.any(np.diff(self.s_grid) <= 0):
            raise InvalidParameterError("DistTable grid must be strictly increasing")
        if self.cdf.shape != self.s_grid.shape:
            raise InvalidParameterError("DistTable cdf and grid must have the same shape")

    def __call__(self, s: float | np.ndarray) -> np.ndarray:
        """CDF at s by linear interpolation, 0 and 1 outside the grid."""
        return np.interp(s, self.s_grid, self.cdf, left=0.0, right=1.0)

    def density(self) -> np.ndarray:
        return np.gradient(self.cdf, self.s_grid)

    def total_mass(self) -> float:
        return float(simpson(self.density(), x=self.s_grid))

    def mean(self) -> float:
        return float(simpson(self.s_grid * self.density(), x=self.s_grid))

    def variance(self) -> float:
        mu = self.mean()
        return float(simpson((self.s_grid - mu) ** 2 * self.density(), x=self.s_grid))

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.cdf) >= 0.0))

    def quantile(self, p: float | np.ndarray) -> np.ndarray:
        inverse = self._inverse_interpolant()
        lo, hi = inverse.x[0], inverse.x[-1]
        return inverse(np.clip(p, lo, hi))

    def median(self) -> float:
        return float(self.quantile(0.5))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Inverse-transform samples."""
        return self.quantile(rng.random(size))

    def _inverse_interpolant(self) -> PchipInterpolator:
        if self._inverse is None:
            # restrict to the strictly increasing part so the inverse is a function
            keep = np.concatenate(([True], np.diff(self.cdf) > 0.0))
            inverse = PchipInterpolator(self.cdf[keep], self.s_grid[keep], extrapolate=False)
            object.__setattr__(self, "_inverse", inverse)
        assert self._inverse is not None
        return self._inverse

    def to_rows(self) -> list[tuple[float, float]]:
        return [(float(s), float(c)) for s, c in zip(self.s_grid, self.cdf, strict=True)]


def monotone_cdf(values: np.ndarray) -> np.ndarray:
    """Clip to [0, 1] and remove quadrature noise that breaks monotonicity."""
    return np.maximum.accumulate(np.clip(values, 0.0, 1.0))


def tabulate(kind: Kernel, s_grid: np.ndarray | None = None, order: int = DEFAULT_ORDER) -> DistTable:
    """Tabulate the Tracy-Widom GUE or GOE CDF."""
    grid = default_grid() if s_grid is None else np.asarray(s_grid, dtype=np.float64)
    logger.debug("Tabulating %s on %d points (order %d)", kind, len(grid), order)
    values = np.array([tw_cdf(kind, float(s), order) for s in grid])
    return DistTable(s_grid=grid, cdf=monotone_cdf(values), kind=kind, order=order)
