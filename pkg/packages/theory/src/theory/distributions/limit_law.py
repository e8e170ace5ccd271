"""
Laws of linear combinations a xi1 + b xi2 of independent GOE Tracy-Widom variables.

    P(a xi1 + b xi2 <= s) = int P(a xi1 <= s - b y) f(y) dy

with f the GOE density from the tabulated CDF and
P(a xi1 <= z) = F(z / a) for a > 0 and 1 - F(z / a) for a < 0.
"""

import logging
from functools import lru_cache

import numpy as np
from domain.errors import DegenerateCombinationError
from domain.models import ShockConstants
from domain.types import LimitLaw
from scipy.integrate import simpson

from theory.constants import limit_law_coefficients
from theory.distributions.fredholm import DEFAULT_ORDER
from theory.distributions.tables import TW_GRID, DistTable, monotone_cdf, tabulate

logger = logging.getLogger(__name__)

COMBINATION_POINTS = 801


@lru_cache(maxsize=4)
def goe_table(order: int = DEFAULT_ORDER) -> DistTable:
    """Shared GOE table on the default grid."""
    return tabulate("goe", order=order)


def _scaled_cdf(table: DistTable, coef: float, z: np.ndarray) -> np.ndarray:
    """P(coef * xi <= z) for nonzero coef."""
    if coef > 0:
        return table(z / coef)
    return 1.0 - table(z / coef)


def combination_grid(a: float, b: float, points: int = COMBINATION_POINTS) -> np.ndarray:
    """Grid covering the support of a xi1 + b xi2 given the GOE range."""
    lo_tw, hi_tw = TW_GRID

    def span(c: float) -> tuple[float, float]:
        return (c * lo_tw, c * hi_tw) if c >= 0 else (c * hi_tw, c * lo_tw)

    (a_lo, a_hi), (b_lo, b_hi) = span(a), span(b)
    return np.linspace(a_lo + b_lo, a_hi + b_hi, points)


def combination_cdf(
    a: float,
    b: float,
    s_grid: np.ndarray | None = None,
    *,
    order: int = DEFAULT_ORDER,
) -> DistTable:
    """
    CDF of a xi1 + b xi2 for any signs of a and b.

    A single vanishing coefficient reduces to one scaled GOE law.

    Raises
    ------
    DegenerateCombinationError
        If both coefficients vanish.
    """
    if a == 0.0 and b == 0.0:
        raise DegenerateCombinationError("Both coefficients vanish")

    table = goe_table(order)
    grid = combination_grid(a, b) if s_grid is None else np.asarray(s_grid, dtype=np.float64)

    if a == 0.0 or b == 0.0:
        coef = b if a == 0.0 else a
        values = _scaled_cdf(table, coef, grid)
        return DistTable(s_grid=grid, cdf=monotone_cdf(values), kind="goe-scaled", order=order)

    y = table.s_grid
    f = table.density()
    values = np.empty(len(grid))
    for idx, s in enumerate(grid):
        values[idx] = simpson(_scaled_cdf(table, a, s - b * y) * f, x=y)
    return DistTable(s_grid=grid, cdf=monotone_cdf(values), kind="combination", order=order)


def limit_law_cdf(
    which: LimitLaw,
    sc: ShockConstants,
    s_grid: np.ndarray | None = None,
    *,
    order: int = DEFAULT_ORDER,
) -> DistTable:
    """
    CDF of the limit law of the rescaled second-class position (X) or step count (N).

    Raises
    ------
    DegenerateCombinationError
        If a coefficient vanishes (N at lambda = 1/2 or rho = 1/2).
    """
    a, b = limit_law_coefficients(sc, which)
    if a == 0.0 or b == 0.0:
        raise DegenerateCombinationError(f"Limit law {which} has a vanishing coefficient (a={a}, b={b})")
    logger.debug("Limit law %s: a=%.6f b=%.6f", which, a, b)
    table = combination_cdf(a, b, s_grid, order=order)
    return DistTable(s_grid=table.s_grid, cdf=table.cdf, kind=f"limit-{which}", order=order)
