"""
Start lines of the line-to-point problems.

    L_s      = {(floor((s-1) k / s), k)}          anti-diagonal line of density s
    L_lambda = rows k >= 0 of L_lambda
    L_rho    = rows k <  0 of L_rho
    L        = {(k + x_k(0), k)}                  TASEP line of an initial configuration

Lines are returned as StartSet chains ordered by decreasing k, which walks
the line from its top-left end down to the right. `labels` holds k.

Densities enter floors as exact rationals (denominator <= 10^6) so that
0.2, 0.6, ... produce the same integer sites as their fractions.
"""

from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

import numpy as np
from domain.errors import InvalidParameterError
from domain.models import StartSet

MAX_DENOMINATOR = 10**6


@lru_cache(maxsize=64)
def rational(density: float) -> Fraction:
    return Fraction(density).limit_denominator(MAX_DENOMINATOR)


def line_column(density: float, k: int) -> int:
    """Column of row k on L_density."""
    r = rational(density)
    return floor((r - 1) * k / r)


def shock_position(n: int, lambda_: float, rho: float) -> int:
    """
    Initial site of particle n in the two-density configuration.

    -floor(n / lambda) for n > 0 and -floor(n / rho) for n < 0; there is no
    particle 0.
    """
    if n == 0:
        raise InvalidParameterError("The origin carries no labelled particle")
    density = lambda_ if n > 0 else rho
    return -floor(n / rational(density))


def extended_position(n: int, lambda_: float, rho: float) -> int:
    """
    Initial site of particle n once the origin is split into a hole at 0 and particle 0 at 1.

    The left half is unchanged and the right half moves one site to the right.
    """
    if n == 0:
        return 1
    if n > 0:
        return shock_position(n, lambda_, rho)
    return ceil(-n / rational(rho)) + 1


def _density_line(density: float, ks: range, boundary: np.ndarray | None) -> StartSet:
    if not 0.0 < density < 1.0:
        raise InvalidParameterError(f"Line density must lie in (0, 1), got {density}")
    if len(ks) == 0:
        raise InvalidParameterError("Line needs at least one row")
    k = np.arange(ks.stop - 1, ks.start - 1, -1, dtype=np.int64)
    i = np.array([line_column(density, int(r)) for r in k], dtype=np.int64)
    b = np.zeros(len(k)) if boundary is None else np.asarray(boundary, dtype=np.float64)
    return StartSet(i=i, j=k.copy(), boundary=b, labels=k)


def lambda_line(lambda_: float, k_lo: int, k_hi: int) -> StartSet:
    """Rows k_lo..k_hi (inclusive, k >= 0) of L_lambda."""
    if k_lo < 0:
        raise InvalidParameterError(f"L_lambda has rows k >= 0, got k_lo={k_lo}")
    return _density_line(lambda_, range(k_lo, k_hi + 1), None)


def rho_line(rho: float, k_lo: int, k_hi: int) -> StartSet:
    """Rows k_lo..k_hi (inclusive, k < 0) of L_rho."""
    if k_hi >= 0:
        raise InvalidParameterError(f"L_rho has rows k < 0, got k_hi={k_hi}")
    return _density_line(rho, range(k_lo, k_hi + 1), None)


def inclined_line(lambda_: float, k_lo: int, k_hi: int, boundary: np.ndarray | None = None) -> StartSet:
    """
    Rows k_lo..k_hi of the two-sided line L^inf_lambda.

    `boundary`, when given, is indexed in StartSet order (decreasing k).
    """
    return _density_line(lambda_, range(k_lo, k_hi + 1), boundary)


def tasep_line(labels: np.ndarray, positions: np.ndarray) -> StartSet:
    """
    Line {(k + x_k, k)} of a TASEP configuration.

    `labels` and `positions` are parallel; particles are labelled right to left,
    so x_{k+1} < x_k.
    """
    k = np.asarray(labels, dtype=np.int64)
    x = np.asarray(positions, dtype=np.int64)
    if len(k) != len(x):
        raise InvalidParameterError("labels and positions must have equal length")
    order = np.argsort(-k, kind="stable")
    k, x = k[order], x[order]
    if len(k) > 1 and (np.any(np.diff(k) != -1) or np.any(np.diff(x) <= 0)):
        raise InvalidParameterError("Particles must carry consecutive labels and be ordered right to left")
    return StartSet(i=k + x, j=k.copy(), boundary=np.zeros(len(k)), labels=k.copy())
