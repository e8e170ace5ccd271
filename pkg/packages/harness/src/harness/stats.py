"""
Goodness-of-fit and dependence statistics used by the experiments.

All functions are pure; random resampling takes an explicit seed.
"""

from collections.abc import Callable, Sequence

import numpy as np
from domain.errors import ContractViolationError, DataError, InvalidParameterError
from domain.models import ExponentFit, KsReport
from scipy import stats

CdfLike = Callable[[np.ndarray], np.ndarray]

BOOTSTRAP_RESAMPLES = 2000
CONFIDENCE = 0.95
JOINT_GRID = 400


# ---------------------------------------------------------------------
# Kolmogorov-Smirnov
# ---------------------------------------------------------------------


def ks_statistic(samples: np.ndarray, cdf: CdfLike) -> float:
    """
    sup_s |F_n(s) - F(s)| with the two-sided evaluation at every sample point.

    Raises
    ------
    InvalidParameterError
        If fewer than 2 samples are given.
    ContractViolationError
        If samples are not sorted.
    """
    x = np.asarray(samples, dtype=np.float64)
    n = len(x)
    if n < 2:
        raise InvalidParameterError(f"KS needs at least 2 samples, got {n}")
    if np.any(np.diff(x) < 0):
        raise ContractViolationError("ks_statistic expects sorted samples")
    f = np.clip(np.asarray(cdf(x), dtype=np.float64), 0.0, 1.0)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_report(samples: np.ndarray, cdf: CdfLike, *, reference: str, threshold: float) -> KsReport:
    """Sort, drop non-finite entries and report KS against a named reference."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    x = x[np.isfinite(x)]
    return KsReport(ks_statistic=ks_statistic(x, cdf), n_samples=len(x), reference=reference, threshold=threshold)


def two_sample_ks(a: np.ndarray, b: np.ndarray) -> float:
    return float(stats.ks_2samp(a, b).statistic)


def exponential_cdf(rate: float) -> CdfLike:
    if rate <= 0:
        raise InvalidParameterError(f"rate must be positive, got {rate}")
    return lambda s: stats.expon.cdf(s, scale=1.0 / rate)


# ---------------------------------------------------------------------
# Fluctuation exponent
# ---------------------------------------------------------------------


def _log_slope(log_t: np.ndarray, log_v: np.ndarray) -> tuple[float, float]:
    fit = stats.linregress(log_t, log_v)
    return float(fit.slope), float(fit.intercept)


def scaling_exponent_fit(
    variances: Sequence[tuple[float, float]],
    *,
    n_resamples: int = BOOTSTRAP_RESAMPLES,
    seed: int = 0,
) -> ExponentFit:
    """
    Least-squares slope of log var against log t with a residual-bootstrap interval.

    Raises
    ------
    InvalidParameterError
        If fewer than 3 distinct scales are given.
    DataError
        If a scale or variance is nonpositive or not finite.
    """
    if len({t for t, _ in variances}) < 3:
        raise InvalidParameterError(f"Need at least 3 distinct scales, got {len(variances)} points")
    t = np.array([p[0] for p in variances], dtype=np.float64)
    v = np.array([p[1] for p in variances], dtype=np.float64)
    if np.any(~np.isfinite(v)) or np.any(v <= 0) or np.any(t <= 0):
        raise DataError(f"Scales and variances must be positive, got {list(variances)}")

    log_t, log_v = np.log(t), np.log(v)
    slope, intercept = _log_slope(log_t, log_v)
    fitted = intercept + slope * log_t
    residuals = log_v - fitted

    rng = np.random.default_rng(seed)
    boot = np.empty(n_resamples)
    for b in range(n_resamples):
        boot[b] = _log_slope(log_t, fitted + rng.choice(residuals, size=len(residuals), replace=True))[0]
    alpha = 0.5 * (1.0 - CONFIDENCE)
    low, high = np.quantile(boot, [alpha, 1.0 - alpha])
    return ExponentFit(slope=slope, ci_low=float(min(low, slope)), ci_high=float(max(high, slope)), scales=tuple(t))


# ---------------------------------------------------------------------
# Dependence
# ---------------------------------------------------------------------


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson correlation; NaN if either input is constant."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y) or len(x) < 2:
        raise InvalidParameterError(f"Need two equal-length inputs of size >= 2, got {len(x)} and {len(y)}")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return float("nan")
    return float(stats.pearsonr(x, y).statistic)


def lag_one_correlation(rows: np.ndarray) -> float:
    """Correlation of consecutive entries within rows, pooled over rows."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
    if rows.shape[1] < 2:
        raise InvalidParameterError("Need at least two entries per row")
    return pearson(rows[:, :-1].ravel(), rows[:, 1:].ravel())


def joint_product_distance(x: np.ndarray, y: np.ndarray, *, grid: int = JOINT_GRID) -> float:
    """
    sup |F_n(s, t) - F_n^X(s) F_n^Y(t)| over a rank grid.

    The grid holds every rank when n <= grid, so the supremum is exact for
    small samples and evaluated at `grid` evenly spaced ranks otherwise.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = len(x)
    if n != len(y) or n < 2:
        raise InvalidParameterError(f"Need two equal-length inputs of size >= 2, got {n} and {len(y)}")
    rx = stats.rankdata(x, method="max")
    ry = stats.rankdata(y, method="max")
    cuts = np.unique(np.round(np.linspace(1, n, min(n, grid)))).astype(np.float64)
    edges = np.concatenate(([0.5], cuts + 0.5))
    counts, _, _ = np.histogram2d(rx, ry, bins=[edges, edges])
    joint = counts.cumsum(axis=0).cumsum(axis=1) / n
    fx = np.searchsorted(np.sort(rx), cuts, side="right") / n
    fy = np.searchsorted(np.sort(ry), cuts, side="right") / n
    return float(np.max(np.abs(joint - np.outer(fx, fy))))


def binomial_stderr(p: float, n: int) -> float:
    return float(np.sqrt(max(p * (1.0 - p), 0.0) / n)) if n > 0 else float("nan")
