"""
Diagnostics of the rescaled line-to-point processes behind the shock limit.

For a target Pbar(u, v) the two processes are the last-passage times from
L_lambda (rows k >= 0) and from L_rho (rows k < 0), centred and scaled by
theory.geometry.rescale. Every replica uses one bulk field for both sides.
"""

import logging
from dataclasses import dataclass
from math import floor

import numpy as np
from domain.errors import InvalidParameterError
from domain.models import Point, RescaledSample, SeedSpec, ShockConstants, StartSet
from domain.types import Side, Stream
from lattice.engine import lpp_line_to_point, lpp_line_to_points, lpp_point_to_point, maximizer_hits
from lattice.lines import lambda_line, rho_line
from lattice.weights import WeightField, WeightSource, derive_replica_seed
from theory.constants import side_slope
from theory.geometry import characteristic_point, d_eta_points, point_P, rescale

from harness.stats import joint_product_distance, pearson

logger = logging.getLogger(__name__)

CROSSING_GRID = np.round(np.arange(-6.0, 6.0 + 1e-9, 0.1), 10)
DEFAULT_NU = 0.5
DEFAULT_BETA = 0.75


def replica_field(master_seed: int, replica: int, stream: Stream = Stream.BULK) -> WeightField:
    return WeightField(SeedSpec(derive_replica_seed(master_seed, replica), stream))


# ---------------------------------------------------------------------
# Lines and rescaled values
# ---------------------------------------------------------------------


def side_line(sc: ShockConstants, side: Side, targets: list[Point]) -> StartSet:
    """The rows of L_lambda or L_rho that any of the targets can see."""
    if side == "lambda":
        return lambda_line(sc.lambda_, 0, max(0, max(t[1] for t in targets)))
    x_max = max(t[0] for t in targets)
    k_lo = -(floor(sc.rho * max(x_max, 0) / (1.0 - sc.rho)) + 1)
    return rho_line(sc.rho, k_lo, -1)


def side_values(field: WeightSource, sc: ShockConstants, side: Side, targets: list[Point]) -> np.ndarray:
    """Raw line-to-point values from one side at every target."""
    outcomes = lpp_line_to_points(field, side_line(sc, side, targets), targets)
    if any(o is None for o in outcomes):
        raise InvalidParameterError(f"A target sees no start point of L_{side}")
    return np.array([o.value for o in outcomes if o is not None])


def rescaled_values(
    field: WeightSource, N: int, sc: ShockConstants, points: list[tuple[float, float]]
) -> list[RescaledSample]:
    """Rescaled values of both sides at scaled coordinates (u, v)."""
    targets = [point_P(N, u, v, sc) for u, v in points]
    lam = side_values(field, sc, "lambda", targets)
    rho = side_values(field, sc, "rho", targets)
    return [
        RescaledSample(
            u=u,
            v=v,
            value_lambda=rescale(float(lam[k]), N, u, v, "lambda", sc),
            value_rho=rescale(float(rho[k]), N, u, v, "rho", sc),
        )
        for k, (u, v) in enumerate(points)
    ]


def one_point_samples(
    N: int, sc: ShockConstants, replicas: int, *, master_seed: int = 0, stream: Stream = Stream.BULK
) -> np.ndarray:
    """(value_lambda, value_rho) at (0, 0), one row per replica."""
    out = np.empty((replicas, 2))
    for r in range(replicas):
        (sample,) = rescaled_values(replica_field(master_seed, r, stream), N, sc, [(0.0, 0.0)])
        out[r] = sample.value_lambda, sample.value_rho
    logger.info("Sampled %d one-point values at N=%d", replicas, N)
    return out


# ---------------------------------------------------------------------
# Independence
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IndependenceReport:
    correlation: float
    joint_distance: float
    n_samples: int


def independence_report(values: np.ndarray) -> IndependenceReport:
    """Pearson correlation and joint-vs-product sup distance of paired samples."""
    values = np.asarray(values, dtype=np.float64)
    return IndependenceReport(
        correlation=pearson(values[:, 0], values[:, 1]),
        joint_distance=joint_product_distance(values[:, 0], values[:, 1]),
        n_samples=len(values),
    )


def independence_diagnostic(
    N: int, M: int, sc: ShockConstants, *, master_seed: int = 0, stream: Stream = Stream.BULK
) -> tuple[IndependenceReport, np.ndarray]:
    """Report plus the underlying samples, so the marginals can be tested too."""
    values = one_point_samples(N, sc, M, master_seed=master_seed, stream=stream)
    return independence_report(values), values


# ---------------------------------------------------------------------
# Modulus of continuity
# ---------------------------------------------------------------------


def modulus_diagnostic(
    N: int,
    C: float,
    u_grid: np.ndarray,
    v_grid: np.ndarray,
    sc: ShockConstants,
    replicas: int,
    *,
    side: Side = "lambda",
    master_seed: int = 0,
) -> np.ndarray:
    """
    Per replica, max over the grid of |L^resc(u, v) - L^resc(0, 0)|.

    Raises
    ------
    InvalidParameterError
        If a grid point leaves [-C, C].
    """
    u_grid = np.asarray(u_grid, dtype=np.float64)
    v_grid = np.asarray(v_grid, dtype=np.float64)
    if np.any(np.abs(u_grid) > C) or np.any(np.abs(v_grid) > C):
        raise InvalidParameterError(f"Grids must lie within [-{C}, {C}]")
    points = [(0.0, 0.0)] + [(float(u), float(v)) for u in u_grid for v in v_grid]
    targets = [point_P(N, u, v, sc) for u, v in points]
    sup = np.empty(replicas)
    for r in range(replicas):
        raw = side_values(replica_field(master_seed, r), sc, side, targets)
        resc = np.array([rescale(float(raw[k]), N, u, v, side, sc) for k, (u, v) in enumerate(points)])
        sup[r] = np.max(np.abs(resc - resc[0]))
    return sup


# ---------------------------------------------------------------------
# Crossing of the two profiles
# ---------------------------------------------------------------------


def find_crossing(u_grid: np.ndarray, f_lambda: np.ndarray, f_rho: np.ndarray) -> float | None:
    """
    First u where f_lambda - f_rho changes sign, by linear interpolation.

    Returns None if the difference keeps one strict sign over the grid.
    """
    u = np.asarray(u_grid, dtype=np.float64)
    d = np.asarray(f_lambda, dtype=np.float64) - np.asarray(f_rho, dtype=np.float64)
    zero = np.flatnonzero(d == 0.0)
    change = np.flatnonzero(np.sign(d[:-1]) * np.sign(d[1:]) < 0)
    candidates = []
    if len(zero):
        candidates.append(float(u[zero[0]]))
    if len(change):
        k = int(change[0])
        candidates.append(float(u[k] + d[k] * (u[k + 1] - u[k]) / (d[k] - d[k + 1])))
    return min(candidates) if candidates else None


@dataclass(frozen=True, slots=True)
class CrossingSamples:
    """
    Crossings U with the one-point values chi at (0, 0).

    Replicas without a crossing in the scanned window are excluded and counted
    in `flagged`.
    """

    crossing: np.ndarray
    chi_lambda: np.ndarray
    chi_rho: np.ndarray
    upsilon: float
    flagged: int

    @property
    def deviation(self) -> np.ndarray:
        """U - (chi_lambda - chi_rho) / Upsilon."""
        return self.crossing - (self.chi_lambda - self.chi_rho) / self.upsilon


def drift_adjusted(values: np.ndarray, u_grid: np.ndarray, density: float) -> np.ndarray:
    """Rescaled profile minus its linear drift; two such profiles cross where the raw values do."""
    return values - side_slope(density) * u_grid


def crossing_diagnostic(
    N: int,
    sc: ShockConstants,
    replicas: int,
    *,
    u_grid: np.ndarray = CROSSING_GRID,
    master_seed: int = 0,
) -> CrossingSamples:
    u_grid = np.asarray(u_grid, dtype=np.float64)
    origin = int(np.argmin(np.abs(u_grid)))
    if u_grid[origin] != 0.0:
        raise InvalidParameterError("The crossing grid must contain u = 0")
    points = [(float(u), 0.0) for u in u_grid]
    crossing, chi_l, chi_r = [], [], []
    flagged = 0
    for r in range(replicas):
        samples = rescaled_values(replica_field(master_seed, r), N, sc, points)
        lam = np.array([s.value_lambda for s in samples])
        rho = np.array([s.value_rho for s in samples])
        u = find_crossing(
            u_grid, drift_adjusted(lam, u_grid, sc.lambda_), drift_adjusted(rho, u_grid, sc.rho)
        )
        if u is None:
            logger.warning("Replica %d: no crossing in [%g, %g]", r, u_grid[0], u_grid[-1])
            flagged += 1
            continue
        crossing.append(u)
        chi_l.append(lam[origin])
        chi_r.append(rho[origin])
    return CrossingSamples(
        crossing=np.array(crossing),
        chi_lambda=np.array(chi_l),
        chi_rho=np.array(chi_r),
        upsilon=sc.upsilon,
        flagged=flagged,
    )


# ---------------------------------------------------------------------
# Slow decorrelation and maximizer localization
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SlowDecorrelation:
    """corr(L_{L->P}, L_{L->E} + L_{E->P}) and the fitted centering of L_{E->P} per N^nu."""

    correlation: float
    centering: float
    nu: float
    replicas: int


def slow_decorrelation_diagnostic(
    N: int, nu: float, sc: ShockConstants, replicas: int, *, side: Side = "rho", master_seed: int = 0
) -> SlowDecorrelation:
    p = point_P(N, 0.0, 0.0, sc)
    e = characteristic_point(N, nu, sc, side)
    direct = np.empty(replicas)
    split = np.empty(replicas)
    tail = np.empty(replicas)
    for r in range(replicas):
        field = replica_field(master_seed, r)
        to_p, to_e = side_values(field, sc, side, [p, e])
        e_to_p = lpp_point_to_point(field, e, p)
        if e_to_p is None:
            raise InvalidParameterError(f"E={e} is not below P={p}")
        direct[r] = to_p
        # L_{E->P} excludes E's own weight, which L_{L->E} already counts
        split[r] = to_e + e_to_p.value
        tail[r] = e_to_p.value
    return SlowDecorrelation(
        correlation=pearson(direct, split),
        centering=float(tail.mean() / N**nu),
        nu=nu,
        replicas=replicas,
    )


def maximizer_localization_diagnostic(
    N: int,
    beta: float,
    sc: ShockConstants,
    replicas: int,
    *,
    side: Side = "rho",
    nu: float = DEFAULT_NU,
    master_seed: int = 0,
) -> float:
    """Fraction of replicas whose maximizer from L_side to E_side passes through a point D_eta."""
    d_points = d_eta_points(N, beta, sc)
    e = characteristic_point(N, nu, sc, side)
    starts = side_line(sc, side, [e])
    hits = 0
    for r in range(replicas):
        outcome = lpp_line_to_point(replica_field(master_seed, r), starts, e, want_path=True)
        if outcome is None or outcome.path is None:
            raise InvalidParameterError(f"E={e} sees no start point of L_{side}")
        hits += maximizer_hits(outcome.path, d_points)
    logger.info("Maximizers through D_eta: %d of %d at N=%d", hits, replicas, N)
    return hits / replicas
