"""
Stationary last passage percolation from the inclined line L^inf_lambda.

Boundary potentials, with p_i ~ Exp(1 - varrho) and q_i ~ Exp(varrho):

    S_p(c) = sum_{i=1}^{c} p_i  (c >= 0),   -sum_{i=c+1}^{0} p_i  (c < 0)
    S_q(k) likewise with q
    omega(k) = -S_p(-l(k)) + S_q(k),   l(k) = floor((lambda - 1) k / lambda)

so omega(0) = 0 and omega(2) = -(p_1 + p_2) + (q_1 + q_2) for lambda = 1/2.

The boundary sits on the connected down-right staircase through the line
points: cell (x, k) carries -S_p(-x) + S_q(k), which equals omega(k) at the line
point of row k. Horizontal boundary steps add a p, vertical steps a q, so the
passage times above the staircase have i.i.d. Exp(1 - varrho) horizontal
increments. Exits are reported as the row k of the staircase cell.

Targets P(x) = P + x (1, -1) move down-right as x grows, hence exit rows are
nonincreasing in x. Exit comparisons use the position along the staircase,
which refines the row order.
"""

import logging
from dataclasses import dataclass
from math import ceil

import numpy as np
from domain.errors import InvalidParameterError, WindowTooSmallError
from domain.models import Point, SeedSpec, ShockConstants, StartSet, StationaryOutcome
from domain.types import Stream
from scipy import stats
from theory.geometry import point_P

from lattice.engine import lpp_line_to_points
from lattice.lines import lambda_line, line_column
from lattice.weights import WeightField, WeightSource, derive_replica_seed, exponential_sequence

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9
MIN_HALFWIDTH = 20
MAX_DOUBLINGS = 6


# ---------------------------------------------------------------------
# Boundary weights
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True, eq=False)
class BoundaryWeightSeq:
    """
    Boundary potentials of one stationary model.

    `q_potential[k - k_lo]` is S_q(k) for rows k_lo..k_hi and
    `p_potential[c - c_lo]` is S_p(c) for the columns -x the staircase visits.
    """

    lambda_line: float
    varrho: float
    k_lo: int
    q_potential: np.ndarray
    c_lo: int
    p_potential: np.ndarray

    @property
    def k_hi(self) -> int:
        return self.k_lo + len(self.q_potential) - 1

    def cell_value(self, x: int, k: int) -> float:
        """Boundary value of the staircase cell (x, k)."""
        return float(-self.p_potential[-x - self.c_lo] + self.q_potential[k - self.k_lo])

    def at(self, k: int) -> float:
        """omega(k) at the line point of row k."""
        if not self.k_lo <= k <= self.k_hi:
            raise InvalidParameterError(f"Row {k} outside boundary rows [{self.k_lo}, {self.k_hi}]")
        return self.cell_value(line_column(self.lambda_line, k), k)

    @property
    def values(self) -> np.ndarray:
        return np.array([self.at(k) for k in range(self.k_lo, self.k_hi + 1)])


def _potential(seed: SeedSpec, rate: float, lo: int, hi: int) -> np.ndarray:
    """S(c) for c = lo..hi from the flat exponential sequence of `seed`."""
    a, b = min(lo, 0), max(hi, 0)
    draws = exponential_sequence(seed, a + 1, b - a, rate)
    cums = np.concatenate(([0.0], np.cumsum(draws)))
    full = cums - cums[-a]
    return full[lo - a : hi - a + 1]


def boundary_weights(lambda_line: float, varrho: float, k_lo: int, k_hi: int, seed: SeedSpec) -> BoundaryWeightSeq:
    """
    Boundary potentials for rows k_lo..k_hi of L^inf_lambda at density varrho.

    p and q are drawn from the BOUNDARY_P and BOUNDARY_Q streams of the seed's
    master seed.

    Raises
    ------
    InvalidParameterError
        If varrho or lambda_line is outside (0, 1) or the row range is empty.
    """
    if not 0.0 < varrho < 1.0:
        raise InvalidParameterError(f"varrho must lie in (0, 1), got {varrho}")
    if not 0.0 < lambda_line < 1.0:
        raise InvalidParameterError(f"lambda_line must lie in (0, 1), got {lambda_line}")
    if k_lo > k_hi:
        raise InvalidParameterError(f"Empty row range [{k_lo}, {k_hi}]")
    # the staircase of rows k_lo..k_hi spans columns l(k_hi)..l(k_lo)
    c_lo, c_hi = -line_column(lambda_line, k_lo), -line_column(lambda_line, k_hi)
    return BoundaryWeightSeq(
        lambda_line=lambda_line,
        varrho=varrho,
        k_lo=k_lo,
        q_potential=_potential(seed.with_stream(Stream.BOUNDARY_Q), varrho, k_lo, k_hi),
        c_lo=c_lo,
        p_potential=_potential(seed.with_stream(Stream.BOUNDARY_P), 1.0 - varrho, c_lo, c_hi),
    )


def staircase(bw: BoundaryWeightSeq) -> StartSet:
    """Connected down-right staircase through the line points of rows k_hi..k_lo, with boundary values."""
    lam = bw.lambda_line
    xs: list[int] = [line_column(lam, bw.k_hi)]
    ks: list[int] = [bw.k_hi]
    for k in range(bw.k_hi - 1, bw.k_lo - 1, -1):
        for x in range(line_column(lam, k + 1), line_column(lam, k) + 1):
            xs.append(x)
            ks.append(k)
    i = np.array(xs, dtype=np.int64)
    j = np.array(ks, dtype=np.int64)
    boundary = -bw.p_potential[-i - bw.c_lo] + bw.q_potential[j - bw.k_lo]
    return StartSet(i=i, j=j, boundary=boundary, labels=j.copy())


# ---------------------------------------------------------------------
# Geometry of the truncation window
# ---------------------------------------------------------------------


def characteristic_exit(lambda_line: float, varrho: float, target: Point) -> float:
    """Row where the density-varrho characteristic through target meets L^inf_lambda."""
    slope = (1.0 - varrho) ** 2 / varrho**2
    return (target[0] - slope * target[1]) / ((lambda_line - 1.0) / lambda_line - slope)


def default_halfwidth(n: int) -> int:
    return max(MIN_HALFWIDTH, ceil(12.0 * n ** (2.0 / 3.0)))


def shock_target(n: int, sc: ShockConstants, x: float) -> Point:
    """P(x) = P + x (1, -1) for the shock end-point P at scale n."""
    return point_P(n, x / n ** (1.0 / 3.0), 0.0, sc)


def position_key(cell: Point) -> tuple[int, int]:
    """Order along a down-right chain: larger keys lie further up-left."""
    return cell[1], -cell[0]


# ---------------------------------------------------------------------
# Stationary last passage times
# ---------------------------------------------------------------------


def _binding(bw: BoundaryWeightSeq, exit_k: int, target: Point) -> bool:
    """True if the exit row sits on a truncation edge that still cuts off admissible starts."""
    top = exit_k == bw.k_hi and bw.k_hi < target[1]
    bottom = exit_k == bw.k_lo and line_column(bw.lambda_line, bw.k_lo) <= target[0]
    return top or bottom


def stationary_profile(
    field: WeightSource,
    bw: BoundaryWeightSeq,
    targets: list[Point],
    *,
    halfwidth: int = 0,
    strict: bool = True,
) -> list[StationaryOutcome]:
    """
    Stationary values and exits at several targets from one sweep.

    Raises
    ------
    WindowTooSmallError
        If a maximiser exits on a binding edge of the truncated line.
    InvalidParameterError
        If a target sees no start point.
    """
    starts = staircase(bw)
    outcomes = lpp_line_to_points(field, starts, targets)
    result: list[StationaryOutcome] = []
    for target, outcome in zip(targets, outcomes, strict=True):
        if outcome is None:
            raise InvalidParameterError(f"Target {target} lies below the truncated line")
        exit_k = int(starts.labels[outcome.exit_index])
        if strict and _binding(bw, exit_k, target):
            raise WindowTooSmallError(
                f"Stationary exit at truncation row {exit_k} for target {target}", exit_k=exit_k
            )
        result.append(
            StationaryOutcome(
                value=outcome.value,
                exit_k=exit_k,
                exit_cell=starts.point(outcome.exit_index),
                halfwidth=halfwidth,
            )
        )
    return result


def stationary_lpp(
    field: WeightSource, bw: BoundaryWeightSeq, target: Point, *, strict: bool = True
) -> StationaryOutcome:
    """max over staircase cells of boundary + L_{cell -> target}, with its exit row."""
    return stationary_profile(field, bw, [target], strict=strict)[0]


def stationary_profile_auto(
    field: WeightSource,
    seed: SeedSpec,
    lambda_line: float,
    varrho: float,
    targets: list[Point],
    *,
    n: int,
    halfwidth: int | None = None,
    max_doublings: int = MAX_DOUBLINGS,
) -> list[StationaryOutcome]:
    """
    Stationary profile on a row window around the characteristic exits.

    The window spans [min centre - w, max centre + w] with w = max(20, 12 n^{2/3})
    by default and is doubled while a maximiser exits on a binding edge.
    """
    width = default_halfwidth(n) if halfwidth is None else halfwidth
    centres = [characteristic_exit(lambda_line, varrho, t) for t in targets]
    for attempt in range(max_doublings + 1):
        k_lo = int(np.floor(min(centres))) - width
        k_hi = int(np.ceil(max(centres))) + width
        bw = boundary_weights(lambda_line, varrho, k_lo, k_hi, seed)
        try:
            return stationary_profile(field, bw, targets, halfwidth=width)
        except WindowTooSmallError as e:
            if attempt == max_doublings:
                raise
            logger.info("Exit at row %d on the window edge, doubling half-width %d", e.exit_k, width)
            width *= 2
    raise AssertionError("unreachable")


def stationary_lpp_auto(
    field: WeightSource,
    seed: SeedSpec,
    lambda_line: float,
    varrho: float,
    target: Point,
    *,
    n: int,
    halfwidth: int | None = None,
) -> StationaryOutcome:
    return stationary_profile_auto(field, seed, lambda_line, varrho, [target], n=n, halfwidth=halfwidth)[0]


@dataclass(frozen=True, slots=True)
class LineExit:
    """Line-to-point value from L_lambda with its exit cell and row."""

    value: float
    exit_k: int
    exit_cell: Point


def lambda_line_profile(field: WeightSource, lambda_: float, targets: list[Point]) -> list[LineExit]:
    """Values and exits Z_lambda from the half line L_lambda (rows k >= 0) at several targets."""
    top = max(t[1] for t in targets)
    starts = lambda_line(lambda_, 0, max(top, 0))
    result: list[LineExit] = []
    for target, outcome in zip(targets, lpp_line_to_points(field, starts, targets), strict=True):
        if outcome is None:
            raise InvalidParameterError(f"Target {target} lies below L_lambda")
        result.append(
            LineExit(
                value=outcome.value,
                exit_k=int(starts.labels[outcome.exit_index]),
                exit_cell=starts.point(outcome.exit_index),
            )
        )
    return result


def _replica_fields(master_seed: int, replica: int) -> tuple[WeightField, SeedSpec]:
    seed = SeedSpec(derive_replica_seed(master_seed, replica))
    return WeightField(seed), seed


def perturbed_densities(lambda_: float, r: float, n: int) -> tuple[float, float]:
    """
    (lambda_-, lambda_+) = lambda -+ r n^{-1/3}.

    Raises
    ------
    InvalidParameterError
        If either density leaves (0, 1).
    """
    shift = r / n ** (1.0 / 3.0)
    low, high = lambda_ - shift, lambda_ + shift
    if not (0.0 < low < 1.0 and 0.0 < high < 1.0):
        raise InvalidParameterError(
            f"lambda -+ r n^(-1/3) = ({low:.6g}, {high:.6g}) leaves (0, 1) for r={r}, n={n}"
        )
    return low, high


# ---------------------------------------------------------------------
# Coupling lemma
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CouplingReport:
    """Premises and conclusions of the two coupling inequalities for one instance."""

    upside_premise: bool
    upside_holds: bool
    downside_premise: bool
    downside_holds: bool
    stationary_increment: float
    line_increment: float

    @property
    def violated(self) -> bool:
        return (self.upside_premise and not self.upside_holds) or (self.downside_premise and not self.downside_holds)


def _leq(a: float, b: float) -> bool:
    return a <= b + TOLERANCE * max(1.0, abs(a), abs(b))


def coupling_report(
    stat: tuple[StationaryOutcome, StationaryOutcome],
    line: tuple[LineExit, LineExit],
) -> CouplingReport:
    """
    Evaluate both inequalities for targets P(x1), P(x2) with x1 < x2.

    Upside: if the stationary exit at x1 lies weakly down-right of the line exit at x2,
    then L(x2) - L(x1) <= L^stat(x2) - L^stat(x1). Downside: if the line exit at x1 lies
    weakly down-right of the stationary exit at x2, the reverse inequality holds.
    """
    d_stat = stat[1].value - stat[0].value
    d_line = line[1].value - line[0].value
    up = position_key(stat[0].exit_cell) <= position_key(line[1].exit_cell)
    down = position_key(line[0].exit_cell) <= position_key(stat[1].exit_cell)
    return CouplingReport(
        upside_premise=up,
        upside_holds=_leq(d_line, d_stat),
        downside_premise=down,
        downside_holds=_leq(d_stat, d_line),
        stationary_increment=d_stat,
        line_increment=d_line,
    )


def coupling_inequality_check(
    field: WeightSource,
    bw: BoundaryWeightSeq,
    lambda_: float,
    target1: Point,
    target2: Point,
) -> CouplingReport:
    """Coupling inequalities for one field, boundary and pair of targets (target1 up-left of target2)."""
    stat = stationary_profile(field, bw, [target1, target2])
    line = lambda_line_profile(field, lambda_, [target1, target2])
    report = coupling_report((stat[0], stat[1]), (line[0], line[1]))
    if report.violated:
        logger.warning("Coupling inequality violated for targets %s, %s: %s", target1, target2, report)
    return report


def coupling_instance(
    n: int, sc: ShockConstants, varrho: float, x1: float, x2: float, *, master_seed: int, replica: int
) -> CouplingReport:
    """One random instance at scale n with shared bulk weights."""
    if not 0.0 <= x1 <= x2:
        raise InvalidParameterError(f"Need 0 <= x1 <= x2, got x1={x1}, x2={x2}")
    field, seed = _replica_fields(master_seed, replica)
    targets = [shock_target(n, sc, x1), shock_target(n, sc, x2)]
    stat = stationary_profile_auto(field, seed, sc.lambda_, varrho, targets, n=n)
    line = lambda_line_profile(field, sc.lambda_, targets)
    return coupling_report((stat[0], stat[1]), (line[0], line[1]))


# ---------------------------------------------------------------------
# Exit points
# ---------------------------------------------------------------------


def exit_order_check(outcomes: list[StationaryOutcome] | list[LineExit]) -> bool:
    """Exit positions along the line are nonincreasing for targets ordered by increasing x."""
    keys = [position_key(o.exit_cell) for o in outcomes]
    return all(b <= a for a, b in zip(keys, keys[1:], strict=False))


@dataclass(frozen=True, slots=True)
class ExitTailProfile:
    """
    Empirical tails P(|Z - centre| >= M n^{2/3}) of stationary and line exits.

    `truncated` flags M values beyond the truncation window, where the
    stationary estimate is a lower bound.
    """

    n: int
    m_grid: np.ndarray
    stationary: np.ndarray
    line: np.ndarray
    truncated: np.ndarray

    def gaussian_fit(self) -> tuple[float, float] | None:
        """Slope and R^2 of log tail against M^2 over the estimable stationary range."""
        keep = (self.stationary > 0) & ~self.truncated
        if keep.sum() < 3:
            return None
        fit = stats.linregress(self.m_grid[keep] ** 2, np.log(self.stationary[keep]))
        return float(fit.slope), float(fit.rvalue**2)

    @property
    def nonincreasing(self) -> bool:
        return bool(np.all(np.diff(self.stationary) <= 0) and np.all(np.diff(self.line) <= 0))


def exit_tail_profile(
    n: int,
    sc: ShockConstants,
    varrho: float,
    c: float,
    m_grid: np.ndarray,
    replicas: int,
    *,
    master_seed: int = 0,
) -> ExitTailProfile:
    """Tails of Z^stat(c n^{1/3}) and Z_lambda(c n^{1/3}) around their characteristic exits."""
    m_grid = np.asarray(m_grid, dtype=np.float64)
    if np.any(m_grid <= 0) or np.any(np.diff(m_grid) <= 0):
        raise InvalidParameterError("m_grid must be positive and increasing")
    target = shock_target(n, sc, c * n ** (1.0 / 3.0))
    stat_centre = characteristic_exit(sc.lambda_, varrho, target)
    line_centre = characteristic_exit(sc.lambda_, sc.lambda_, target)
    scale = n ** (2.0 / 3.0)
    stat_dev = np.empty(replicas)
    line_dev = np.empty(replicas)
    for r in range(replicas):
        field, seed = _replica_fields(master_seed, r)
        stat_dev[r] = abs(stationary_lpp_auto(field, seed, sc.lambda_, varrho, target, n=n).exit_k - stat_centre)
        line_dev[r] = abs(lambda_line_profile(field, sc.lambda_, [target])[0].exit_k - line_centre)
    thresholds = m_grid * scale
    return ExitTailProfile(
        n=n,
        m_grid=m_grid,
        stationary=(stat_dev[None, :] >= thresholds[:, None]).mean(axis=1),
        line=(line_dev[None, :] >= thresholds[:, None]).mean(axis=1),
        truncated=thresholds > default_halfwidth(n),
    )


def exit_translation_samples(
    n: int, sc: ShockConstants, shifts: int, replicas: int, *, master_seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """
    Exit rows Z^stat(0) and Z^stat(shifted) - shift rows on independent replica sets.

    The shift moves the target by `shifts` periods of the line itself, so both
    samples have the same law.
    """
    period = _line_period(sc.lambda_)
    base = shock_target(n, sc, 0.0)
    moved = (base[0] + shifts * period[0], base[1] + shifts * period[1])
    z0 = np.empty(replicas, dtype=np.int64)
    z1 = np.empty(replicas, dtype=np.int64)
    for r in range(replicas):
        field, seed = _replica_fields(master_seed, r)
        z0[r] = stationary_lpp_auto(field, seed, sc.lambda_, sc.lambda_, base, n=n).exit_k
        field, seed = _replica_fields(master_seed, replicas + r)
        z1[r] = stationary_lpp_auto(field, seed, sc.lambda_, sc.lambda_, moved, n=n).exit_k - shifts * period[1]
    return z0, z1


def _line_period(lambda_: float) -> tuple[int, int]:
    """Smallest lattice vector (di, dk) mapping L^inf_lambda onto itself."""
    for dk in range(1, 1001):
        di = (lambda_ - 1.0) * dk / lambda_
        if abs(di - round(di)) < 1e-9:
            return int(round(di)), dk
    raise InvalidParameterError(f"L^inf_lambda has no short period for lambda={lambda_}")


def horizontal_increments(
    n: int, sc: ShockConstants, varrho: float, replicas: int, *, count: int = 1, master_seed: int = 0
) -> np.ndarray:
    """L^stat(P + (a + 1, 0)) - L^stat(P + (a, 0)) for a < count, one row per replica."""
    p = shock_target(n, sc, 0.0)
    row = [(p[0] + a, p[1]) for a in range(count + 1)]
    out = np.empty((replicas, count))
    for r in range(replicas):
        field, seed = _replica_fields(master_seed, r)
        values = np.array([o.value for o in stationary_profile_auto(field, seed, sc.lambda_, varrho, row, n=n)])
        out[r] = np.diff(values)
    return out


# ---------------------------------------------------------------------
# Good event, rescaled stationary process and sandwich
# ---------------------------------------------------------------------


def _good_event(
    stat_plus0: StationaryOutcome, stat_minus_c: StationaryOutcome, line0: LineExit, line_c: LineExit
) -> bool:
    """{Z^stat,+(0) <= Z_lambda(C)} and {Z_lambda(0) <= Z^stat,-(C)} along the line."""
    first = position_key(stat_plus0.exit_cell) <= position_key(line_c.exit_cell)
    second = position_key(line0.exit_cell) <= position_key(stat_minus_c.exit_cell)
    return first and second


@dataclass(frozen=True, slots=True)
class GoodEventEstimate:
    r: float
    complement: float
    stderr: float
    replicas: int


def good_event_probability(
    n: int, r: float, c: float, sc: ShockConstants, replicas: int, *, master_seed: int = 0
) -> GoodEventEstimate:
    """
    Monte Carlo estimate of P(G_N(r)^c).

    Raises
    ------
    InvalidParameterError
        If r <= 0 or lambda -+ r n^{-1/3} leaves (0, 1).
    """
    if r <= 0:
        raise InvalidParameterError(f"r must be positive, got {r}")
    low, high = perturbed_densities(sc.lambda_, r, n)
    p0, pc = shock_target(n, sc, 0.0), shock_target(n, sc, c * n ** (1.0 / 3.0))
    misses = 0
    for rep in range(replicas):
        field, seed = _replica_fields(master_seed, rep)
        line0, line_c = lambda_line_profile(field, sc.lambda_, [p0, pc])
        stat_plus0 = stationary_lpp_auto(field, seed, sc.lambda_, high, p0, n=n)
        stat_minus_c = stationary_lpp_auto(field, seed, sc.lambda_, low, pc, n=n)
        misses += not _good_event(stat_plus0, stat_minus_c, line0, line_c)
    q = misses / replicas
    logger.info("Good event at n=%d, r=%.3g: complement %.4f over %d replicas", n, r, q, replicas)
    return GoodEventEstimate(r=r, complement=q, stderr=float(np.sqrt(q * (1.0 - q) / replicas)), replicas=replicas)


@dataclass(frozen=True, slots=True)
class StationaryIncrements:
    """
    Rescaled stationary increments on a u grid, one row per replica.

    b       = (L^stat(P(u n^{1/3})) - L^stat(P(0)) + c_lambda u n^{1/3}) / n^{1/3}
    walk    = (L^stat(P(u n^{1/3})) - L^stat(P(0)) - mean) / n^{1/6}
    shifts  = realised lattice shifts x of the targets P(x)
    """

    u_grid: np.ndarray
    b: np.ndarray
    walk: np.ndarray
    shifts: np.ndarray
    varrho: float

    def walk_variance_rate(self) -> float:
        """Variance of the walk per unit of the n^{1/3}-scaled shift, 1/(1-varrho)^2 + 1/varrho^2."""
        return 1.0 / (1.0 - self.varrho) ** 2 + 1.0 / self.varrho**2


def _u_targets(n: int, sc: ShockConstants, u_grid: np.ndarray) -> list[Point]:
    return [shock_target(n, sc, u * n ** (1.0 / 3.0)) for u in u_grid]


def stationary_rescaled_increments(
    n: int,
    sc: ShockConstants,
    u_grid: np.ndarray,
    r: float,
    sign: int,
    replicas: int,
    *,
    master_seed: int = 0,
) -> StationaryIncrements:
    """Samples of B^{+-}_{N,lambda}(u) (sign = +1 or -1) and the centred walk."""
    if sign not in (1, -1):
        raise InvalidParameterError(f"sign must be +1 or -1, got {sign}")
    u_grid = np.asarray(u_grid, dtype=np.float64)
    low, high = perturbed_densities(sc.lambda_, r, n) if r > 0 else (sc.lambda_, sc.lambda_)
    varrho = high if sign > 0 else low
    scale = n ** (1.0 / 3.0)
    targets = [shock_target(n, sc, 0.0), *_u_targets(n, sc, u_grid)]
    shifts = np.array([t[0] - targets[0][0] for t in targets[1:]], dtype=np.float64)
    c_lambda = (1.0 - 2.0 * sc.lambda_) / (sc.lambda_ * (1.0 - sc.lambda_))
    drift = (2.0 * varrho - 1.0) / (varrho * (1.0 - varrho))
    b = np.empty((replicas, len(u_grid)))
    walk = np.empty((replicas, len(u_grid)))
    for rep in range(replicas):
        field, seed = _replica_fields(master_seed, rep)
        outcomes = stationary_profile_auto(field, seed, sc.lambda_, varrho, targets, n=n)
        diff = np.array([o.value - outcomes[0].value for o in outcomes[1:]])
        b[rep] = (diff + c_lambda * u_grid * scale) / scale
        walk[rep] = (diff - drift * shifts) / n ** (1.0 / 6.0)
    return StationaryIncrements(u_grid=u_grid, b=b, walk=walk, shifts=shifts, varrho=varrho)


@dataclass(frozen=True, slots=True)
class SandwichResult:
    good_event: bool
    holds: bool


def sandwich_check(
    field: WeightSource,
    seed: SeedSpec,
    n: int,
    sc: ShockConstants,
    r: float,
    c: float,
    u_grid: np.ndarray,
) -> SandwichResult:
    """
    Per-sample sandwich on G_N(r) over 0 <= u < v <= c.

    On the good event the increments of L_lambda between consecutive grid
    points lie between the increments of the stationary models at lambda_-
    and lambda_+.
    """
    u_grid = np.asarray(u_grid, dtype=np.float64)
    if np.any(u_grid < 0) or np.any(u_grid > c) or np.any(np.diff(u_grid) <= 0):
        raise InvalidParameterError("u_grid must increase within [0, c]")
    low, high = perturbed_densities(sc.lambda_, r, n)
    p0, pc = shock_target(n, sc, 0.0), shock_target(n, sc, c * n ** (1.0 / 3.0))
    targets = _u_targets(n, sc, u_grid)
    line = lambda_line_profile(field, sc.lambda_, [p0, pc, *targets])
    plus = stationary_profile_auto(field, seed, sc.lambda_, high, [p0, pc, *targets], n=n)
    minus = stationary_profile_auto(field, seed, sc.lambda_, low, [p0, pc, *targets], n=n)
    if not _good_event(plus[0], minus[1], line[0], line[1]):
        return SandwichResult(good_event=False, holds=True)
    holds = True
    for a in range(2, len(targets) + 1):
        d_line = line[a + 1].value - line[a].value
        d_plus = plus[a + 1].value - plus[a].value
        d_minus = minus[a + 1].value - minus[a].value
        if not (_leq(d_minus, d_line) and _leq(d_line, d_plus)):
            logger.warning(
                "Sandwich fails between %s and %s: %.12g <= %.12g <= %.12g",
                targets[a - 2],
                targets[a - 1],
                d_minus,
                d_line,
                d_plus,
            )
            holds = False
    return SandwichResult(good_event=True, holds=holds)
