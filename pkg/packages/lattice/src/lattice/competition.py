"""
Competition interface between the clusters grown from the two halves of the TASEP line.

The second-class particle at the origin is replaced by a hole at 0 and a
particle labelled 0 at site 1. The left half of the configuration stays put;
the right half moves one site to the right:

    x_k(0) = -floor(k / lambda)       k > 0
    x_0(0) = 1
    x_k(0) = ceil(|k| / rho) + 1      k < 0

L+ holds the line points of rows k > 0 and L- those of rows k <= 0, so
phi_1 = (1, 0) is the line point of particle 0 and tau_1 = 0. A cell p belongs
to the plus cluster iff L_{L+ -> p} > L_{L- -> p}. The plus cluster sits
up-left of the interface and the minus cluster down-right of it.

    phi_{n+1} = phi_n + (1, 0)   if phi_n + (1, 1) is plus
              = phi_n + (0, 1)   otherwise

The second-class particle sits at I(t) - J(t) - 1 for t in [tau_n, tau_{n+1}).
"""

import logging
from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np
from domain.errors import DegenerateTieError, InsufficientHorizonError, InvalidParameterError
from domain.models import InterfacePath, Point, SeedSpec, ShockConstants, ShockSample, StartSet
from domain.types import Cluster
from theory.geometry import point_P

from lattice.engine import Diagonal, lpp_line_to_point, sweep_diagonals
from lattice.lines import extended_position, tasep_line
from lattice.weights import WeightField, WeightSource, derive_replica_seed

logger = logging.getLogger(__name__)

MAX_LAMBDA = 0.5
MAX_GROWTHS = 8


@dataclass(frozen=True, slots=True, eq=False)
class ExtendedSetup:
    """Extended initial configuration and its split line, sized for n_steps interface steps."""

    lambda_: float
    rho: float
    n_steps: int
    labels: np.ndarray
    positions: np.ndarray
    plus: StartSet
    minus: StartSet

    @property
    def corner(self) -> Point:
        return self.n_steps, self.n_steps

    def position_of(self, label: int) -> int:
        hit = np.flatnonzero(self.labels == label)
        if len(hit) == 0:
            raise InvalidParameterError(f"No particle labelled {label} in the setup")
        return int(self.positions[hit[0]])


def extended_setup(lambda_: float, rho: float, n_steps: int) -> ExtendedSetup:
    """
    Lines L+ and L- covering every cell the first n_steps interface steps can query.

    Plus rows run 1..n_steps; minus rows run down while the line point stays
    within column n_steps.

    Raises
    ------
    InvalidParameterError
        If lambda > 1/2 (particle 1 would sit next to the hole), a density
        leaves (0, 1) or n_steps < 1.
    """
    if not 0.0 < lambda_ <= MAX_LAMBDA:
        raise InvalidParameterError(f"The extended construction needs 0 < lambda <= 1/2, got {lambda_}")
    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1), got {rho}")
    if n_steps < 1:
        raise InvalidParameterError(f"n_steps must be >= 1, got {n_steps}")

    plus_labels = np.arange(n_steps, 0, -1, dtype=np.int64)
    plus_pos = np.array([extended_position(int(k), lambda_, rho) for k in plus_labels], dtype=np.int64)

    minus_labels: list[int] = [0]
    minus_pos: list[int] = [1]
    k = -1
    while (x := extended_position(k, lambda_, rho)) + k <= n_steps:
        minus_labels.append(k)
        minus_pos.append(x)
        k -= 1

    labels = np.concatenate((plus_labels, np.array(minus_labels, dtype=np.int64)))
    positions = np.concatenate((plus_pos, np.array(minus_pos, dtype=np.int64)))
    logger.debug("Extended setup: %d plus rows, %d minus rows", len(plus_labels), len(minus_labels))
    return ExtendedSetup(
        lambda_=lambda_,
        rho=rho,
        n_steps=n_steps,
        labels=labels,
        positions=positions,
        plus=tasep_line(plus_labels, plus_pos),
        minus=tasep_line(np.array(minus_labels), np.array(minus_pos)),
    )


def _winner(plus: float, minus: float, cell: Point) -> Cluster:
    if plus == minus:
        raise DegenerateTieError(f"Equal passage times {plus!r} from both halves at {cell}")
    return "plus" if plus > minus else "minus"


def cluster_of(field: WeightSource, setup: ExtendedSetup, p: Point) -> Cluster:
    """
    Cluster of p from two independent line-to-point solves.

    Raises
    ------
    DegenerateTieError
        If both halves reach p at exactly the same time.
    """
    plus = lpp_line_to_point(field, setup.plus, p)
    minus = lpp_line_to_point(field, setup.minus, p)
    return _winner(
        -np.inf if plus is None else plus.value,
        -np.inf if minus is None else minus.value,
        p,
    )


def _first_diagonal(starts: StartSet) -> int:
    return int((starts.i + starts.j).min())


def competition_interface(field: WeightSource, setup: ExtendedSetup) -> InterfacePath:
    """
    phi_0, ..., phi_{n_steps} with tau_k = L_{L -> phi_k}.

    Both clusters are grown in lockstep, one anti-diagonal at a time. Cell
    phi_{d-2} + (1, 1) lies on diagonal d, so phi_{d-1} is settled once
    diagonal d is known; its time comes from diagonal d - 1.
    """
    n = setup.n_steps
    points: list[Point] = [(0, 0), (1, 0)]
    times: list[float] = [-np.inf, 0.0]
    if n > 1:
        d0 = min(_first_diagonal(setup.plus), _first_diagonal(setup.minus))
        plus_sweep = sweep_diagonals(field, setup.plus, setup.corner, d_start=d0)
        minus_sweep = sweep_diagonals(field, setup.minus, setup.corner, d_start=d0)
        prev: tuple[Diagonal, Diagonal] | None = None
        for plus, minus in zip(plus_sweep, minus_sweep, strict=True):
            if plus.d >= 3 and prev is not None:
                i, j = points[-1]
                cell = (i + 1, j + 1)
                side = _winner(plus.lookup(cell[0])[0], minus.lookup(cell[0])[0], cell)
                step = (i + 1, j) if side == "plus" else (i, j + 1)
                points.append(step)
                times.append(max(prev[0].lookup(step[0])[0], prev[1].lookup(step[0])[0]))
                if len(points) == n + 1:
                    break
            prev = (plus, minus)
    return InterfacePath(points=np.array(points, dtype=np.int64), times=np.array(times))


def interface_index(ip: InterfacePath, t: float) -> int:
    """
    n with t in [tau_n, tau_{n+1}).

    Raises
    ------
    InsufficientHorizonError
        If t >= tau of the last computed point.
    """
    if t >= ip.last_time:
        raise InsufficientHorizonError(f"t={t} is beyond the last interface time {ip.last_time:.6g}")
    return int(np.searchsorted(ip.times, t, side="right")) - 1


def second_class_from_interface(ip: InterfacePath, t: float) -> int:
    """X_t = I(t) - J(t) - 1."""
    i, j = ip.point(interface_index(ip, t))
    return i - j - 1


def steps_from_interface(ip: InterfacePath, t: float) -> int:
    """N_t: moves of the second-class particle up to t, one per interface step after phi_1."""
    return max(interface_index(ip, t) - 1, 0)


def initial_steps(t: float) -> int:
    return ceil(2.0 * t + 10.0 * sqrt(t) + 10.0)


def interface_trajectory(
    field: WeightSource, lambda_: float, rho: float, horizon: float, *, n_steps: int | None = None
) -> InterfacePath:
    """Interface long enough that its last time exceeds horizon; n_steps doubles until it does."""
    steps = initial_steps(horizon) if n_steps is None else n_steps
    for _ in range(MAX_GROWTHS):
        ip = competition_interface(field, extended_setup(lambda_, rho, steps))
        if ip.last_time > horizon:
            return ip
        logger.info("Interface with %d steps ends at %.4g <= %.4g, doubling", steps, ip.last_time, horizon)
        steps *= 2
    raise InsufficientHorizonError(f"Interface did not reach t={horizon} within {steps} steps")


def interface_shock_sample(
    lambda_: float,
    rho: float,
    t: float,
    *,
    master_seed: int,
    replica: int,
    constants: ShockConstants | None,
) -> ShockSample:
    """(X_t, N_t) of one replica through the competition interface."""
    field = WeightField(SeedSpec(derive_replica_seed(master_seed, replica)))
    ip = interface_trajectory(field, lambda_, rho, t)
    return ShockSample.from_raw(
        replica=replica,
        t=t,
        x_t=second_class_from_interface(ip, t),
        n_t=steps_from_interface(ip, t),
        lambda_=lambda_,
        rho=rho,
        constants=constants,
    )


def cluster_consistency_check(
    field: WeightSource, setup: ExtendedSetup, ip: InterfacePath, indices: list[int] | None = None
) -> bool:
    """
    Recompute the cluster of phi_n + (1, 1) with independent solves and compare with the step taken.

    A step (1, 0) leaves phi_n + (1, 1) up-left of the interface (plus), a step
    (0, 1) leaves it down-right (minus).
    """
    checked = range(1, len(ip) - 1) if indices is None else indices
    ok = True
    for n in checked:
        i, j = ip.point(n)
        step = ip.point(n + 1)
        expected: Cluster = "plus" if step == (i + 1, j) else "minus"
        got = cluster_of(field, setup, (i + 1, j + 1))
        if got != expected:
            logger.warning("Cell %s is %s but the interface stepped as if %s", (i + 1, j + 1), got, expected)
            ok = False
    return ok


def minus_cluster_probability(
    n: int, u: float, sc: ShockConstants, replicas: int, *, master_seed: int = 0
) -> tuple[float, float]:
    """Fraction of replicas with P(u n^{1/3}) in the minus cluster, with its standard error."""
    p = point_P(n, u, 0.0, sc)
    setup = extended_setup(sc.lambda_, sc.rho, max(p))
    hits = 0
    for r in range(replicas):
        field = WeightField(SeedSpec(derive_replica_seed(master_seed, r)))
        hits += cluster_of(field, setup, p) == "minus"
    q = hits / replicas
    return q, float(np.sqrt(q * (1.0 - q) / replicas))
