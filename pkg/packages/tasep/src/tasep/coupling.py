"""
Second-class particle of the extended system and the Poisson bound on its moves.

In the extended configuration the second-class particle is the pair
(hole at pos(P) - 1, particle P), starting with P = 0 at site 1. When P jumps
the pair moves right; when particle P + 1 jumps into the hole the pair moves
left and P + 1 takes over. The pair sits at

    (pos(P) + P, P) = phi_n

so its jump times are the interface times and its position is I - J - 1.
"""

import logging
from dataclasses import dataclass

import numpy as np
from domain.errors import InsufficientHorizonError, InvalidParameterError
from domain.models import InterfacePath
from lattice.competition import ExtendedSetup
from lattice.weights import WeightSource
from scipy import stats

from tasep.clocked import simulate_clocked

logger = logging.getLogger(__name__)

QUANTILE_LEVELS = (0.5, 0.9, 0.99)


@dataclass(frozen=True, slots=True, eq=False)
class PairTrajectory:
    """Times of the pair's moves (starting with 0) and its position X after each."""

    times: np.ndarray
    positions: np.ndarray

    def position_at(self, t: float) -> int:
        if t < self.times[0]:
            raise InvalidParameterError(f"Trajectory starts at t={self.times[0]}, got {t}")
        return int(self.positions[np.searchsorted(self.times, t, side="right") - 1])

    def steps_at(self, t: float) -> int:
        return int(np.searchsorted(self.times, t, side="right")) - 1


def second_class_trajectory(field: WeightSource, setup: ExtendedSetup, horizon: float) -> PairTrajectory:
    """
    Moves of the (hole, particle) pair up to horizon.

    The run uses the setup's particles with jumps restricted to columns
    <= n_steps, which leaves every cell the interface can query exact.
    """
    run = simulate_clocked(field, setup.labels, setup.positions, horizon, setup.n_steps)
    pair = 0
    x = setup.position_of(0) - 1
    times = [0.0]
    positions = [x]
    for s, label, site in zip(run.event_times, run.event_labels, run.event_sites, strict=True):
        if label == pair:
            x += 1
        elif label == pair + 1 and site == x:
            pair += 1
            x -= 1
        else:
            continue
        times.append(float(s))
        positions.append(x)
    logger.debug("Pair made %d moves up to t=%.4g", len(times) - 1, horizon)
    return PairTrajectory(times=np.array(times), positions=np.array(positions, dtype=np.int64))


def interface_matches_trajectory(ip: InterfacePath, trajectory: PairTrajectory, horizon: float) -> bool:
    """
    The pair moves exactly at tau_2, tau_3, ... <= horizon and sits at I - J - 1 in between.

    Raises
    ------
    InsufficientHorizonError
        If the interface ends before horizon.
    """
    if ip.last_time <= horizon:
        raise InsufficientHorizonError(f"Interface ends at {ip.last_time:.6g} <= horizon {horizon}")
    keep = ip.times[1:] <= horizon
    times = ip.times[1:][keep]
    pts = ip.points[1:][keep]
    expected = pts[:, 0] - pts[:, 1] - 1
    if len(times) != len(trajectory.times):
        logger.warning("Interface made %d moves, the pair %d", len(times) - 1, len(trajectory.times) - 1)
        return False
    return bool(np.array_equal(times, trajectory.times) and np.array_equal(expected, trajectory.positions))


@dataclass(frozen=True, slots=True)
class PoissonDomination:
    """Empirical mean and quantiles of N_t next to those of Poisson(2t)."""

    t: float
    mean: float
    levels: tuple[float, ...]
    empirical: tuple[float, ...]
    poisson: tuple[float, ...]

    @property
    def dominated(self) -> bool:
        return self.mean <= 2.0 * self.t and all(e <= p for e, p in zip(self.empirical, self.poisson, strict=True))


def poisson_domination_report(n_samples: np.ndarray, t: float) -> PoissonDomination:
    """
    Compare step counts N_t with the Poisson(2t) bound.

    Raises
    ------
    InvalidParameterError
        If there are no samples or t <= 0.
    """
    n_samples = np.asarray(n_samples)
    if len(n_samples) == 0 or t <= 0:
        raise InvalidParameterError(f"Need samples and t > 0, got {len(n_samples)} samples and t={t}")
    bound = stats.poisson(2.0 * t)
    return PoissonDomination(
        t=t,
        mean=float(n_samples.mean()),
        levels=QUANTILE_LEVELS,
        empirical=tuple(float(q) for q in np.quantile(n_samples, QUANTILE_LEVELS)),
        poisson=tuple(float(q) for q in bound.ppf(QUANTILE_LEVELS)),
    )
