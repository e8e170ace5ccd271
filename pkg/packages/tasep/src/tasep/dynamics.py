"""
Continuous-time TASEP with first-class particles, holes and one second-class particle.

Sites -H..H are stored at indices 0..2H. Species are ordered
FIRST_CLASS > SECOND_CLASS > HOLE and a jump x -> x + 1 happens iff
occ[x] > occ[x + 1], so a first-class particle jumping onto the second-class
particle swaps with it. Site H + 1 is a hole: particles leave at the right
edge and none enter at the left.

Clocks are uniformised. Events arrive at total rate M = 2H + 1 and each picks
a site uniformly; event e reads flat uniforms 2e (waiting time) and 2e + 1
(site) of the CLOCKS stream. An event past the requested time is not
consumed, so a run split at any time replays the same path.
"""

import logging
from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np
from domain.errors import (
    ContractViolationError,
    InvalidParameterError,
    InvariantViolationError,
    WindowOverflowError,
)
from domain.models import SeedSpec, ShockConstants, ShockSample, TasepConfig
from domain.types import FIRST_CLASS, HOLE, SECOND_CLASS, Stream
from lattice.lines import shock_position
from lattice.weights import FLAT_SPACE, derive_replica_seed, exponential_from_uniform, uniform_row
from numba import njit

logger = logging.getLogger(__name__)

BATCH = 65536
NO_LABEL = np.iinfo(np.int64).min


def minimal_halfwidth(horizon: float) -> int:
    """Light-cone padding ceil(2t + 10 sqrt(t) + 10)."""
    if horizon < 0:
        raise InvalidParameterError(f"horizon must be >= 0, got {horizon}")
    return ceil(2.0 * horizon + 10.0 * sqrt(horizon) + 10.0)


def overflow_margin(halfwidth: int, s: float) -> float:
    """Largest |X_s| still clear of edge effects at time s."""
    return halfwidth - (s + 5.0 * sqrt(s) + 5.0)


# ---------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------


@njit(cache=True)
def _apply_events(occ, labels, sites, dts, time, t_end, x, n_steps, h):
    """
    Apply events in order until one falls after t_end.

    x is the array index of the second-class particle. Returns
    (consumed, time, x, n_steps, overflow).
    """
    size = occ.shape[0]
    for e in range(sites.shape[0]):
        s = time + dts[e]
        if s > t_end:
            return e, time, x, n_steps, False
        time = s
        a = sites[e]
        if a == size - 1:
            if occ[a] != HOLE:
                occ[a] = HOLE
                labels[a] = NO_LABEL
        elif occ[a] > occ[a + 1]:
            if occ[a] == SECOND_CLASS:
                x += 1
                n_steps += 1
            elif occ[a + 1] == SECOND_CLASS:
                x -= 1
                n_steps += 1
            occ[a], occ[a + 1] = occ[a + 1], occ[a]
            labels[a], labels[a + 1] = labels[a + 1], labels[a]
        if abs(x - h) > h - (s + 5.0 * np.sqrt(s) + 5.0):
            return e + 1, time, x, n_steps, True
    return sites.shape[0], time, x, n_steps, False


@njit(cache=True)
def _apply_pair_events(eta, eta2, sites, dts, time, t_end, d, h):
    """Basic coupling of two exclusion processes; d is the index of the discrepancy."""
    size = eta.shape[0]
    for e in range(sites.shape[0]):
        s = time + dts[e]
        if s > t_end:
            return e, time, d, False
        time = s
        a = sites[e]
        if a == size - 1:
            eta[a] = 0
            eta2[a] = 0
        else:
            if eta[a] == 1 and eta[a + 1] == 0:
                eta[a] = 0
                eta[a + 1] = 1
            if eta2[a] == 1 and eta2[a + 1] == 0:
                eta2[a] = 0
                eta2[a + 1] = 1
            if d == a or d == a + 1:
                d = a if eta[a] != eta2[a] else a + 1
        if abs(d - h) > h - (s + 5.0 * np.sqrt(s) + 5.0):
            return e + 1, time, d, True
    return sites.shape[0], time, d, False


def clock_batch(seed: SeedSpec, start: int, count: int, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Waiting times and site indices of events start, ..., start + count - 1."""
    u = uniform_row(seed.with_stream(Stream.CLOCKS), 0, 2 * start, 2 * count, space=FLAT_SPACE)
    dts = exponential_from_uniform(u[0::2], float(size))
    sites = np.minimum((u[1::2] * size).astype(np.int64), size - 1)
    return dts, sites


# ---------------------------------------------------------------------
# State
# ---------------------------------------------------------------------


@dataclass(slots=True, eq=False)
class TasepState:
    """
    Mutable configuration of one run.

    `time` is the time of the last applied event and `events` the number of
    events consumed from the clock stream.
    """

    occ: np.ndarray
    labels: np.ndarray
    halfwidth: int
    x: int
    n_steps: int
    horizon: float
    lambda_: float = float("nan")
    rho: float = float("nan")
    time: float = 0.0
    events: int = 0

    @property
    def size(self) -> int:
        return len(self.occ)

    def site(self, index: int) -> int:
        return index - self.halfwidth

    def index(self, site: int) -> int:
        return site + self.halfwidth

    def particle_positions(self) -> tuple[np.ndarray, np.ndarray]:
        """Labels and sites of the first-class particles, left to right."""
        idx = np.flatnonzero(self.occ == FIRST_CLASS)
        return self.labels[idx].copy(), idx - self.halfwidth


def state_from_sites(
    first_class: list[int],
    second_class: int,
    halfwidth: int,
    *,
    horizon: float = np.inf,
    labels: list[int] | None = None,
) -> TasepState:
    """
    Exploratory configuration with first-class particles at the given sites.

    Labels default to len(first_class) - 1, ..., 0 from left to right.

    Raises
    ------
    InvalidParameterError
        If a site is outside [-H, H] or two particles share a site.
    """
    if labels is None:
        labels = list(range(len(first_class) - 1, -1, -1))
        first_class = sorted(first_class)
    if len(labels) != len(first_class):
        raise InvalidParameterError("labels and first_class must have equal length")
    pairs = sorted(zip(first_class, labels, strict=True))
    sites = [p[0] for p in pairs]
    occupied = [*sites, second_class]
    if len(set(occupied)) != len(occupied):
        raise InvalidParameterError(f"Sites must be distinct, got {occupied}")
    if any(abs(s) > halfwidth for s in occupied):
        raise InvalidParameterError(f"Sites {occupied} leave the window [-{halfwidth}, {halfwidth}]")
    size = 2 * halfwidth + 1
    occ = np.full(size, HOLE, dtype=np.int8)
    lab = np.full(size, NO_LABEL, dtype=np.int64)
    idx = np.array(sites, dtype=np.int64) + halfwidth
    occ[idx] = FIRST_CLASS
    lab[idx] = [p[1] for p in pairs]
    occ[second_class + halfwidth] = SECOND_CLASS
    state = TasepState(occ=occ, labels=lab, halfwidth=halfwidth, x=second_class, n_steps=0, horizon=horizon)
    check_invariants(state)
    return state


def init_shock_state(config: TasepConfig) -> TasepState:
    """
    Particles at -floor(n / lambda) for n > 0 and -floor(n / rho) for n < 0, second-class at 0.

    Raises
    ------
    InvalidParameterError
        If window_halfwidth is below minimal_halfwidth(horizon).
    """
    need = minimal_halfwidth(config.horizon)
    h = need if config.window_halfwidth is None else config.window_halfwidth
    if h < need:
        raise InvalidParameterError(f"window_halfwidth={h} is below the light-cone padding {need} for t={config.horizon}")
    if not config.is_shock:
        logger.warning("Densities lambda=%.4g, rho=%.4g do not form a shock", config.lambda_, config.rho)

    first: list[int] = []
    labels: list[int] = []
    n = 1
    while (x := shock_position(n, config.lambda_, config.rho)) >= -h:
        first.append(x)
        labels.append(n)
        n += 1
    n = -1
    while (x := shock_position(n, config.lambda_, config.rho)) <= h:
        first.append(x)
        labels.append(n)
        n -= 1
    order = np.argsort(first)
    state = state_from_sites(
        [first[i] for i in order],
        0,
        h,
        horizon=config.horizon,
        labels=[labels[i] for i in order],
    )
    state.lambda_, state.rho = config.lambda_, config.rho
    logger.debug("Shock state with %d particles on [-%d, %d]", len(first), h, h)
    return state


def check_invariants(state: TasepState) -> None:
    """
    Exactly one second-class particle, known species marks and label order.

    Raises
    ------
    InvariantViolationError
        If any of these fails.
    """
    occ = state.occ
    if np.any((occ != HOLE) & (occ != SECOND_CLASS) & (occ != FIRST_CLASS)):
        raise InvariantViolationError("Unknown species mark in the occupation array")
    second = np.flatnonzero(occ == SECOND_CLASS)
    if len(second) != 1:
        raise InvariantViolationError(f"Expected one second-class particle, found {len(second)}")
    if state.site(int(second[0])) != state.x:
        raise InvariantViolationError(f"Second-class particle at {state.site(int(second[0]))}, tracked at {state.x}")
    labels, _ = state.particle_positions()
    if len(labels) > 1 and np.any(np.diff(labels) >= 0):
        raise InvariantViolationError("First-class labels do not decrease from left to right")


# ---------------------------------------------------------------------
# Dynamics
# ---------------------------------------------------------------------


def _check_time(state: TasepState, t: float) -> None:
    if t > state.horizon:
        raise InvalidParameterError(f"t={t} exceeds the horizon {state.horizon}")
    if t < state.time:
        raise ContractViolationError(f"State is already at time {state.time:.6g} > t={t}")


def advance(state: TasepState, t: float, seed: SeedSpec) -> TasepState:
    """
    Apply every event with time <= t.

    Raises
    ------
    WindowOverflowError
        If the second-class particle leaves the uncontaminated part of the window.
    """
    _check_time(state, t)
    h = state.halfwidth
    x = state.index(state.x)
    while True:
        dts, sites = clock_batch(seed, state.events, BATCH, state.size)
        consumed, time, x, n_steps, overflow = _apply_events(
            state.occ, state.labels, sites, dts, state.time, t, x, state.n_steps, h
        )
        state.events += int(consumed)
        state.time, state.x, state.n_steps = float(time), state.site(int(x)), int(n_steps)
        if overflow:
            raise WindowOverflowError(
                f"Second-class particle at {state.x} left the light cone at s={state.time:.6g}",
                time=state.time,
                position=state.x,
            )
        if consumed < BATCH:
            return state


def run_until(
    state: TasepState,
    t: float,
    seed: SeedSpec,
    *,
    replica: int = 0,
    constants: ShockConstants | None = None,
) -> ShockSample:
    """Advance to time t and report (X_t, N_t)."""
    advance(state, t, seed)
    return ShockSample.from_raw(
        replica=replica,
        t=t,
        x_t=state.x,
        n_t=state.n_steps,
        lambda_=state.lambda_,
        rho=state.rho,
        constants=constants,
    )


def run_discrepancy(config: TasepConfig, t: float, seed: SeedSpec) -> int:
    """
    Position of the single discrepancy between two coupled exclusion processes.

    eta has a particle at 0 and eta' a hole there; both read the clock stream
    of run_until, so the result equals its X_t path by path.

    Raises
    ------
    InvariantViolationError
        If the two processes differ at other than one site at a batch boundary.
    WindowOverflowError
        If the discrepancy leaves the uncontaminated part of the window.
    """
    state = init_shock_state(config)
    _check_time(state, t)
    eta = (state.occ != HOLE).astype(np.int8)
    eta2 = (state.occ == FIRST_CLASS).astype(np.int8)
    h = state.halfwidth
    d = h
    time = 0.0
    events = 0
    while True:
        dts, sites = clock_batch(seed, events, BATCH, len(eta))
        consumed, time, d, overflow = _apply_pair_events(eta, eta2, sites, dts, time, t, d, h)
        events += int(consumed)
        if overflow:
            raise WindowOverflowError(
                f"Discrepancy at {int(d) - h} left the light cone at s={time:.6g}",
                time=float(time),
                position=int(d) - h,
            )
        differ = np.flatnonzero(eta != eta2)
        if len(differ) != 1 or differ[0] != d:
            raise InvariantViolationError(f"Coupled processes differ at sites {(differ - h).tolist()} at s={time:.6g}")
        if consumed < BATCH:
            return int(d) - h


def shock_sample(
    config: TasepConfig,
    t: float,
    *,
    master_seed: int,
    replica: int,
    constants: ShockConstants | None = None,
) -> ShockSample:
    """(X_t, N_t) of one replica by direct simulation."""
    seed = SeedSpec(derive_replica_seed(master_seed, replica), Stream.CLOCKS)
    return run_until(init_shock_state(config), t, seed, replica=replica, constants=constants)
