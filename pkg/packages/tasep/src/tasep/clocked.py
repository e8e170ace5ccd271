"""
TASEP driven by the weights of an LPP field.

Particle n jumping to site z waits omega_{z + n, n} from the moment the jump is
enabled (it sits at z - 1 and particle n - 1 has left z). The jump time is then

    enabled + omega = L(z + n, n)

for the line {(k + x_k(0), k)}, with the same floating-point operations as the
wavefront, so the two sides of the coupling compare exactly.
"""

import heapq
import logging
from dataclasses import dataclass

import numpy as np
from domain.errors import InvalidParameterError
from domain.models import Point, Window
from lattice.engine import lpp_table
from lattice.lines import tasep_line
from lattice.weights import WeightSource

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class ClockedRun:
    """
    Jumps of a clocked run in the order they happened.

    `labels` and `initial` list the particles right to left (decreasing
    position, increasing label).
    """

    labels: np.ndarray
    initial: np.ndarray
    event_times: np.ndarray
    event_labels: np.ndarray
    event_sites: np.ndarray

    def arrivals(self, label: int) -> np.ndarray:
        """Times particle `label` reached x(0) + 1, x(0) + 2, ..."""
        return self.event_times[self.event_labels == label]

    def initial_position(self, label: int) -> int:
        hit = np.flatnonzero(self.labels == label)
        if len(hit) == 0:
            raise InvalidParameterError(f"No particle labelled {label}")
        return int(self.initial[hit[0]])

    def position(self, label: int, t: float) -> int:
        """x_label(t)."""
        return self.initial_position(label) + int(np.searchsorted(self.arrivals(label), t, side="right"))


def simulate_clocked(
    field: WeightSource,
    labels: np.ndarray,
    positions: np.ndarray,
    horizon: float,
    column_limit: int,
) -> ClockedRun:
    """
    Event-driven run up to horizon; jumps into cells with i > column_limit never fire.

    Raises
    ------
    InvalidParameterError
        If labels are not consecutive or particles are not ordered right to left.
    """
    line = tasep_line(labels, positions)
    # right to left: labels increase, positions decrease
    k = line.labels[::-1].copy()
    x0 = line.i[::-1] - k
    count = len(k)
    k_lo = int(k[0])
    i_min = int(line.i.min())
    width = max(column_limit - i_min + 1, 1)
    block = field.block(Window(i_min, i_min + width - 1, k_lo, k_lo + count - 1))

    pos = x0.copy()
    arrived = np.zeros(count)  # time each particle reached its current site
    heap: list[tuple[float, int]] = []

    def schedule(p: int) -> None:
        z = int(pos[p]) + 1
        cell = z + int(k[p])
        if cell > column_limit:
            return
        front = arrived[p - 1] if p > 0 else -np.inf
        if p > 0 and pos[p - 1] <= z:
            return
        # particle p - 1 left z exactly when it reached z + 1
        if p > 0 and pos[p - 1] == z + 1:
            enabled = max(arrived[p], front)
        else:
            enabled = arrived[p]
        fire = enabled + block[cell - i_min, p]
        if fire <= horizon:
            heapq.heappush(heap, (float(fire), p))

    for p in range(count):
        schedule(p)

    times: list[float] = []
    who: list[int] = []
    where: list[int] = []
    while heap:
        s, p = heapq.heappop(heap)
        pos[p] += 1
        arrived[p] = s
        times.append(s)
        who.append(int(k[p]))
        where.append(int(pos[p]))
        schedule(p)
        if p + 1 < count and pos[p + 1] == pos[p] - 2:
            schedule(p + 1)

    logger.debug("Clocked run of %d particles: %d jumps up to t=%.4g", count, len(times), horizon)
    return ClockedRun(
        labels=k,
        initial=x0,
        event_times=np.array(times),
        event_labels=np.array(who, dtype=np.int64),
        event_sites=np.array(where, dtype=np.int64),
    )


@dataclass(frozen=True, slots=True)
class CouplingCheck:
    """Outcome of the LPP/TASEP comparison with the first mismatch, if any."""

    holds: bool
    cells_checked: int
    counterexample: tuple[Point, float, float, int] | None = None  # (cell, t, L, x_n(t))

    def __bool__(self) -> bool:
        return self.holds


def verify_lpp_coupling(
    field: WeightSource,
    labels: np.ndarray,
    positions: np.ndarray,
    window: Window,
    t_grid: list[float] | np.ndarray,
) -> CouplingCheck:
    """
    Check L_{L -> (m, n)} <= t  <=>  x_n(t) >= m - n for every cell of window and t in t_grid.

    Cells left of the table count as -inf.

    Raises
    ------
    InvalidParameterError
        If a window row is not a particle label.
    """
    t_grid = np.asarray(t_grid, dtype=np.float64)
    label_set = {int(v) for v in labels}
    missing = [n for n in range(window.j_min, window.j_max + 1) if n not in label_set]
    if missing:
        raise InvalidParameterError(f"Window rows {missing} are not particle labels")
    if len(t_grid) == 0:
        return CouplingCheck(holds=True, cells_checked=0)

    starts = tasep_line(labels, positions)
    table = lpp_table(field, starts, (window.i_max, window.j_max), record_choices=False)
    run = simulate_clocked(field, labels, positions, float(t_grid.max()), window.i_max)

    checked = 0
    for n in range(window.j_min, window.j_max + 1):
        arrivals = run.arrivals(n)
        x0 = run.initial_position(n)
        for m in range(window.i_min, window.i_max + 1):
            value = table.value((m, n)) if table.rect.contains(m, n) else -np.inf
            for t in t_grid:
                x_t = x0 + int(np.searchsorted(arrivals, t, side="right"))
                checked += 1
                if (value <= t) != (x_t >= m - n):
                    logger.warning("Coupling fails at cell %s, t=%.6g: L=%.12g, x=%d", (m, n), t, value, x_t)
                    return CouplingCheck(
                        holds=False, cells_checked=checked, counterexample=((m, n), float(t), value, x_t)
                    )
    return CouplingCheck(holds=True, cells_checked=checked)
