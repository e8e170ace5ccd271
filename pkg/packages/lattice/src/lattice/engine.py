"""
Exact last-passage percolation by dynamic programming.

    L(i, j) = omega_{i,j} + max(L(i-1, j), L(i, j-1))

Start cells are pinned to their boundary value and never add their own weight,
so a line-to-point value is max over start points of boundary + L_{start -> to}.
The exit index of the maximiser is carried through the recursion next to the
value. Ties prefer the step from below, which makes exits and backtracked paths
agree.

Two independent implementations:
    - wavefront: anti-diagonal sweep over the cells actually reachable from the
      start line, one weight call per diagonal, O(width) live state
    - table: row sweep over the full rectangle with recorded choices, used for
      path reconstruction and as a cross-check

Both apply the same floating-point operations cell by cell, so their values
agree to the last bit.
"""

import logging
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
from domain.errors import ContractViolationError, InvalidParameterError
from domain.models import LppOutcome, Point, SeedSpec, StartSet, Window
from numba import njit
from scipy import stats
from theory.constants import pt_point_scaling

from lattice.weights import WeightField, WeightSource, derive_replica_seed

logger = logging.getLogger(__name__)

NO_EXIT = -1

# Choice codes recorded by the table sweep
NONE = 0
BELOW = 1
LEFT = 2
START = 3


# ----------------------------
# Kernels
# ----------------------------


@njit(cache=True)
def _relax_diagonal(prev_val, prev_exit, prev_lo, prev_hi, lo, hi, d, j_lo, weights, pin_val, pin_exit):
    """Values and exits of cells i = lo..hi on diagonal d from diagonal d - 1."""
    n = hi - lo + 1
    cur_val = np.empty(n, dtype=np.float64)
    cur_exit = np.empty(n, dtype=np.int64)
    for k in range(n):
        i = lo + k
        if pin_exit[k] >= 0:
            cur_val[k] = pin_val[k]
            cur_exit[k] = pin_exit[k]
            continue
        best = -np.inf
        ex = -1
        # ties keep the step from below, so exits and backtracked paths agree
        # below: (i, j - 1) sits at index i on diagonal d - 1
        if d - i - 1 >= j_lo and prev_lo <= i <= prev_hi:
            v = prev_val[i - prev_lo]
            if v > best:
                best = v
                ex = prev_exit[i - prev_lo]
        # left: (i - 1, j) sits at index i - 1
        if prev_lo <= i - 1 <= prev_hi:
            v = prev_val[i - 1 - prev_lo]
            if v > best:
                best = v
                ex = prev_exit[i - 1 - prev_lo]
        if ex >= 0:
            cur_val[k] = weights[k] + best
            cur_exit[k] = ex
        else:
            cur_val[k] = -np.inf
            cur_exit[k] = -1
    return cur_val, cur_exit


@njit(cache=True)
def _sweep_table(weights, pin_val, pin_exit, values, exits, choices):
    """Row sweep over the rectangle; arrays are indexed [i - i_min, j - j_min]."""
    width, height = weights.shape
    for a in range(width):
        for b in range(height):
            if pin_exit[a, b] >= 0:
                values[a, b] = pin_val[a, b]
                exits[a, b] = pin_exit[a, b]
                choices[a, b] = START
                continue
            best = -np.inf
            ex = -1
            choice = NONE
            # same tie rule as _relax_diagonal
            if b > 0 and values[a, b - 1] > best:
                best = values[a, b - 1]
                ex = exits[a, b - 1]
                choice = BELOW
            if a > 0 and values[a - 1, b] > best:
                best = values[a - 1, b]
                ex = exits[a - 1, b]
                choice = LEFT
            if ex >= 0:
                values[a, b] = weights[a, b] + best
                exits[a, b] = ex
            else:
                values[a, b] = -np.inf
                exits[a, b] = -1
            choices[a, b] = choice


# ----------------------------
# Wavefront
# ----------------------------


@dataclass(frozen=True, slots=True)
class _Pins:
    """Start points grouped by anti-diagonal."""

    d: np.ndarray
    i: np.ndarray
    boundary: np.ndarray
    index: np.ndarray

    @classmethod
    def build(cls, starts: StartSet, mask: np.ndarray) -> "_Pins":
        index = np.flatnonzero(mask)
        i, j = starts.i[index], starts.j[index]
        d = i + j
        order = np.lexsort((i, d))
        return cls(d=d[order], i=i[order], boundary=starts.boundary[index][order], index=index[order])

    def on(self, d: int) -> slice:
        return slice(int(np.searchsorted(self.d, d, "left")), int(np.searchsorted(self.d, d, "right")))


@dataclass(frozen=True, slots=True, eq=False)
class Diagonal:
    """Values and exits of cells i = lo..hi on anti-diagonal d; empty when lo > hi."""

    d: int
    lo: int
    hi: int
    values: np.ndarray
    exits: np.ndarray

    def lookup(self, i: int) -> tuple[float, int]:
        """(value, exit) at cell (i, d - i); (-inf, NO_EXIT) when unreachable."""
        if self.lo <= i <= self.hi and self.exits[i - self.lo] >= 0:
            return float(self.values[i - self.lo]), int(self.exits[i - self.lo])
        return -np.inf, NO_EXIT


def _diagonals(
    field: WeightSource,
    pins: _Pins,
    corner: Point,
    i_lo: int,
    j_lo: int,
    d_start: int | None = None,
) -> Iterator[Diagonal]:
    """
    Sweep anti-diagonals from the first pin (or d_start, if earlier) up to corner.

    The live range of diagonal d is the hull of the previous range shifted by
    one and the pins on d, clipped to [i_lo, I] x [j_lo, J].
    """
    I, J = corner
    prev_val = np.empty(0, dtype=np.float64)
    prev_exit = np.empty(0, dtype=np.int64)
    prev_lo, prev_hi = 0, -1
    d_min = int(pins.d[0]) if d_start is None else min(d_start, int(pins.d[0]))

    for d in range(d_min, I + J + 1):
        on = pins.on(d)
        pin_i = pins.i[on]
        r_lo, r_hi = max(i_lo, d - J), min(I, d - j_lo)
        if prev_lo <= prev_hi:
            lo, hi = prev_lo, prev_hi + 1
            if len(pin_i):
                lo, hi = min(lo, int(pin_i[0])), max(hi, int(pin_i[-1]))
        elif len(pin_i):
            lo, hi = int(pin_i[0]), int(pin_i[-1])
        else:
            lo, hi = 0, -1
        lo, hi = max(lo, r_lo), min(hi, r_hi)

        if lo > hi:
            prev_val = np.empty(0, dtype=np.float64)
            prev_exit = np.empty(0, dtype=np.int64)
            prev_lo, prev_hi = 0, -1
        else:
            n = hi - lo + 1
            pin_val = np.zeros(n)
            pin_exit = np.full(n, NO_EXIT, dtype=np.int64)
            pin_val[pin_i - lo] = pins.boundary[on]
            pin_exit[pin_i - lo] = pins.index[on]
            weights = field.diagonal(d, lo, hi)
            prev_val, prev_exit = _relax_diagonal(
                prev_val, prev_exit, prev_lo, prev_hi, lo, hi, d, j_lo, weights, pin_val, pin_exit
            )
            prev_lo, prev_hi = lo, hi
        yield Diagonal(d=d, lo=prev_lo, hi=prev_hi, values=prev_val, exits=prev_exit)


def _wavefront(
    field: WeightSource,
    pins: _Pins,
    corner: Point,
    i_lo: int,
    j_lo: int,
    captures: dict[int, list[tuple[int, int]]],
) -> dict[int, tuple[float, int]]:
    """
    Sweep diagonals up to corner and record (value, exit) at the captured cells.

    `captures` maps a diagonal to (i, slot) pairs; the result maps slot to
    (value, start index).
    """
    out: dict[int, tuple[float, int]] = {}
    for diag in _diagonals(field, pins, corner, i_lo, j_lo):
        for i, slot in captures.get(diag.d, ()):
            value, exit_index = diag.lookup(i)
            if exit_index >= 0:
                out[slot] = (value, exit_index)
    return out


def sweep_diagonals(
    field: WeightSource, starts: StartSet, corner: Point, *, d_start: int | None = None
) -> Iterator[Diagonal]:
    """
    Stream the wavefront from the starts <= corner, one anti-diagonal at a time.

    Raises
    ------
    InvalidParameterError
        If no start point is coordinatewise <= corner.
    """
    mask = starts.admissible(corner)
    if not mask.any():
        raise InvalidParameterError(f"No start point lies below {corner}")
    pins = _Pins.build(starts, mask)
    i_lo, j_lo = int(starts.i[mask].min()), int(starts.j[mask].min())
    return _diagonals(field, pins, corner, i_lo, j_lo, d_start)


def lpp_line_to_point(
    field: WeightSource,
    starts: StartSet,
    to: Point,
    want_path: bool = False,
) -> LppOutcome | None:
    """
    Line-to-point last-passage value with exit index.

    Returns None when no start point is coordinatewise <= to.
    """
    mask = starts.admissible(to)
    if not mask.any():
        return None
    if want_path:
        table = lpp_table(field, starts, to, record_choices=True)
        return table.outcome(to, with_path=True)
    pins = _Pins.build(starts, mask)
    i_lo, j_lo = int(starts.i[mask].min()), int(starts.j[mask].min())
    result = _wavefront(field, pins, to, i_lo, j_lo, {to[0] + to[1]: [(to[0], 0)]})
    if 0 not in result:
        return None
    value, exit_index = result[0]
    return LppOutcome(value=value, exit_index=exit_index)


def lpp_point_to_point(field: WeightSource, start: Point, to: Point, want_path: bool = False) -> LppOutcome | None:
    """
    Point-to-point last-passage value, start weight excluded.

    Returns None when `to` is not coordinatewise >= `start`.
    """
    return lpp_line_to_point(field, StartSet.from_points([start]), to, want_path)


def lpp_line_to_points(field: WeightSource, starts: StartSet, targets: list[Point]) -> list[LppOutcome | None]:
    """Values and exits at many targets from a single sweep over their bounding rectangle."""
    if not targets:
        return []
    corner = (max(t[0] for t in targets), max(t[1] for t in targets))
    mask = starts.admissible(corner)
    if not mask.any():
        return [None] * len(targets)
    captures: dict[int, list[tuple[int, int]]] = {}
    for slot, (ti, tj) in enumerate(targets):
        captures.setdefault(ti + tj, []).append((ti, slot))
    pins = _Pins.build(starts, mask)
    i_lo, j_lo = int(starts.i[mask].min()), int(starts.j[mask].min())
    result = _wavefront(field, pins, corner, i_lo, j_lo, captures)
    outcomes: list[LppOutcome | None] = []
    for slot in range(len(targets)):
        hit = result.get(slot)
        outcomes.append(None if hit is None else LppOutcome(value=hit[0], exit_index=hit[1]))
    return outcomes


# ----------------------------
# Full table
# ----------------------------


@dataclass(frozen=True, slots=True, eq=False)
class LppTable:
    """Last-passage values over a rectangle; unreachable cells hold -inf and exit -1."""

    rect: Window
    values: np.ndarray
    exits: np.ndarray
    choices: np.ndarray | None

    def _index(self, p: Point) -> tuple[int, int]:
        if not self.rect.contains(*p):
            raise InvalidParameterError(f"Point {p} lies outside the table {self.rect}")
        return p[0] - self.rect.i_min, p[1] - self.rect.j_min

    def value(self, p: Point) -> float:
        return float(self.values[self._index(p)])

    def exit_index(self, p: Point) -> int:
        return int(self.exits[self._index(p)])

    def reachable(self, p: Point) -> bool:
        return self.rect.contains(*p) and self.exits[self._index(p)] >= 0

    def outcome(self, p: Point, *, with_path: bool = False) -> LppOutcome | None:
        if not self.reachable(p):
            return None
        path = tuple(backtrack_path(self, p)) if with_path else None
        return LppOutcome(value=self.value(p), exit_index=self.exit_index(p), path=path)


def lpp_table(field: WeightSource, starts: StartSet, corner: Point, *, record_choices: bool = True) -> LppTable:
    """
    Full value table over [i_lo, I] x [j_lo, J] for the starts <= corner.

    Raises
    ------
    InvalidParameterError
        If no start point is coordinatewise <= corner.
    """
    mask = starts.admissible(corner)
    if not mask.any():
        raise InvalidParameterError(f"No start point lies below {corner}")
    index = np.flatnonzero(mask)
    rect = Window(int(starts.i[index].min()), corner[0], int(starts.j[index].min()), corner[1])
    weights = field.block(rect)
    shape = (rect.width, rect.height)
    pin_val = np.zeros(shape)
    pin_exit = np.full(shape, NO_EXIT, dtype=np.int64)
    a, b = starts.i[index] - rect.i_min, starts.j[index] - rect.j_min
    pin_val[a, b] = starts.boundary[index]
    pin_exit[a, b] = index
    values = np.empty(shape)
    exits = np.empty(shape, dtype=np.int64)
    choices = np.empty(shape, dtype=np.int8)
    _sweep_table(weights, pin_val, pin_exit, values, exits, choices)
    return LppTable(rect=rect, values=values, exits=exits, choices=choices if record_choices else None)


def backtrack_path(table: LppTable | None, target: Point) -> list[Point]:
    """
    Maximising path from its start point to target.

    Raises
    ------
    ContractViolationError
        If the table was built without recorded choices or target is unreachable.
    """
    if table is None or table.choices is None:
        raise ContractViolationError("backtrack_path needs a table built with record_choices=True")
    if not table.reachable(target):
        raise ContractViolationError(f"Target {target} is not reachable from the start line")
    i, j = target
    path = [target]
    while True:
        choice = table.choices[i - table.rect.i_min, j - table.rect.j_min]
        if choice == START:
            break
        if choice == BELOW:
            j -= 1
        elif choice == LEFT:
            i -= 1
        else:
            raise ContractViolationError(f"Broken choice chain at {(i, j)}")
        path.append((i, j))
    path.reverse()
    return path


# ----------------------------
# Path properties and checks
# ----------------------------


def path_value(field: WeightSource, path: list[Point], boundary: float = 0.0) -> float:
    """Boundary value plus the weights along path, start excluded, summed in path order."""
    total = boundary
    for i, j in path[1:]:
        total = field.at(i, j) + total
    return total


def maximizer_hits(path: list[Point] | tuple[Point, ...], targets: list[Point]) -> bool:
    cells = set(path)
    return any(t in cells for t in targets)


def superadditivity_check(field: WeightSource, a: Point, c: Point, b: Point, *, tol: float = 1e-9) -> bool:
    """
    L(a -> b) >= L(a -> c) + L(c -> b) for a <= c <= b.

    Raises
    ------
    InvalidParameterError
        If c is not between a and b.
    """
    if not (a[0] <= c[0] <= b[0] and a[1] <= c[1] <= b[1]):
        raise InvalidParameterError(f"{c} is not between {a} and {b}")
    ab = lpp_point_to_point(field, a, b)
    ac = lpp_point_to_point(field, a, c)
    cb = lpp_point_to_point(field, c, b)
    assert ab is not None and ac is not None and cb is not None
    ok = ab.value + tol * max(1.0, abs(ab.value)) >= ac.value + cb.value
    if not ok:
        logger.warning("Superadditivity fails for a=%s c=%s b=%s: %.12g < %.12g", a, c, b, ab.value, ac.value + cb.value)
    return ok


@dataclass(frozen=True, slots=True)
class TailProfile:
    """Empirical tails of (L - mu_pp N) / N^{1/3} with an exponential envelope of the upper tail."""

    n: int
    eta: float
    s_grid: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    envelope: tuple[float, float] | None  # (C, c) of C exp(-c s)

    @property
    def upper_nonincreasing(self) -> bool:
        return bool(np.all(np.diff(self.upper) <= 0))


def _fit_envelope(s_grid: np.ndarray, upper: np.ndarray) -> tuple[float, float] | None:
    keep = (s_grid >= 2.0) & (s_grid <= 10.0) & (upper > 0)
    if keep.sum() < 2:
        return None
    fit = stats.linregress(s_grid[keep], np.log(upper[keep]))
    return float(np.exp(fit.intercept)), float(-fit.slope)


def point_to_point_tail_profile(
    n: int,
    eta: float,
    s_grid: np.ndarray,
    replicas: int,
    *,
    master_seed: int = 0,
) -> TailProfile:
    """Upper tail P(L > mu N + s N^{1/3}) and lower tail P(L < mu N + s N^{1/3}) for (0,0) -> (eta N, N)."""
    if n <= 0 or replicas <= 0:
        raise InvalidParameterError(f"Need n > 0 and replicas > 0, got n={n}, replicas={replicas}")
    scaling = pt_point_scaling(eta)
    target = (round(eta * n), n)
    scale = n ** (1.0 / 3.0)
    values = np.empty(replicas)
    for r in range(replicas):
        field = WeightField(SeedSpec(derive_replica_seed(master_seed, r)))
        outcome = lpp_point_to_point(field, (0, 0), target)
        assert outcome is not None
        values[r] = (outcome.value - scaling.mu_pp * n) / scale
    s_grid = np.asarray(s_grid, dtype=np.float64)
    upper = (values[None, :] > s_grid[:, None]).mean(axis=1)
    lower = (values[None, :] < s_grid[:, None]).mean(axis=1)
    logger.info("Tail profile at N=%d, eta=%.3g over %d replicas", n, eta, replicas)
    return TailProfile(n=n, eta=eta, s_grid=s_grid, upper=upper, lower=lower, envelope=_fit_envelope(s_grid, upper))
