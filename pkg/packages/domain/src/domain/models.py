"""Domain models shared by the lattice, TASEP, theory and harness packages."""

from dataclasses import dataclass, field
from math import isfinite

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import InvalidParameterError
from .types import Engine, OutputFormat, Stream

MAX_SEED = 2**64

# ---------------------------------------------------------------------
# Randomness
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SeedSpec:
    """Master seed plus the stream it addresses."""

    master_seed: int
    stream: Stream = Stream.BULK

    def __post_init__(self) -> None:
        if not 0 <= self.master_seed < MAX_SEED:
            raise InvalidParameterError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")

    def with_stream(self, stream: Stream) -> "SeedSpec":
        return SeedSpec(master_seed=self.master_seed, stream=stream)


@dataclass(frozen=True, slots=True)
class Window:
    """Inclusive integer rectangle [i_min, i_max] x [j_min, j_max]."""

    i_min: int
    i_max: int
    j_min: int
    j_max: int

    def __post_init__(self) -> None:
        if self.i_min > self.i_max or self.j_min > self.j_max:
            raise InvalidParameterError(f"Empty window {self}")

    def contains(self, i: int, j: int) -> bool:
        return self.i_min <= i <= self.i_max and self.j_min <= j <= self.j_max

    @property
    def width(self) -> int:
        return self.i_max - self.i_min + 1

    @property
    def height(self) -> int:
        return self.j_max - self.j_min + 1


# ---------------------------------------------------------------------
# Last passage percolation
# ---------------------------------------------------------------------

Point = tuple[int, int]


@dataclass(frozen=True, slots=True, eq=False)
class StartSet:
    """
    Start line of a line-to-point problem.

    Points are stored as parallel arrays ordered along a weakly down-right
    chain. `labels` carries the line parameter k of each point (row index for
    the lines used here) so exits can be reported in line coordinates.
    """

    i: np.ndarray
    j: np.ndarray
    boundary: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.i)
        if n == 0:
            raise InvalidParameterError("StartSet needs at least one point")
        if not (len(self.j) == len(self.boundary) == len(self.labels) == n):
            raise InvalidParameterError("StartSet arrays must have equal length")
        if n > 1:
            di = np.diff(self.i)
            dj = np.diff(self.j)
            if np.any(di < 0) or np.any(dj > 0) or np.any((di == 0) & (dj == 0)):
                raise InvalidParameterError("StartSet points must form a weakly down-right chain")

    @classmethod
    def from_points(
        cls,
        points: list[Point],
        *,
        boundary: list[float] | None = None,
        labels: list[int] | None = None,
    ) -> "StartSet":
        i = np.array([p[0] for p in points], dtype=np.int64)
        j = np.array([p[1] for p in points], dtype=np.int64)
        b = np.zeros(len(points)) if boundary is None else np.asarray(boundary, dtype=np.float64)
        k = np.arange(len(points), dtype=np.int64) if labels is None else np.asarray(labels, dtype=np.int64)
        return cls(i=i, j=j, boundary=b, labels=k)

    def __len__(self) -> int:
        return len(self.i)

    def point(self, index: int) -> Point:
        return int(self.i[index]), int(self.j[index])

    def admissible(self, target: Point) -> np.ndarray:
        """Mask of start points coordinatewise <= target."""
        return (self.i <= target[0]) & (self.j <= target[1])


@dataclass(frozen=True, slots=True)
class LppOutcome:
    """Last-passage value, exit index into the StartSet and optional maximiser."""

    value: float
    exit_index: int
    path: tuple[Point, ...] | None = None


@dataclass(frozen=True, slots=True, eq=False)
class InterfacePath:
    """
    Competition interface phi_0 = (0, 0), phi_1 = (1, 0), ... with times tau_k.

    tau_0 = -inf and tau_1 = 0; each step raises exactly one coordinate by one.
    """

    points: np.ndarray  # shape (n + 1, 2)
    times: np.ndarray

    def __post_init__(self) -> None:
        if len(self.points) < 2 or len(self.points) != len(self.times):
            raise InvalidParameterError("InterfacePath needs phi_0, phi_1 and one time per point")
        steps = np.diff(self.points, axis=0)
        if np.any(steps.sum(axis=1) != 1) or np.any(steps < 0):
            raise InvalidParameterError("Interface steps must be (1, 0) or (0, 1)")
        if np.any(np.diff(self.times) <= 0):
            raise InvalidParameterError("Interface times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.points)

    def point(self, k: int) -> Point:
        return int(self.points[k, 0]), int(self.points[k, 1])

    @property
    def last_time(self) -> float:
        return float(self.times[-1])


@dataclass(frozen=True, slots=True)
class StationaryOutcome:
    """Stationary last-passage value, exit row Z and the truncation half-width used."""

    value: float
    exit_k: int
    exit_cell: Point
    halfwidth: int


# ---------------------------------------------------------------------
# TASEP
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TasepConfig:
    """Two-density initial condition with a second-class particle at the origin."""

    lambda_: float
    rho: float
    horizon: float
    window_halfwidth: int | None = None  # None -> minimal light-cone padding

    @property
    def is_shock(self) -> bool:
        return 0.0 < self.lambda_ < self.rho < 1.0


# ---------------------------------------------------------------------
# Shock constants and samples
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ShockConstants:
    """Deterministic constants of the shock limit theorem for densities (lambda, rho)."""

    lambda_: float
    rho: float
    v: float
    gamma: float
    mu0: float
    sigma1: float
    sigma2: float
    upsilon: float
    xi_lambda: float
    xi_rho: float
    a_lambda: tuple[float, float]  # start of the lambda characteristic, per unit N
    a_rho: tuple[float, float]
    char_dir_lambda: tuple[float, float]
    char_dir_rho: tuple[float, float]


@dataclass(frozen=True, slots=True)
class PtPointScaling:
    """Point-to-point scaling (mu_pp, sigma_eta) for the endpoint (eta N, N)."""

    eta: float
    mu_pp: float
    sigma_eta: float


@dataclass(frozen=True, slots=True)
class ShockSample:
    """Second-class position and step count at time t, raw and rescaled."""

    replica: int
    t: float
    lambda_: float
    rho: float
    x_t: int
    n_t: int
    x_rescaled: float
    n_rescaled: float

    @classmethod
    def from_raw(
        cls,
        *,
        replica: int,
        t: float,
        x_t: int,
        n_t: int,
        lambda_: float,
        rho: float,
        constants: ShockConstants | None,
    ) -> "ShockSample":
        """Rescale with (x - v t)/t^{1/3} and (n - 2t/mu0)/t^{1/3}; NaN when undefined."""
        if constants is None or t <= 0:
            x_resc = n_resc = float("nan")
        else:
            scale = t ** (1.0 / 3.0)
            x_resc = (x_t - constants.v * t) / scale
            n_resc = (n_t - 2.0 * t / constants.mu0) / scale
        return cls(
            replica=replica,
            t=t,
            lambda_=lambda_,
            rho=rho,
            x_t=x_t,
            n_t=n_t,
            x_rescaled=x_resc,
            n_rescaled=n_resc,
        )


@dataclass(frozen=True, slots=True)
class RescaledSample:
    """Rescaled line-to-point values from both sides at scaled coordinates (u, v)."""

    u: float
    v: float
    value_lambda: float
    value_rho: float


# ---------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class KsReport:
    """Kolmogorov-Smirnov distance against a named reference law."""

    ks_statistic: float
    n_samples: int
    reference: str
    threshold: float

    @property
    def passed(self) -> bool:
        return isfinite(self.ks_statistic) and self.ks_statistic <= self.threshold

    def as_dict(self) -> dict[str, float | int | str | bool]:
        return {
            "ks_statistic": self.ks_statistic,
            "n_samples": self.n_samples,
            "reference": self.reference,
            "threshold": self.threshold,
            "passed": self.passed,
        }


@dataclass(frozen=True, slots=True)
class ExponentFit:
    """Least-squares slope of log variance against log scale with a bootstrap interval."""

    slope: float
    ci_low: float
    ci_high: float
    scales: tuple[float, ...] = field(default=())


# ---------------------------------------------------------------------
# Experiment configuration
# ---------------------------------------------------------------------

EXECUTION_FIELDS = {"workers", "out_dir"}


class ExperimentConfig(BaseModel):
    """Validated run configuration; echoed into every artifact."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    experiment: str = "simulate"
    lambda_: float = Field(default=0.25, alias="lambda", gt=0.0, lt=1.0)
    rho: float = Field(default=0.75, gt=0.0, lt=1.0)
    t: float = Field(default=1000.0, gt=0.0)
    n: int = Field(default=1000, gt=0)
    replicas: int = Field(default=4000, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=MAX_SEED)
    engine: Engine = "direct"
    order: int = Field(default=64, ge=8)
    workers: int = Field(default=1, ge=1)
    out_dir: str = "results"
    fmt: OutputFormat = "csv"

    def provenance(self) -> dict[str, object]:
        """Config echo without execution-only fields, stable across worker counts."""
        return self.model_dump(by_alias=True, exclude=EXECUTION_FIELDS)
