"""
Named experiments: shock simulation, one-point laws, couplings, stationarity.

Every experiment is a pure function of its parameters and a master seed. The
shock experiment runs through the replica pool; the others are cheap enough
to run replica by replica in the calling process.
"""

import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from domain.errors import DegenerateCombinationError
from domain.models import ExperimentConfig, ExponentFit, KsReport, ShockConstants, ShockSample, Window
from domain.settings import EnvOverrides
from domain.types import Stream
from lattice.competition import extended_setup, interface_trajectory
from lattice.engine import lpp_point_to_point
from lattice.stationary import (
    coupling_instance,
    exit_translation_samples,
    horizontal_increments,
)
from store import ArtifactPaths, code_version, persist, summarize
from tasep.clocked import verify_lpp_coupling
from tasep.coupling import interface_matches_trajectory, second_class_trajectory
from theory.constants import pt_point_scaling, shock_constants, side_sigma
from theory.distributions.fredholm import DEFAULT_ORDER
from theory.distributions.limit_law import goe_table, limit_law_cdf
from theory.distributions.tables import tabulate

from harness.diagnostics import replica_field
from harness.replicas import run_replicas
from harness.stats import exponential_cdf, ks_report, lag_one_correlation, scaling_exponent_fit, two_sample_ks

logger = logging.getLogger(__name__)

CBRT4 = 2.0 ** (2.0 / 3.0)
LIMIT_LAW_THRESHOLD = 0.10
GOE_THRESHOLD = 0.05


# ---------------------------------------------------------------------
# Shock experiment
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ShockExperiment:
    """Samples of one shock run plus what the summary and provenance need."""

    cfg: ExperimentConfig
    constants: ShockConstants
    samples: list[ShockSample]
    reruns: int
    workers: int
    runtime_s: float

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(s, name) for s in self.samples])


def run_shock_experiment(cfg: ExperimentConfig, *, workers: int | None = None) -> ShockExperiment:
    """Run cfg.replicas replicas of (X_t, N_t) with per-replica seeds (master_seed, index)."""
    sc = shock_constants(cfg.lambda_, cfg.rho)
    start = time.perf_counter()
    run = run_replicas(cfg, workers=workers)
    runtime = time.perf_counter() - start
    logger.info(
        "Shock run lambda=%.4g rho=%.4g t=%.4g: %d replicas in %.1fs",
        cfg.lambda_,
        cfg.rho,
        cfg.t,
        cfg.replicas,
        runtime,
    )
    return ShockExperiment(
        cfg=cfg, constants=sc, samples=run.samples, reruns=run.reruns, workers=run.workers, runtime_s=runtime
    )


def limit_law_reports(
    experiment: ShockExperiment, *, threshold: float = LIMIT_LAW_THRESHOLD, order: int = DEFAULT_ORDER
) -> list[KsReport]:
    """KS of rescaled X_t and N_t against their limit laws; N is skipped where its law degenerates."""
    reports: list[KsReport] = []
    for which, column in (("X", "x_rescaled"), ("N", "n_rescaled")):
        try:
            table = limit_law_cdf(which, experiment.constants, order=order)
        except DegenerateCombinationError as e:
            logger.info("Skipping limit law %s: %s", which, e)
            continue
        reports.append(ks_report(experiment.column(column), table, reference=f"limit-law-{which}", threshold=threshold))
    return reports


def speed_estimate(experiment: ShockExperiment) -> tuple[float, float]:
    """mean(X_t) / t with its standard error."""
    x = experiment.column("x_t").astype(np.float64)
    t = experiment.cfg.t
    return float(x.mean() / t), float(x.std(ddof=1) / np.sqrt(len(x)) / t) if len(x) > 1 else float("nan")


def write_experiment(
    experiment: ShockExperiment,
    reports: Sequence[KsReport],
    *,
    out_dir: Path,
    overrides: EnvOverrides,
) -> ArtifactPaths:
    """Persist samples, deterministic summary and per-run provenance."""
    cfg = experiment.cfg
    speed, speed_err = speed_estimate(experiment) if len(experiment.samples) > 1 else (float("nan"), float("nan"))
    summary = summarize(
        samples=experiment.samples,
        cfg=cfg,
        code_version=code_version(),
        constants=experiment.constants,
        reports=reports,
        extra={"overflow_reruns": experiment.reruns, "speed": {"mean": speed, "stderr": speed_err}},
    )
    provenance = {
        "runtime_s": round(experiment.runtime_s, 3),
        "workers": experiment.workers,
        "env": overrides.as_dict(),
    }
    return persist(experiment.samples, summary, cfg, out_dir=out_dir, fmt=cfg.fmt, provenance=provenance)


def variance_scaling(
    cfg: ExperimentConfig, t_grid: Sequence[float], *, workers: int | None = None
) -> tuple[ExponentFit, list[tuple[float, float]]]:
    """var(X_t) at every t of the grid and the fitted log-log slope."""
    points: list[tuple[float, float]] = []
    for t in t_grid:
        experiment = run_shock_experiment(cfg.model_copy(update={"t": float(t)}), workers=workers)
        points.append((float(t), float(experiment.column("x_t").var(ddof=1))))
        logger.info("var(X_t) at t=%.4g: %.4g", t, points[-1][1])
    return scaling_exponent_fit(points, seed=cfg.master_seed), points


# ---------------------------------------------------------------------
# One-point laws of last passage times
# ---------------------------------------------------------------------


def goe_reports(
    values: np.ndarray, sc: ShockConstants, *, threshold: float = GOE_THRESHOLD, order: int = DEFAULT_ORDER
) -> list[KsReport]:
    """KS of the rescaled one-point values of both sides against F_GOE(2^{2/3} s / sigma_side)."""
    table = goe_table(order)
    reports: list[KsReport] = []
    for col, side in enumerate(("lambda", "rho")):
        sigma = side_sigma(sc, side)

        def cdf(s: np.ndarray, sigma: float = sigma) -> np.ndarray:
            return table(CBRT4 * s / sigma)

        reports.append(ks_report(values[:, col], cdf, reference=f"goe-{side}", threshold=threshold))
    return reports


def point_to_point_samples(
    N: int, eta: float, replicas: int, *, master_seed: int = 0, stream: Stream = Stream.BULK
) -> np.ndarray:
    """(L_{(0,0) -> (eta N, N)} - mu_pp N) / (sigma_eta N^{1/3}) per replica."""
    scaling = pt_point_scaling(eta)
    target = (round(eta * N), N)
    scale = scaling.sigma_eta * N ** (1.0 / 3.0)
    out = np.empty(replicas)
    for r in range(replicas):
        outcome = lpp_point_to_point(replica_field(master_seed, r, stream), (0, 0), target)
        assert outcome is not None
        out[r] = (outcome.value - scaling.mu_pp * N) / scale
    return out


def gue_report(samples: np.ndarray, *, threshold: float = GOE_THRESHOLD, order: int = DEFAULT_ORDER) -> KsReport:
    return ks_report(samples, tabulate("gue", order=order), reference="gue", threshold=threshold)


# ---------------------------------------------------------------------
# Pathwise couplings
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PathwiseResult:
    """Seeds checked and the seeds whose pathwise identity failed."""

    seeds: int
    failures: tuple[int, ...]
    cells_checked: int = 0

    @property
    def holds(self) -> bool:
        return not self.failures


def tasep_lpp_coupling(seeds: int, *, particles: int = 30, t_max: int = 20, master_seed: int = 0) -> PathwiseResult:
    """TASEP from step-like data with spacing 2 against LPP on every cell of the window and t = 1..t_max."""
    labels = np.arange(particles)
    positions = -2 * labels
    window = Window(-10, particles - 1, 0, particles - 1)
    grid = np.arange(1.0, t_max + 1.0)
    failures: list[int] = []
    cells = 0
    for s in range(seeds):
        report = verify_lpp_coupling(replica_field(master_seed, s), labels, positions, window, grid)
        cells += report.cells_checked
        if not report:
            failures.append(s)
    return PathwiseResult(seeds=seeds, failures=tuple(failures), cells_checked=cells)


def second_class_coupling(
    seeds: int, *, lambda_: float = 0.25, rho: float = 0.75, horizon: float = 50.0, master_seed: int = 0
) -> PathwiseResult:
    """Second-class pair against the competition interface driven by the same field."""
    failures: list[int] = []
    for s in range(seeds):
        field = replica_field(master_seed, s)
        ip = interface_trajectory(field, lambda_, rho, horizon)
        setup = extended_setup(lambda_, rho, len(ip) - 1)
        if not interface_matches_trajectory(ip, second_class_trajectory(field, setup, horizon), horizon):
            logger.warning("Seed %d: second-class pair and interface disagree", s)
            failures.append(s)
    return PathwiseResult(seeds=seeds, failures=tuple(failures))


@dataclass(frozen=True, slots=True)
class CouplingLemmaResult:
    instances: int
    premises: int
    violations: int


def coupling_lemma_experiment(
    n: int, sc: ShockConstants, instances: int, *, varrho: float | None = None, master_seed: int = 0
) -> CouplingLemmaResult:
    """Count violations of both coupling inequalities among instances whose premise holds."""
    density = sc.lambda_ if varrho is None else varrho
    rng = np.random.default_rng(master_seed)
    premises = violations = 0
    for k in range(instances):
        x1, x2 = np.sort(rng.uniform(0.0, 2.0 * n ** (1.0 / 3.0), size=2))
        report = coupling_instance(n, sc, density, float(x1), float(x2), master_seed=master_seed, replica=k)
        premises += report.upside_premise + report.downside_premise
        violations += report.violated
    return CouplingLemmaResult(instances=instances, premises=premises, violations=violations)


# ---------------------------------------------------------------------
# Stationarity
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class StationarityResult:
    increments: KsReport
    lag_one: float
    translation_ks: float


def stationarity_experiment(
    n: int,
    sc: ShockConstants,
    varrho: float,
    *,
    replicas: int,
    count: int,
    shifts: int = 3,
    master_seed: int = 0,
    threshold: float = 0.02,
) -> StationarityResult:
    """Increments against Exp(1 - varrho), their lag-1 correlation and exit translation invariance."""
    increments = horizontal_increments(n, sc, varrho, replicas, count=count, master_seed=master_seed)
    report = ks_report(increments.ravel(), exponential_cdf(1.0 - varrho), reference="exp", threshold=threshold)
    z0, z1 = exit_translation_samples(n, sc, shifts, replicas, master_seed=master_seed)
    return StationarityResult(
        increments=report,
        lag_one=lag_one_correlation(increments),
        translation_ks=two_sample_ks(z0, z1),
    )


# ---------------------------------------------------------------------
# Tracy-Widom numerics
# ---------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TwNumerics:
    order_gap: float
    gue_mean: float
    goe_mean: float
    goe_variance: float
    monotone: bool
    left_limit: float
    right_gap: float


def tw_numerics(order: int = DEFAULT_ORDER) -> TwNumerics:
    """Order-doubling gap, moments and limits of the GUE and GOE tables."""
    gue, goe = tabulate("gue", order=order), tabulate("goe", order=order)
    gue2, goe2 = tabulate("gue", order=2 * order), tabulate("goe", order=2 * order)
    gap = max(float(np.max(np.abs(gue.cdf - gue2.cdf))), float(np.max(np.abs(goe.cdf - goe2.cdf))))
    return TwNumerics(
        order_gap=gap,
        gue_mean=gue.mean(),
        goe_mean=goe.mean(),
        goe_variance=goe.variance(),
        monotone=gue.is_monotone() and goe.is_monotone(),
        left_limit=max(float(gue.cdf[0]), float(goe.cdf[0])),
        right_gap=max(1.0 - float(gue.cdf[-1]), 1.0 - float(goe.cdf[-1])),
    )
