"""
Acceptance suite.

Thirteen named criteria, each returning a machine-readable CriterionResult.
The full budget reproduces the desk-scale runs; the quick budget keeps every
criterion but shrinks scales and replica counts and widens the statistical
tolerances to the matching noise level. Exact criteria (pathwise identities,
coupling violations, determinism) keep zero tolerance in both budgets.
"""

import logging
import tempfile
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from domain.models import ExperimentConfig
from domain.settings import EnvOverrides
from lattice.stationary import exit_tail_profile, good_event_probability
from store import file_sha256
from theory.constants import shock_constants

from harness.diagnostics import independence_diagnostic, modulus_diagnostic
from harness.experiments import (
    ShockExperiment,
    coupling_lemma_experiment,
    goe_reports,
    gue_report,
    limit_law_reports,
    point_to_point_samples,
    run_shock_experiment,
    second_class_coupling,
    speed_estimate,
    stationarity_experiment,
    tasep_lpp_coupling,
    tw_numerics,
    variance_scaling,
    write_experiment,
)

logger = logging.getLogger(__name__)

KS_COEF = 1.36  # 95% quantile of the Kolmogorov distribution


@dataclass(frozen=True, slots=True)
class CriterionResult:
    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True, slots=True)
class Budget:
    """Scales, replica counts and tolerances of one run of the suite."""

    pathwise_seeds: int
    shock_t: float
    shock_replicas: int
    exponent_t: tuple[float, ...]
    exponent_replicas: int
    speed_tolerance: float
    limit_threshold: float
    lpp_n: int
    lpp_replicas: int
    one_point_threshold: float
    correlation_bound: float
    stationary_n: int
    increment_replicas: int
    increment_threshold: float
    lag_bound: float
    translation_replicas: int
    translation_threshold: float
    coupling_n: int
    coupling_instances: int
    tail_n: int
    tail_replicas: int
    good_event_bound: float
    tightness_n: tuple[int, int]
    tightness_replicas: int
    determinism_workers: tuple[int, int]
    determinism_replicas: int


FULL = Budget(
    pathwise_seeds=100,
    shock_t=1000.0,
    shock_replicas=4000,
    exponent_t=(250.0, 500.0, 1000.0, 2000.0),
    exponent_replicas=4000,
    speed_tolerance=0.01,
    limit_threshold=0.10,
    lpp_n=1000,
    lpp_replicas=5000,
    one_point_threshold=0.05,
    correlation_bound=0.05,
    stationary_n=500,
    increment_replicas=1000,
    increment_threshold=0.02,
    lag_bound=0.03,
    translation_replicas=5000,
    translation_threshold=0.03,
    coupling_n=500,
    coupling_instances=1000,
    tail_n=500,
    tail_replicas=2000,
    good_event_bound=0.05,
    tightness_n=(500, 4000),
    tightness_replicas=2000,
    determinism_workers=(1, 8),
    determinism_replicas=1000,
)

QUICK = Budget(
    pathwise_seeds=10,
    shock_t=200.0,
    shock_replicas=400,
    exponent_t=(50.0, 100.0, 200.0, 400.0),
    exponent_replicas=300,
    speed_tolerance=0.03,
    limit_threshold=0.15,
    lpp_n=200,
    lpp_replicas=500,
    one_point_threshold=0.08,
    correlation_bound=0.15,
    stationary_n=100,
    increment_replicas=200,
    increment_threshold=0.04,
    lag_bound=0.07,
    translation_replicas=400,
    translation_threshold=0.15,
    coupling_n=100,
    coupling_instances=100,
    tail_n=100,
    tail_replicas=300,
    good_event_bound=0.15,
    tightness_n=(50, 400),
    tightness_replicas=200,
    determinism_workers=(1, 2),
    determinism_replicas=200,
)

SHOCK = (0.25, 0.75)
MOVING_SHOCK = (0.2, 0.6)
EXPONENT_WINDOW = (0.5, 0.85)
TAIL_R2 = 0.8
TAIL_C = 1.0
TAIL_M_GRID = np.linspace(0.25, 2.0, 8)
GOOD_EVENT_R = (1.0, 2.0, 4.0, 8.0)
TIGHTNESS_GRID = np.linspace(-2.0, 2.0, 5)
GUE_MEAN = (-1.771, 0.001)
GOE_MEAN = (-1.2065, 0.002)
GOE_VARIANCE = (1.608, 0.005)
ORDER_GAP = 1e-8
LIMIT_TOLERANCE = 1e-6


# ---------------------------------------------------------------------
# Shared shock runs
# ---------------------------------------------------------------------


class ShockRuns:
    """Shock experiments keyed by (lambda, rho, t, replicas), run at most once per suite."""

    def __init__(self, master_seed: int, workers: int) -> None:
        self._master_seed = master_seed
        self._workers = workers
        self._runs: dict[tuple[float, float, float, int], ShockExperiment] = {}

    def config(self, lambda_: float, rho: float, t: float, replicas: int) -> ExperimentConfig:
        return ExperimentConfig.model_validate(
            {
                "experiment": "simulate",
                "lambda": lambda_,
                "rho": rho,
                "t": t,
                "replicas": replicas,
                "master_seed": self._master_seed,
                "workers": self._workers,
            }
        )

    def get(self, lambda_: float, rho: float, t: float, replicas: int) -> ShockExperiment:
        key = (lambda_, rho, t, replicas)
        if key not in self._runs:
            self._runs[key] = run_shock_experiment(self.config(*key), workers=self._workers)
        return self._runs[key]


@dataclass(frozen=True, slots=True)
class SuiteContext:
    budget: Budget
    master_seed: int
    workers: int
    runs: ShockRuns


# ---------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------


def tasep_lpp_equivalence(ctx: SuiteContext) -> CriterionResult:
    result = tasep_lpp_coupling(ctx.budget.pathwise_seeds, master_seed=ctx.master_seed)
    return CriterionResult(
        "tasep-lpp-equivalence",
        result.holds,
        {"seeds": result.seeds, "cells": result.cells_checked, "failures": list(result.failures)},
    )


def second_class_interface(ctx: SuiteContext) -> CriterionResult:
    result = second_class_coupling(ctx.budget.pathwise_seeds, master_seed=ctx.master_seed)
    return CriterionResult(
        "second-class-interface", result.holds, {"seeds": result.seeds, "failures": list(result.failures)}
    )


def shock_speed(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    detail: dict[str, Any] = {}
    passed = True
    for lambda_, rho in (SHOCK, MOVING_SHOCK):
        speed, stderr = speed_estimate(ctx.runs.get(lambda_, rho, b.shock_t, b.shock_replicas))
        v = shock_constants(lambda_, rho).v
        ok = abs(speed - v) <= b.speed_tolerance
        passed &= ok
        detail[f"{lambda_},{rho}"] = {"speed": speed, "stderr": stderr, "v": v, "passed": ok}
    return CriterionResult("shock-speed", passed, detail)


def fluctuation_exponent(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    cfg = ctx.runs.config(*SHOCK, b.exponent_t[0], b.exponent_replicas)
    fit, points = variance_scaling(cfg, b.exponent_t, workers=ctx.workers)
    lo, hi = EXPONENT_WINDOW
    return CriterionResult(
        "fluctuation-exponent",
        lo <= fit.slope <= hi,
        {"slope": fit.slope, "ci": [fit.ci_low, fit.ci_high], "variances": points},
    )


def limit_laws(ctx: SuiteContext) -> CriterionResult:
    """KS at t and 2t; the KS at 2t may exceed the one at t only within the two-run noise band."""
    b = ctx.budget
    first = limit_law_reports(ctx.runs.get(*SHOCK, b.shock_t, b.shock_replicas), threshold=b.limit_threshold)
    second = limit_law_reports(ctx.runs.get(*SHOCK, 2 * b.shock_t, b.shock_replicas), threshold=b.limit_threshold)
    slack = KS_COEF * np.sqrt(2.0 / b.shock_replicas)
    detail: dict[str, Any] = {"noise_band": slack}
    passed = bool(first)
    for r1, r2 in zip(first, second, strict=True):
        trend = r2.ks_statistic <= r1.ks_statistic + slack
        passed &= r1.passed and trend
        detail[r1.reference] = {"ks_t": r1.ks_statistic, "ks_2t": r2.ks_statistic, "nonincreasing": trend}
    return CriterionResult("limit-laws", passed, detail)


def one_point_goe(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    sc = shock_constants(*SHOCK)
    independence, values = independence_diagnostic(b.lpp_n, b.lpp_replicas, sc, master_seed=ctx.master_seed)
    reports = goe_reports(values, sc, threshold=b.one_point_threshold)
    uncorrelated = abs(independence.correlation) <= b.correlation_bound
    return CriterionResult(
        "one-point-goe",
        all(r.passed for r in reports) and uncorrelated,
        {
            "ks": [r.as_dict() for r in reports],
            "correlation": independence.correlation,
            "joint_distance": independence.joint_distance,
        },
    )


def point_to_point_gue(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    samples = point_to_point_samples(b.lpp_n, 1.0, b.lpp_replicas, master_seed=ctx.master_seed)
    report = gue_report(samples, threshold=b.one_point_threshold)
    return CriterionResult("point-to-point-gue", report.passed, report.as_dict())


def stationarity(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    sc = shock_constants(*SHOCK)
    result = stationarity_experiment(
        b.stationary_n,
        sc,
        sc.lambda_,
        replicas=b.increment_replicas,
        count=10,
        master_seed=ctx.master_seed,
        threshold=b.increment_threshold,
    )
    translation = stationarity_experiment(
        b.stationary_n,
        sc,
        sc.lambda_,
        replicas=b.translation_replicas,
        count=1,
        master_seed=ctx.master_seed + 1,
        threshold=b.increment_threshold,
    ).translation_ks
    passed = (
        result.increments.passed and abs(result.lag_one) <= b.lag_bound and translation <= b.translation_threshold
    )
    return CriterionResult(
        "stationarity",
        passed,
        {"increments": result.increments.as_dict(), "lag_one": result.lag_one, "translation_ks": translation},
    )


def coupling_lemma(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    result = coupling_lemma_experiment(
        b.coupling_n, shock_constants(*SHOCK), b.coupling_instances, master_seed=ctx.master_seed
    )
    return CriterionResult(
        "coupling-lemma",
        result.violations == 0,
        {"instances": result.instances, "premises": result.premises, "violations": result.violations},
    )


def good_event_grid(n: int, lambda_: float) -> list[float]:
    """GOOD_EVENT_R scaled so the largest r keeps lambda -+ r n^{-1/3} inside (0, 1)."""
    r_max = 0.9 * min(lambda_, 1.0 - lambda_) * n ** (1.0 / 3.0)
    scale = min(1.0, r_max / GOOD_EVENT_R[-1])
    return [r * scale for r in GOOD_EVENT_R]


def exit_tails(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    sc = shock_constants(*SHOCK)
    profile = exit_tail_profile(
        b.tail_n, sc, sc.lambda_, TAIL_C, TAIL_M_GRID, b.tail_replicas, master_seed=ctx.master_seed
    )
    fit = profile.gaussian_fit()
    tails_ok = fit is not None and fit[0] < 0 and fit[1] >= TAIL_R2
    estimates = [
        good_event_probability(b.tail_n, r, TAIL_C, sc, b.tail_replicas, master_seed=ctx.master_seed)
        for r in good_event_grid(b.tail_n, sc.lambda_)
    ]
    complements = [e.complement for e in estimates]
    good_ok = bool(np.all(np.diff(complements) <= 0)) and complements[-1] <= b.good_event_bound
    return CriterionResult(
        "exit-tails",
        tails_ok and good_ok,
        {
            "gaussian_fit": None if fit is None else {"slope": fit[0], "r2": fit[1]},
            "stationary_tail": profile.stationary.tolist(),
            "r": [e.r for e in estimates],
            "good_event_complement": complements,
        },
    )


def tightness(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    sc = shock_constants(*SHOCK)
    medians = []
    for n in b.tightness_n:
        sup = modulus_diagnostic(
            n, 2.0, TIGHTNESS_GRID, TIGHTNESS_GRID, sc, b.tightness_replicas, master_seed=ctx.master_seed
        )
        medians.append(float(np.median(sup)))
    return CriterionResult(
        "tightness",
        medians[1] < medians[0],
        {"n": list(b.tightness_n), "median_sup_increment": medians},
    )


def tracy_widom_numerics(ctx: SuiteContext) -> CriterionResult:
    tw = tw_numerics()
    checks = {
        "order_gap": tw.order_gap < ORDER_GAP,
        "gue_mean": abs(tw.gue_mean - GUE_MEAN[0]) <= GUE_MEAN[1],
        "goe_mean": abs(tw.goe_mean - GOE_MEAN[0]) <= GOE_MEAN[1],
        "goe_variance": abs(tw.goe_variance - GOE_VARIANCE[0]) <= GOE_VARIANCE[1],
        "monotone": tw.monotone,
        "limits": tw.left_limit <= LIMIT_TOLERANCE and tw.right_gap <= LIMIT_TOLERANCE,
    }
    detail: dict[str, Any] = {
        "order_gap": tw.order_gap,
        "gue_mean": tw.gue_mean,
        "goe_mean": tw.goe_mean,
        "goe_variance": tw.goe_variance,
        "checks": checks,
    }
    return CriterionResult("tracy-widom-numerics", all(checks.values()), detail)


def determinism(ctx: SuiteContext) -> CriterionResult:
    b = ctx.budget
    digests: list[dict[str, str]] = []
    with tempfile.TemporaryDirectory(prefix="shocklab-") as tmp:
        for workers in b.determinism_workers:
            cfg = ctx.runs.config(*SHOCK, 50.0, b.determinism_replicas)
            experiment = run_shock_experiment(cfg, workers=workers)
            reports = limit_law_reports(experiment)
            paths = write_experiment(
                experiment,
                reports,
                out_dir=Path(tmp) / f"w{workers}",
                overrides=EnvOverrides(out_dir=None, workers=None),
            )
            digests.append({p.name: file_sha256(p) for p in paths.deterministic()})
    return CriterionResult(
        "determinism",
        digests[0] == digests[1],
        {"workers": list(b.determinism_workers), "sha256": digests},
    )


CRITERIA: tuple[Callable[[SuiteContext], CriterionResult], ...] = (
    tasep_lpp_equivalence,
    second_class_interface,
    shock_speed,
    fluctuation_exponent,
    limit_laws,
    one_point_goe,
    point_to_point_gue,
    stationarity,
    coupling_lemma,
    exit_tails,
    tightness,
    tracy_widom_numerics,
    determinism,
)


def run_acceptance(
    quick: bool = False,
    *,
    master_seed: int = 0,
    workers: int = 1,
    only: set[int] | None = None,
) -> list[CriterionResult]:
    """
    Run the acceptance criteria in order.

    Parameters
    ----------
    quick:
        Use the QUICK budget instead of FULL
    master_seed:
        Seed shared by every criterion
    workers:
        Worker processes for the shock runs
    only:
        1-based criterion numbers to run; all when None
    """
    budget = QUICK if quick else FULL
    ctx = SuiteContext(budget=budget, master_seed=master_seed, workers=workers, runs=ShockRuns(master_seed, workers))
    results: list[CriterionResult] = []
    for number, criterion in enumerate(CRITERIA, start=1):
        if only is not None and number not in only:
            continue
        logger.info("Criterion %d: %s", number, criterion.__name__)
        result = criterion(ctx)
        logger.info("Criterion %d %s: %s", number, result.name, "pass" if result.passed else "FAIL")
        results.append(result)
    return results
