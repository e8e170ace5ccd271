"""
Replica orchestration for the shock experiment.

Each replica is a pure function of (config, master_seed, replica index).
Workers run replicas in any order; results go through SampleStore, so the
merged output is always in replica order and independent of the worker
count.

A replica whose second-class particle overflows its window is re-run with
the half-width doubled and the same replica seed. The re-run count is
reported, never hidden.
"""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass

from domain.errors import InvariantViolationError, WindowOverflowError
from domain.models import ExperimentConfig, ShockConstants, ShockSample, TasepConfig
from lattice.competition import interface_shock_sample
from store import SampleStore
from tasep.dynamics import minimal_halfwidth, shock_sample
from theory.constants import shock_constants

logger = logging.getLogger(__name__)

MAX_RERUNS = 4
CHUNK = 64


@dataclass(frozen=True, slots=True)
class ReplicaResult:
    sample: ShockSample
    reruns: int


@dataclass(frozen=True, slots=True)
class ReplicaRun:
    """Samples in replica order and the number of overflow re-runs."""

    samples: list[ShockSample]
    reruns: int
    workers: int


def simulate_direct(
    lambda_: float, rho: float, t: float, *, master_seed: int, replica: int, constants: ShockConstants
) -> ReplicaResult:
    """
    One direct TASEP replica, doubling the window on overflow.

    Raises
    ------
    WindowOverflowError
        If the replica still overflows after MAX_RERUNS doublings.
    """
    halfwidth: int | None = None
    for attempt in range(MAX_RERUNS + 1):
        config = TasepConfig(lambda_=lambda_, rho=rho, horizon=t, window_halfwidth=halfwidth)
        try:
            sample = shock_sample(config, t, master_seed=master_seed, replica=replica, constants=constants)
            return ReplicaResult(sample=sample, reruns=attempt)
        except WindowOverflowError as e:
            if attempt == MAX_RERUNS:
                raise
            halfwidth = 2 * (halfwidth or minimal_halfwidth(t))
            logger.warning(
                "Replica %d overflowed at t=%.4g (X=%d), re-running with half-width %d",
                replica,
                e.time,
                e.position,
                halfwidth,
            )
    raise AssertionError("unreachable")


def simulate_replica(cfg: ExperimentConfig, replica: int) -> ReplicaResult:
    """One replica of the configured engine."""
    sc = shock_constants(cfg.lambda_, cfg.rho)
    if cfg.engine == "interface":
        sample = interface_shock_sample(
            cfg.lambda_, cfg.rho, cfg.t, master_seed=cfg.master_seed, replica=replica, constants=sc
        )
        return ReplicaResult(sample=sample, reruns=0)
    return simulate_direct(cfg.lambda_, cfg.rho, cfg.t, master_seed=cfg.master_seed, replica=replica, constants=sc)


def _simulate_chunk(cfg: ExperimentConfig, replicas: list[int]) -> list[ReplicaResult]:
    return [simulate_replica(cfg, r) for r in replicas]


def _chunks(indices: range, size: int) -> Iterable[list[int]]:
    for start in range(indices.start, indices.stop, size):
        yield list(range(start, min(start + size, indices.stop)))


def run_replicas(
    cfg: ExperimentConfig,
    *,
    workers: int | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> ReplicaRun:
    """Run cfg.replicas replicas on `workers` processes and merge them in replica order."""
    n_workers = cfg.workers if workers is None else workers
    store = SampleStore()
    reruns = 0
    indices = range(cfg.replicas)

    def collect(results: list[ReplicaResult]) -> None:
        nonlocal reruns
        store.merge(r.sample for r in results)
        reruns += sum(r.reruns for r in results)
        if progress is not None:
            progress(store.count(), cfg.replicas)

    if n_workers <= 1:
        for chunk in _chunks(indices, CHUNK):
            collect(_simulate_chunk(cfg, chunk))
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as ex:
            futures = [ex.submit(_simulate_chunk, cfg, chunk) for chunk in _chunks(indices, CHUNK)]
            for future in as_completed(futures):
                collect(future.result())

    missing = store.missing(cfg.replicas)
    if missing:
        raise InvariantViolationError(f"Replicas {missing[:5]} produced no sample")
    if reruns:
        logger.warning("%d overflow re-runs across %d replicas", reruns, cfg.replicas)
    logger.info("Finished %d replicas on %d workers", cfg.replicas, n_workers)
    return ReplicaRun(samples=store.ordered(), reruns=reruns, workers=n_workers)
