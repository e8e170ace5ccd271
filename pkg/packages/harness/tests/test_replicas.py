"""Tests for replica orchestration."""

from unittest.mock import patch

import pytest
from domain.errors import InvariantViolationError, WindowOverflowError
from domain.models import ExperimentConfig, ShockSample
from harness.replicas import MAX_RERUNS, ReplicaResult, run_replicas, simulate_direct, simulate_replica
from tasep.dynamics import minimal_halfwidth
from theory.constants import shock_constants


def fake_sample(replica: int) -> ShockSample:
    return ShockSample(
        replica=replica, t=5.0, lambda_=0.25, rho=0.75, x_t=0, n_t=10, x_rescaled=0.0, n_rescaled=0.0
    )


@pytest.fixture
def cfg() -> ExperimentConfig:
    return ExperimentConfig(t=5.0, replicas=5, master_seed=42)


class TestSimulateDirect:
    """Tests for simulate_direct."""

    def test_overflow_doubles_window(self) -> None:
        overflow = WindowOverflowError("out", time=2.0, position=9)
        with patch("harness.replicas.shock_sample", side_effect=[overflow, fake_sample(3)]) as mock:
            result = simulate_direct(
                0.25, 0.75, 5.0, master_seed=1, replica=3, constants=shock_constants(0.25, 0.75)
            )
        assert result.reruns == 1
        assert result.sample.replica == 3
        first, second = (call.args[0] for call in mock.call_args_list)
        assert first.window_halfwidth is None
        assert second.window_halfwidth == 2 * minimal_halfwidth(5.0)
        # same replica seed on the re-run
        assert mock.call_args_list[1].kwargs["replica"] == 3

    def test_gives_up_after_max_reruns(self) -> None:
        overflow = WindowOverflowError("out", time=2.0, position=9)
        with patch("harness.replicas.shock_sample", side_effect=overflow) as mock:
            with pytest.raises(WindowOverflowError):
                simulate_direct(0.25, 0.75, 5.0, master_seed=1, replica=0, constants=shock_constants(0.25, 0.75))
        assert mock.call_count == MAX_RERUNS + 1

    def test_real_replica_is_reproducible(self, cfg: ExperimentConfig) -> None:
        assert simulate_replica(cfg, 2) == simulate_replica(cfg, 2)

    def test_interface_engine(self, cfg: ExperimentConfig) -> None:
        result = simulate_replica(cfg.model_copy(update={"engine": "interface"}), 1)
        assert result.reruns == 0
        assert result.sample.replica == 1
        assert result.sample.n_t >= 0


class TestRunReplicas:
    """Tests for run_replicas."""

    def test_replica_order(self, cfg: ExperimentConfig) -> None:
        run = run_replicas(cfg)
        assert [s.replica for s in run.samples] == list(range(5))
        assert run.workers == 1

    def test_single_replica(self, cfg: ExperimentConfig) -> None:
        run = run_replicas(cfg.model_copy(update={"replicas": 1}))
        assert len(run.samples) == 1

    def test_independent_of_worker_count(self, cfg: ExperimentConfig) -> None:
        cfg = cfg.model_copy(update={"replicas": 70})
        assert run_replicas(cfg, workers=1).samples == run_replicas(cfg, workers=2).samples

    def test_progress(self, cfg: ExperimentConfig) -> None:
        seen: list[tuple[int, int]] = []
        run_replicas(cfg, progress=lambda done, total: seen.append((done, total)))
        assert seen[-1] == (5, 5)

    def test_missing_replica_is_invariant_violation(self, cfg: ExperimentConfig) -> None:
        def drop_last(_cfg: ExperimentConfig, chunk: list[int]) -> list[ReplicaResult]:
            return [ReplicaResult(sample=fake_sample(r), reruns=0) for r in chunk[:-1]]

        with patch("harness.replicas._simulate_chunk", side_effect=drop_last):
            with pytest.raises(InvariantViolationError, match=r"\[4\]"):
                run_replicas(cfg)
