"""Tests for shared domain models."""

import numpy as np
import pytest
from domain.errors import InvalidParameterError
from domain.models import (
    ExperimentConfig,
    InterfacePath,
    KsReport,
    SeedSpec,
    ShockConstants,
    ShockSample,
    StartSet,
    Window,
)
from domain.types import Stream, parse_stream
from pydantic import ValidationError

ZERO_SPEED = ShockConstants(
    lambda_=0.25,
    rho=0.75,
    v=0.0,
    gamma=0.0,
    mu0=16.0 / 3.0,
    sigma1=3.0528,
    sigma2=3.0528,
    upsilon=16.0 / 3.0,
    xi_lambda=2.0 / 3.0,
    xi_rho=-2.0,
    a_lambda=(-2.0, 2.0 / 3.0),
    a_rho=(2.0 / 3.0, -2.0),
    char_dir_lambda=(0.5625, 0.0625),
    char_dir_rho=(0.0625, 0.5625),
)


class TestSeedSpec:
    """Tests for SeedSpec."""

    def test_rejects_negative_seed(self) -> None:
        with pytest.raises(InvalidParameterError, match="64-bit"):
            SeedSpec(master_seed=-1)

    def test_rejects_seed_above_64_bits(self) -> None:
        with pytest.raises(InvalidParameterError):
            SeedSpec(master_seed=2**64)

    def test_with_stream_keeps_master_seed(self) -> None:
        seed = SeedSpec(master_seed=42).with_stream(Stream.CLOCKS)
        assert seed.master_seed == 42
        assert seed.stream is Stream.CLOCKS

    def test_frozen(self) -> None:
        seed = SeedSpec(master_seed=1)
        with pytest.raises(AttributeError):
            seed.master_seed = 2  # type: ignore[misc]


class TestParseStream:
    """Tests for parse_stream."""

    def test_by_name(self) -> None:
        assert parse_stream("boundary-p") is Stream.BOUNDARY_P
        assert parse_stream("bulk") is Stream.BULK

    def test_by_integer(self) -> None:
        assert parse_stream("3") is Stream.CLOCKS

    def test_unknown_raises(self) -> None:
        with pytest.raises(ValueError, match="Unknown stream"):
            parse_stream("nope")


class TestWindow:
    """Tests for Window."""

    def test_contains_is_inclusive(self) -> None:
        window = Window(i_min=-2, i_max=3, j_min=0, j_max=4)
        assert window.contains(-2, 0)
        assert window.contains(3, 4)
        assert not window.contains(4, 0)
        assert window.width == 6
        assert window.height == 5

    def test_empty_window_raises(self) -> None:
        with pytest.raises(InvalidParameterError, match="Empty window"):
            Window(i_min=1, i_max=0, j_min=0, j_max=0)


class TestStartSet:
    """Tests for StartSet."""

    def test_from_points_defaults(self) -> None:
        starts = StartSet.from_points([(0, 2), (1, 1), (3, 0)])
        assert len(starts) == 3
        assert starts.point(1) == (1, 1)
        assert list(starts.boundary) == [0.0, 0.0, 0.0]
        assert list(starts.labels) == [0, 1, 2]

    def test_weak_chain_with_vertical_stack_is_accepted(self) -> None:
        starts = StartSet.from_points([(-1, 3), (-1, 2), (0, 1)])
        assert len(starts) == 3

    def test_up_right_step_is_rejected(self) -> None:
        with pytest.raises(InvalidParameterError, match="down-right chain"):
            StartSet.from_points([(0, 0), (1, 1)])

    def test_repeated_point_is_rejected(self) -> None:
        with pytest.raises(InvalidParameterError):
            StartSet.from_points([(0, 0), (0, 0)])

    def test_empty_is_rejected(self) -> None:
        with pytest.raises(InvalidParameterError, match="at least one"):
            StartSet.from_points([])

    def test_admissible_mask(self) -> None:
        starts = StartSet.from_points([(0, 5), (2, 1), (6, 0)])
        assert list(starts.admissible((4, 4))) == [False, True, False]


class TestInterfacePath:
    """Tests for InterfacePath."""

    def test_accepts_unit_steps(self) -> None:
        ip = InterfacePath(points=np.array([[0, 0], [1, 0], [1, 1]]), times=np.array([-np.inf, 0.0, 0.7]))
        assert len(ip) == 3
        assert ip.point(2) == (1, 1)
        assert ip.last_time == pytest.approx(0.7)

    def test_rejects_diagonal_step(self) -> None:
        with pytest.raises(InvalidParameterError, match="steps"):
            InterfacePath(points=np.array([[0, 0], [1, 1]]), times=np.array([-np.inf, 0.0]))

    def test_rejects_non_increasing_times(self) -> None:
        with pytest.raises(InvalidParameterError, match="increasing"):
            InterfacePath(points=np.array([[0, 0], [1, 0], [2, 0]]), times=np.array([-np.inf, 0.0, 0.0]))


class TestShockSample:
    """Tests for ShockSample rescaling."""

    def test_rescaled_fields_recompute_from_raw(self) -> None:
        sample = ShockSample.from_raw(
            replica=0, t=1000.0, x_t=20, n_t=400, lambda_=0.25, rho=0.75, constants=ZERO_SPEED
        )
        assert sample.x_rescaled == pytest.approx(20 / 10.0)
        assert sample.n_rescaled == pytest.approx((400 - 2000.0 / (16.0 / 3.0)) / 10.0)

    def test_missing_constants_give_nan(self) -> None:
        sample = ShockSample.from_raw(replica=0, t=10.0, x_t=3, n_t=3, lambda_=0.5, rho=0.5, constants=None)
        assert sample.x_rescaled != sample.x_rescaled

    def test_zero_time_gives_nan(self) -> None:
        sample = ShockSample.from_raw(replica=0, t=0.0, x_t=0, n_t=0, lambda_=0.25, rho=0.75, constants=ZERO_SPEED)
        assert sample.n_rescaled != sample.n_rescaled


class TestKsReport:
    """Tests for KsReport."""

    def test_pass_iff_below_threshold(self) -> None:
        assert KsReport(ks_statistic=0.05, n_samples=100, reference="goe", threshold=0.05).passed
        assert not KsReport(ks_statistic=0.051, n_samples=100, reference="goe", threshold=0.05).passed

    def test_nan_never_passes(self) -> None:
        assert not KsReport(ks_statistic=float("nan"), n_samples=0, reference="goe", threshold=1.0).passed


class TestExperimentConfig:
    """Tests for ExperimentConfig."""

    def test_lambda_alias(self) -> None:
        cfg = ExperimentConfig.model_validate({"lambda": 0.2, "rho": 0.6})
        assert cfg.lambda_ == 0.2

    def test_zero_replicas_rejected(self) -> None:
        with pytest.raises(ValidationError):
            ExperimentConfig(replicas=0)

    def test_provenance_excludes_execution_fields(self) -> None:
        cfg = ExperimentConfig(workers=8, out_dir="/tmp/x")
        echo = cfg.provenance()
        assert "workers" not in echo
        assert "out_dir" not in echo
        assert echo["lambda"] == 0.25

    def test_provenance_independent_of_workers(self) -> None:
        assert ExperimentConfig(workers=1).provenance() == ExperimentConfig(workers=8).provenance()
