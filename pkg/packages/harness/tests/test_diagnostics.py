"""Tests for the rescaled line-to-point diagnostics."""

import numpy as np
import pytest
from domain.errors import InvalidParameterError
from domain.models import ShockConstants
from domain.types import Stream
from harness.diagnostics import (
    CROSSING_GRID,
    CrossingSamples,
    crossing_diagnostic,
    drift_adjusted,
    find_crossing,
    independence_report,
    maximizer_localization_diagnostic,
    modulus_diagnostic,
    one_point_samples,
    side_line,
    slow_decorrelation_diagnostic,
)
from theory.constants import shock_constants


@pytest.fixture
def sc() -> ShockConstants:
    return shock_constants(0.25, 0.75)


class TestFindCrossing:
    """Tests for find_crossing and drift_adjusted."""

    def test_identical_profiles_cross_at_origin(self, sc: ShockConstants) -> None:
        values = np.sin(CROSSING_GRID)
        u = find_crossing(
            CROSSING_GRID,
            drift_adjusted(values, CROSSING_GRID, sc.lambda_),
            drift_adjusted(values, CROSSING_GRID, sc.rho),
        )
        assert u == 0.0

    def test_interpolates_sign_change(self) -> None:
        assert find_crossing(np.array([0.0, 1.0]), np.array([-1.0, 1.0]), np.zeros(2)) == pytest.approx(0.5)

    def test_first_crossing_wins(self) -> None:
        u = np.array([0.0, 1.0, 2.0, 3.0])
        assert find_crossing(u, np.array([-1.0, 1.0, -1.0, 0.0]), np.zeros(4)) == pytest.approx(0.5)

    def test_no_crossing(self) -> None:
        assert find_crossing(np.array([0.0, 1.0, 2.0]), np.ones(3), np.zeros(3)) is None

    def test_deviation(self) -> None:
        samples = CrossingSamples(
            crossing=np.array([1.0]), chi_lambda=np.array([3.0]), chi_rho=np.array([1.0]), upsilon=4.0, flagged=0
        )
        assert samples.deviation == pytest.approx([0.5])


class TestLinesAndSamples:
    """Tests for side_line and one_point_samples."""

    def test_lambda_side_rows(self, sc: ShockConstants) -> None:
        line = side_line(sc, "lambda", [(3, 5), (1, 2)])
        assert int(line.j.min()) == 0
        assert int(line.j.max()) == 5

    def test_rho_side_rows_are_negative(self, sc: ShockConstants) -> None:
        line = side_line(sc, "rho", [(10, 5)])
        assert int(line.j.max()) == -1
        assert int(line.j.min()) <= -31

    def test_one_point_shape_and_determinism(self, sc: ShockConstants) -> None:
        a = one_point_samples(40, sc, 3, master_seed=5)
        assert a.shape == (3, 2)
        assert np.all(np.isfinite(a))
        np.testing.assert_array_equal(a, one_point_samples(40, sc, 3, master_seed=5))

    def test_stream_changes_weights(self, sc: ShockConstants) -> None:
        bulk = one_point_samples(40, sc, 2, master_seed=5)
        clocks = one_point_samples(40, sc, 2, master_seed=5, stream=Stream.CLOCKS)
        assert not np.array_equal(bulk, clocks)

    def test_independence_report(self) -> None:
        x = np.arange(10.0)
        report = independence_report(np.column_stack([x, 3.0 * x]))
        assert report.correlation == pytest.approx(1.0)
        assert report.n_samples == 10


class TestModulus:
    """Tests for modulus_diagnostic."""

    def test_singleton_grid_is_zero(self, sc: ShockConstants) -> None:
        sup = modulus_diagnostic(40, 1.0, np.array([0.0]), np.array([0.0]), sc, 3)
        np.testing.assert_array_equal(sup, np.zeros(3))

    def test_nonnegative(self, sc: ShockConstants) -> None:
        grid = np.array([-1.0, 0.0, 1.0])
        sup = modulus_diagnostic(40, 1.0, grid, grid, sc, 2, side="rho")
        assert np.all(sup >= 0)

    def test_grid_outside_window(self, sc: ShockConstants) -> None:
        with pytest.raises(InvalidParameterError, match="within"):
            modulus_diagnostic(40, 1.0, np.array([1.5]), np.array([0.0]), sc, 1)


class TestCrossingDiagnostic:
    """Tests for crossing_diagnostic."""

    def test_grid_must_contain_origin(self, sc: ShockConstants) -> None:
        with pytest.raises(InvalidParameterError, match="u = 0"):
            crossing_diagnostic(40, sc, 1, u_grid=np.array([0.5, 1.0]))

    def test_accounts_for_every_replica(self, sc: ShockConstants) -> None:
        samples = crossing_diagnostic(60, sc, 4, u_grid=np.linspace(-2.0, 2.0, 41))
        assert len(samples.crossing) + samples.flagged == 4
        assert len(samples.chi_lambda) == len(samples.crossing)
        assert samples.upsilon == sc.upsilon


class TestCharacteristicDiagnostics:
    """Tests for slow decorrelation and maximizer localization."""

    def test_maximizer_fraction_in_unit_interval(self, sc: ShockConstants) -> None:
        fraction = maximizer_localization_diagnostic(60, 0.75, sc, 3)
        assert 0.0 <= fraction <= 1.0

    @pytest.mark.slow
    def test_slow_decorrelation(self, sc: ShockConstants) -> None:
        result = slow_decorrelation_diagnostic(200, 0.5, sc, 60, master_seed=1)
        assert result.correlation > 0.5
        assert result.replicas == 60
