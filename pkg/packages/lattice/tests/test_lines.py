"""Tests for start-line builders and initial positions."""

import numpy as np
import pytest
from domain.errors import InvalidParameterError
from lattice.lines import (
    extended_position,
    inclined_line,
    lambda_line,
    line_column,
    rho_line,
    shock_position,
    tasep_line,
)


class TestLineColumn:
    """Tests for line_column."""

    @pytest.mark.parametrize(
        ("density", "k", "expected"),
        [(0.25, 1, -3), (0.5, 4, -4), (0.2, 1, -4), (0.75, -1, 0), (0.75, -3, 1), (0.6, -3, 2)],
    )
    def test_values(self, density: float, k: int, expected: int) -> None:
        assert line_column(density, k) == expected


class TestDensityLines:
    """Tests for lambda_line, rho_line and inclined_line."""

    def test_lambda_line(self) -> None:
        line = lambda_line(0.5, 0, 3)
        np.testing.assert_array_equal(line.i, [-3, -2, -1, 0])
        np.testing.assert_array_equal(line.j, [3, 2, 1, 0])
        np.testing.assert_array_equal(line.labels, [3, 2, 1, 0])

    def test_rho_line(self) -> None:
        line = rho_line(0.75, -3, -1)
        np.testing.assert_array_equal(line.i, [0, 0, 1])
        np.testing.assert_array_equal(line.j, [-1, -2, -3])

    def test_half_line_ranges(self) -> None:
        with pytest.raises(InvalidParameterError, match="k >= 0"):
            lambda_line(0.25, -1, 3)
        with pytest.raises(InvalidParameterError, match="k < 0"):
            rho_line(0.75, -3, 0)

    def test_inclined_line_crosses_origin(self) -> None:
        line = inclined_line(0.25, -2, 2)
        assert (0, 0) in {line.point(n) for n in range(len(line))}
        assert line.boundary.tolist() == [0.0] * 5

    def test_density_must_be_open_unit(self) -> None:
        with pytest.raises(InvalidParameterError):
            inclined_line(1.0, 0, 2)


class TestTasepLine:
    """Tests for tasep_line."""

    def test_points(self) -> None:
        line = tasep_line(np.array([0, 1]), np.array([1, -2]))
        assert [line.point(n) for n in range(len(line))] == [(-1, 1), (1, 0)]
        np.testing.assert_array_equal(line.labels, [1, 0])

    def test_rejects_wrong_order(self) -> None:
        with pytest.raises(InvalidParameterError, match="right to left"):
            tasep_line(np.array([1, 0]), np.array([3, 1]))

    def test_rejects_label_gaps(self) -> None:
        with pytest.raises(InvalidParameterError):
            tasep_line(np.array([2, 0]), np.array([-2, 1]))


class TestInitialPositions:
    """Tests for shock_position and extended_position."""

    def test_left_half(self) -> None:
        assert [shock_position(n, 0.5, 0.75) for n in (1, 2, 3)] == [-2, -4, -6]
        assert shock_position(1, 0.25, 0.75) == -4
        assert shock_position(3, 0.2, 0.6) == -15

    def test_right_half_floors_negative_argument(self) -> None:
        assert [shock_position(n, 0.25, 0.5) for n in (-1, -2, -3)] == [2, 4, 6]
        assert shock_position(-1, 0.25, 0.75) == 2
        assert shock_position(-3, 0.2, 0.6) == 5

    def test_no_particle_zero(self) -> None:
        with pytest.raises(InvalidParameterError):
            shock_position(0, 0.25, 0.75)

    def test_extended_configuration(self) -> None:
        assert extended_position(0, 0.5, 0.75) == 1
        assert extended_position(2, 0.5, 0.75) == -4
        assert extended_position(-1, 0.5, 0.75) == 3
        assert extended_position(-3, 0.5, 0.75) == 5
