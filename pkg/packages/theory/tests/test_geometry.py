"""Tests for lattice geometry and rescaling."""

import pytest
from domain.errors import InvalidParameterError
from theory.constants import shock_constants
from theory.geometry import (
    characteristic_points,
    d_eta_points,
    exit_point_P,
    lattice_round,
    point_P,
    point_P_real,
    rescale,
    start_point,
    unrescale,
)


class TestPointP:
    """Tests for point_P and point_P_real."""

    @pytest.fixture
    def sc(self):
        return shock_constants(0.25, 0.75)

    def test_origin_of_scaled_coordinates(self, sc) -> None:
        assert point_P(1000, 0.0, 0.0, sc) == (1000, 1000)

    def test_shift_along_anti_diagonal(self, sc) -> None:
        assert point_P_real(1000, 2.0, 0.0, sc) == pytest.approx((1020.0, 980.0))

    @pytest.mark.parametrize("u", [-3.0, -0.7, 0.0, 1.3, 5.0])
    def test_coordinate_sum_independent_of_u(self, sc, u: float) -> None:
        x, y = point_P_real(1000, u, 1.5, sc)
        assert x + y == pytest.approx(2.0 * (1000 + 1.5 * 10.0))

    def test_moving_shock_end_point(self) -> None:
        sc = shock_constants(0.2, 0.6)
        x, y = point_P_real(100, 0.0, 0.0, sc)
        assert x == pytest.approx((1.0 + sc.gamma) * 100)
        assert y == pytest.approx((1.0 - sc.gamma) * 100)

    def test_nonpositive_coordinate_raises(self, sc) -> None:
        with pytest.raises(InvalidParameterError, match="nonpositive"):
            point_P(8, 10.0, 0.0, sc)

    def test_rounding_halves_up(self) -> None:
        assert lattice_round(2.5) == 3
        assert lattice_round(-2.5) == -2
        assert lattice_round(2.49) == 2


class TestCharacteristicPoints:
    """Tests for characteristic_points function."""

    def test_points_lie_on_characteristics(self) -> None:
        sc = shock_constants(0.25, 0.75)
        e_lambda, e_rho = characteristic_points(10_000, 0.5, sc)

        # N^nu = 100: P - 100 * ((1-s)^2, s^2)
        assert e_lambda == (10_000 - 56, 10_000 - 6)
        assert e_rho == (10_000 - 6, 10_000 - 56)

    def test_points_between_start_and_end(self) -> None:
        sc = shock_constants(0.2, 0.6)
        N = 1000
        e_lambda, _ = characteristic_points(N, 0.5, sc)
        a = start_point(N, sc, "lambda")
        p = point_P(N, 0.0, 0.0, sc)
        assert a[0] < e_lambda[0] < p[0]
        assert a[1] < e_lambda[1] < p[1]

    def test_invalid_nu_raises(self) -> None:
        with pytest.raises(InvalidParameterError):
            characteristic_points(100, 1.0, shock_constants(0.25, 0.75))


class TestRescale:
    """Tests for rescale and unrescale."""

    @pytest.mark.parametrize("side", ["lambda", "rho"])
    @pytest.mark.parametrize("u,v", [(0.0, 0.0), (1.5, -0.5), (-2.0, 2.0)])
    def test_affine_inverse(self, side, u: float, v: float) -> None:
        sc = shock_constants(0.2, 0.6)
        raw = 4321.123
        assert unrescale(rescale(raw, 1000, u, v, side, sc), 1000, u, v, side, sc) == pytest.approx(raw, rel=1e-14)

    def test_reduces_to_spatial_centering(self) -> None:
        sc = shock_constants(0.25, 0.75)
        assert rescale(sc.mu0 * 1000 + 10.0, 1000, 0.0, 0.0, "lambda", sc) == pytest.approx(1.0)

    def test_u_term_uses_side_slope(self) -> None:
        sc = shock_constants(0.25, 0.75)
        # slope of lambda = 0.25 is (1 - 0.5) / 0.1875 = 8/3
        centred = rescale(sc.mu0 * 1000, 1000, 1.0, 0.0, "lambda", sc)
        assert centred == pytest.approx(8.0 / 3.0)


class TestDEtaPoints:
    """Tests for d_eta_points function."""

    def test_points_are_distinct_and_monotone(self) -> None:
        points = d_eta_points(200, 0.75, shock_constants(0.2, 0.6))

        assert points[0] == (0, 0)
        assert len(points) == len(set(points))
        for p, q in zip(points, points[1:], strict=False):
            assert q[0] >= p[0] and q[1] >= p[1]

    def test_stops_short_of_end_point(self) -> None:
        N = 1000
        points = d_eta_points(N, 0.75, shock_constants(0.25, 0.75))
        eta_max = 1.0 - N ** (0.75 - 1.0)
        assert points[-1][0] <= eta_max * N
        assert points[-1][0] >= eta_max * N - 1

    def test_beta_out_of_range(self) -> None:
        with pytest.raises(InvalidParameterError, match="beta"):
            d_eta_points(100, 0.5, shock_constants(0.25, 0.75))


class TestExitPointP:
    """Tests for exit_point_P function."""

    def test_characteristic_end_point(self) -> None:
        assert exit_point_P(400, 0.5, 0.0) == (100, 100)
        assert exit_point_P(400, 0.5, 7.0) == (107, 93)
