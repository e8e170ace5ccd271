"""Tests for shock constants and point-to-point scaling."""

import pytest
from domain.errors import InvalidParameterError
from theory.constants import (
    crossing_law_coefficients,
    limit_law_coefficients,
    pt_point_scaling,
    shock_constants,
    side_slope,
    upsilon_vanishing_path,
)


class TestShockConstants:
    """Tests for shock_constants function."""

    def test_zero_speed_pair(self) -> None:
        sc = shock_constants(0.25, 0.75)

        assert sc.v == pytest.approx(0.0, abs=1e-15)
        assert sc.gamma == pytest.approx(0.0, abs=1e-15)
        assert sc.mu0 == pytest.approx(16.0 / 3.0)
        assert sc.upsilon == pytest.approx(16.0 / 3.0)
        assert sc.sigma1 == pytest.approx(3.0525, abs=5e-4)
        assert sc.sigma2 == pytest.approx(sc.sigma1)

    def test_moving_shock(self) -> None:
        sc = shock_constants(0.2, 0.6)

        assert sc.v == pytest.approx(0.2)
        assert sc.gamma == pytest.approx(0.4545, abs=1e-4)
        assert sc.mu0 == pytest.approx(4.5455, abs=1e-4)
        assert sc.upsilon == pytest.approx(4.5833, abs=1e-4)
        assert sc.sigma1 == pytest.approx(3.0512, abs=1e-3)
        assert sc.sigma2 == pytest.approx(2.6652, abs=1e-3)

    def test_symmetric_pair_has_zero_speed(self) -> None:
        sc = shock_constants(0.1, 0.9)
        assert sc.v == pytest.approx(0.0, abs=1e-15)
        assert sc.gamma == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("lambda_,rho", [(0.1, 0.2), (0.3, 0.9), (0.45, 0.55), (0.05, 0.95)])
    def test_sign_invariants(self, lambda_: float, rho: float) -> None:
        sc = shock_constants(lambda_, rho)
        assert sc.upsilon > 0
        assert -1.0 < sc.gamma < 1.0
        assert sc.mu0 > 0
        assert sc.xi_lambda > 0 > sc.xi_rho

    @pytest.mark.parametrize("lambda_,rho", [(0.6, 0.4), (0.5, 0.5), (0.0, 0.5), (0.5, 1.0)])
    def test_invalid_ordering_raises(self, lambda_: float, rho: float) -> None:
        with pytest.raises(InvalidParameterError, match="0 < lambda < rho < 1"):
            shock_constants(lambda_, rho)

    def test_characteristics_meet_at_P(self) -> None:
        """A_s + t * char_dir_s hits ((1+gamma), (1-gamma)) for some t > 0 (per unit N)."""
        sc = shock_constants(0.2, 0.6)
        target = (1.0 + sc.gamma, 1.0 - sc.gamma)
        for start, direction in ((sc.a_lambda, sc.char_dir_lambda), (sc.a_rho, sc.char_dir_rho)):
            dx, dy = target[0] - start[0], target[1] - start[1]
            assert dx * direction[1] == pytest.approx(dy * direction[0])
            assert dx > 0

    def test_start_points_lie_on_their_lines(self) -> None:
        sc = shock_constants(0.25, 0.75)
        assert sc.a_lambda == pytest.approx((-2.0, 2.0 / 3.0))
        assert sc.a_rho == pytest.approx((2.0 / 3.0, -2.0))


class TestUpsilon:
    """Tests for Upsilon and side slopes."""

    def test_vanishes_as_gap_closes(self) -> None:
        path = upsilon_vanishing_path(0.2, 0.6, steps=10)

        values = [ups for _, ups in path]
        assert all(b < a for a, b in zip(values, values[1:], strict=False))
        assert values[-1] < 0.01

    def test_side_slope_zero_at_half(self) -> None:
        assert side_slope(0.5) == 0.0

    def test_side_slope_rejects_boundary(self) -> None:
        with pytest.raises(InvalidParameterError):
            side_slope(1.0)


class TestPtPointScaling:
    """Tests for pt_point_scaling function."""

    def test_diagonal(self) -> None:
        scaling = pt_point_scaling(1.0)
        assert scaling.mu_pp == pytest.approx(4.0)
        assert scaling.sigma_eta == pytest.approx(2.0 ** (4.0 / 3.0))

    @pytest.mark.parametrize("eta", [0.25, 0.5, 2.0, 4.0])
    def test_mu_above_four_off_diagonal(self, eta: float) -> None:
        assert pt_point_scaling(eta).mu_pp > 4.0

    def test_nonpositive_eta_raises(self) -> None:
        with pytest.raises(InvalidParameterError):
            pt_point_scaling(0.0)


class TestLimitLawCoefficients:
    """Tests for the coefficients of the limit laws."""

    def test_symmetric_pair_has_opposite_coefficients(self) -> None:
        a, b = limit_law_coefficients(shock_constants(0.25, 0.75), "X")
        assert a > 0 > b
        assert a == pytest.approx(-b)

    def test_number_of_steps_carries_extra_factors(self) -> None:
        sc = shock_constants(0.2, 0.6)
        ax, bx = limit_law_coefficients(sc, "X")
        an, bn = limit_law_coefficients(sc, "N")
        assert an == pytest.approx(ax * (1.0 - 2.0 * 0.6))
        assert bn == pytest.approx(bx * (1.0 - 2.0 * 0.2))

    def test_crossing_coefficients(self) -> None:
        sc = shock_constants(0.25, 0.75)
        a, b = crossing_law_coefficients(sc)
        assert a == pytest.approx(sc.sigma1 * 2.0 ** (-2.0 / 3.0) / sc.upsilon)
        assert b == pytest.approx(-a)
