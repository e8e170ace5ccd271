"""Tests for the Airy function, Fredholm determinants and tabulated laws."""

import numpy as np
import pytest
from domain.errors import AccuracyError, AiryRangeError, DegenerateCombinationError
from scipy.special import airy
from theory.constants import limit_law_coefficients, shock_constants
from theory.distributions import (
    airy_ai,
    combination_cdf,
    f_goe_cdf,
    f_gue_cdf,
    goe_scaled_cdf,
    goe_scaled_cdf_by_kernel,
    goe_table,
    limit_law_cdf,
    tabulate,
)
from theory.distributions.tables import DistTable


class TestAiryAi:
    """Tests for airy_ai function."""

    def test_value_at_zero(self) -> None:
        assert airy_ai(0.0) == pytest.approx(0.3550280539, abs=1e-10)

    def test_decays_on_positive_axis(self) -> None:
        assert airy_ai(5.0) < airy_ai(4.0) < airy_ai(3.0)
        assert airy_ai(5.0) > 0

    def test_first_zero_bracketed(self) -> None:
        assert airy_ai(-2.34) * airy_ai(-2.33) < 0

    @pytest.mark.parametrize("x", [-30.0, -12.0, -6.2, -5.8, -3.3, -1.0, 0.5, 2.0, 5.9, 6.1, 9.0, 15.0])
    def test_matches_scipy(self, x: float) -> None:
        expected = airy(x)[0]
        assert airy_ai(x) == pytest.approx(expected, rel=1e-6, abs=1e-9)

    def test_out_of_range_raises(self) -> None:
        with pytest.raises(AiryRangeError):
            airy_ai(40.5)
        with pytest.raises(AiryRangeError):
            airy_ai(-41.0)


class TestFredholm:
    """Tests for the Fredholm-determinant distribution functions."""

    def test_gue_right_tail(self) -> None:
        assert f_gue_cdf(6.0) == pytest.approx(1.0, abs=1e-6)

    def test_goe_right_tail(self) -> None:
        assert f_goe_cdf(6.0) == pytest.approx(1.0, abs=1e-6)

    def test_gue_at_zero_stable_under_order_doubling(self) -> None:
        low, high = f_gue_cdf(0.0, 64), f_gue_cdf(0.0, 128)
        assert abs(low - high) < 1e-8
        assert low == pytest.approx(0.9694, abs=1e-3)

    def test_goe_at_zero(self) -> None:
        assert f_goe_cdf(0.0) == pytest.approx(0.8319, abs=1e-3)

    def test_low_order_raises(self) -> None:
        with pytest.raises(AccuracyError, match=">= 8"):
            f_goe_cdf(0.0, order=4)

    @pytest.mark.parametrize("s", [-3.0, -1.0, 0.0, 1.5])
    def test_two_ways_of_scaling_agree(self, s: float) -> None:
        sigma = shock_constants(0.25, 0.75).sigma1
        assert goe_scaled_cdf(s, sigma) == pytest.approx(goe_scaled_cdf_by_kernel(s, sigma), abs=1e-8)


class TestTables:
    """Tests for tabulated Tracy-Widom laws."""

    @pytest.fixture(scope="class")
    def gue(self) -> DistTable:
        return tabulate("gue")

    @pytest.fixture(scope="class")
    def goe(self) -> DistTable:
        return goe_table()

    def test_limits_and_monotonicity(self, gue: DistTable, goe: DistTable) -> None:
        for table in (gue, goe):
            assert table.is_monotone()
            assert table.cdf[0] == pytest.approx(0.0, abs=1e-6)
            assert table.cdf[-1] == pytest.approx(1.0, abs=1e-6)
            assert table.total_mass() == pytest.approx(1.0, abs=1e-5)

    def test_gue_mean(self, gue: DistTable) -> None:
        assert gue.mean() == pytest.approx(-1.7711, abs=1e-3)

    def test_goe_moments(self, goe: DistTable) -> None:
        assert goe.mean() == pytest.approx(-1.2065, abs=2e-3)
        assert goe.variance() == pytest.approx(1.6078, abs=5e-3)

    def test_order_doubling(self) -> None:
        grid = np.linspace(-6.0, 4.0, 11)
        low, high = tabulate("goe", grid, order=64), tabulate("goe", grid, order=128)
        assert np.max(np.abs(low.cdf - high.cdf)) < 1e-8

    def test_inverse_transform_sampling(self, goe: DistTable) -> None:
        rng = np.random.default_rng(7)
        samples = np.sort(goe.sample(rng, 200_000))
        empirical = np.arange(1, len(samples) + 1) / len(samples)
        assert np.max(np.abs(empirical - goe(samples))) < 0.005

    def test_quantile_inverts_cdf(self, goe: DistTable) -> None:
        assert float(goe(goe.quantile(0.3))) == pytest.approx(0.3, abs=1e-4)

    def test_outside_grid(self, goe: DistTable) -> None:
        assert float(goe(-50.0)) == 0.0
        assert float(goe(50.0)) == 1.0


class TestLimitLaws:
    """Tests for combination_cdf and limit_law_cdf."""

    def test_single_coefficient_reduces_to_goe(self) -> None:
        grid = np.linspace(-4.0, 3.0, 15)
        table = combination_cdf(1.0, 0.0, grid)
        assert table.cdf == pytest.approx(goe_table()(grid))

    def test_negative_single_coefficient_reflects(self) -> None:
        grid = np.array([-1.0, 0.5, 2.0])
        table = combination_cdf(0.0, -1.0, grid)
        assert table.cdf == pytest.approx(1.0 - goe_table()(-grid))

    def test_both_zero_raises(self) -> None:
        with pytest.raises(DegenerateCombinationError):
            combination_cdf(0.0, 0.0)

    def test_symmetric_law_has_zero_median(self) -> None:
        table = limit_law_cdf("X", shock_constants(0.25, 0.75))
        swapped_a, swapped_b = limit_law_coefficients(shock_constants(0.25, 0.75), "X")
        swapped = combination_cdf(-swapped_b, -swapped_a, table.s_grid)
        assert table.median() == pytest.approx(0.0, abs=1e-3)
        assert table.median() == pytest.approx(swapped.median(), abs=1e-6)

    def test_mean_is_linear(self) -> None:
        sc = shock_constants(0.2, 0.6)
        a, b = limit_law_coefficients(sc, "X")
        table = limit_law_cdf("X", sc)
        assert table.mean() == pytest.approx((a + b) * goe_table().mean(), abs=1e-3)

    def test_number_law_degenerate_at_half_density(self) -> None:
        with pytest.raises(DegenerateCombinationError, match="vanishing"):
            limit_law_cdf("N", shock_constants(0.2, 0.5))
