"""Tests for counter-based weights."""

import numpy as np
import pytest
from domain.errors import BoundsError, InvalidParameterError
from domain.models import SeedSpec, Window
from domain.types import Stream
from lattice.weights import (
    ForcedField,
    WeightField,
    derive_replica_seed,
    exponential_from_uniform,
    exponential_sequence,
    sample_exponential,
    uniform_row,
    weight_at,
    weight_block,
    weight_diagonal,
)
from scipy import stats


@pytest.fixture
def seed() -> SeedSpec:
    return SeedSpec(master_seed=20240611)


class TestUniforms:
    """Tests for uniform_row."""

    def test_runs_overlap_consistently(self, seed) -> None:
        long = uniform_row(seed, 7, 5, 10)
        short = uniform_row(seed, 7, 8, 7)
        np.testing.assert_array_equal(long[3:], short)

    def test_negative_positions(self, seed) -> None:
        both = uniform_row(seed, 0, -3, 6)
        np.testing.assert_array_equal(both[3:], uniform_row(seed, 0, 0, 3))

    def test_range(self, seed) -> None:
        u = uniform_row(seed, 1, 0, 10_000)
        assert u.min() >= 0.0
        assert u.max() < 1.0

    def test_streams_differ(self, seed) -> None:
        bulk = uniform_row(seed, 3, 0, 16)
        clocks = uniform_row(seed.with_stream(Stream.CLOCKS), 3, 0, 16)
        assert not np.array_equal(bulk, clocks)

    def test_empty(self, seed) -> None:
        assert len(uniform_row(seed, 0, 0, 0)) == 0


class TestExponentials:
    """Tests for the inverse-CDF exponential draws."""

    def test_zero_uniform_gives_zero(self) -> None:
        value = exponential_from_uniform(0.0, 1.0)
        assert value == 0.0
        assert not np.signbit(value)

    def test_rate_two_at_known_quantile(self) -> None:
        assert exponential_from_uniform(1.0 - np.exp(-2.0), 2.0) == pytest.approx(1.0)

    def test_nonpositive_rate_raises(self, seed) -> None:
        with pytest.raises(InvalidParameterError, match="rate"):
            sample_exponential(0.0, seed, 0)
        with pytest.raises(InvalidParameterError):
            exponential_sequence(seed, 0, 3, rate=-1.0)

    def test_sequence_matches_single_draws(self, seed) -> None:
        seq = exponential_sequence(seed, 10, 4, rate=3.0)
        singles = [sample_exponential(3.0, seed, c) for c in range(10, 14)]
        np.testing.assert_array_equal(seq, singles)

    @pytest.mark.slow
    def test_mean_at_rate_one(self, seed) -> None:
        draws = exponential_sequence(seed, 0, 1_000_000)
        assert draws.mean() == pytest.approx(1.0, abs=0.01)


class TestWeightField:
    """Tests for WeightField."""

    def test_deterministic(self, seed) -> None:
        assert weight_at(WeightField(seed), 4, 9) == weight_at(WeightField(seed), 4, 9)

    def test_cell_diagonal_block_agree(self, seed) -> None:
        field = WeightField(seed)
        rect = Window(-2, 3, 1, 5)
        block = weight_block(field, rect)
        diag = weight_diagonal(field, 4, -1, 3)
        for k, i in enumerate(range(-1, 4)):
            assert block[i - rect.i_min, 4 - i - rect.j_min] == diag[k]
            assert field.at(i, 4 - i) == diag[k]

    def test_rate_fn_scales_weights(self, seed) -> None:
        plain = WeightField(seed)
        fast = WeightField(seed, rate_fn=lambda j: np.full(len(j), 2.0))
        np.testing.assert_array_equal(fast.diagonal(10, 0, 10), plain.diagonal(10, 0, 10) / 2.0)

    def test_nonpositive_rate_fn_raises(self, seed) -> None:
        field = WeightField(seed, rate_fn=lambda j: np.zeros(len(j)))
        with pytest.raises(InvalidParameterError):
            field.diagonal(3, 0, 3)

    def test_window_bounds(self, seed) -> None:
        field = WeightField(seed, window=Window(0, 5, 0, 5))
        assert field.at(5, 5) > 0.0
        with pytest.raises(BoundsError):
            weight_at(field, 6, 0)

    def test_marginal_law(self, seed) -> None:
        sample = WeightField(seed).diagonal(1000, 0, 100_000)
        assert stats.kstest(sample, "expon").statistic <= 0.01

    def test_stream_separation(self, seed) -> None:
        bulk = WeightField(seed).diagonal(50, 0, 100_000)
        other = WeightField(seed.with_stream(Stream.BOUNDARY_P)).diagonal(50, 0, 100_000)
        assert abs(np.corrcoef(bulk, other)[0, 1]) <= 0.01

    def test_lag_one_correlation(self, seed) -> None:
        row = WeightField(seed).diagonal(0, 0, 100_000)
        assert abs(np.corrcoef(row[:-1], row[1:])[0, 1]) <= 0.01


class TestReplicaSeeds:
    """Tests for derive_replica_seed."""

    def test_deterministic_and_distinct(self) -> None:
        seeds = [derive_replica_seed(7, r) for r in range(100)]
        assert seeds == [derive_replica_seed(7, r) for r in range(100)]
        assert len(set(seeds)) == 100
        assert all(0 <= s < 2**64 for s in seeds)

    def test_master_seed_matters(self) -> None:
        assert derive_replica_seed(1, 0) != derive_replica_seed(2, 0)


class TestForcedField:
    """Tests for ForcedField."""

    def test_prescribed_and_default(self) -> None:
        field = ForcedField({(1, 0): 3.0, (0, 1): 2.0}, default=0.5)
        assert field.at(1, 0) == 3.0
        assert field.at(7, 7) == 0.5
        np.testing.assert_array_equal(field.diagonal(1, 0, 1), [2.0, 3.0])

    def test_block(self) -> None:
        field = ForcedField({(1, 1): 5.0})
        block = field.block(Window(0, 1, 0, 1))
        np.testing.assert_array_equal(block, [[0.0, 0.0], [0.0, 5.0]])
