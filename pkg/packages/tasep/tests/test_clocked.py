"""Tests for the LPP-clocked TASEP and the pathwise coupling check."""

import numpy as np
import pytest
from domain.errors import InvalidParameterError
from domain.models import SeedSpec, Window
from lattice.weights import ForcedField, WeightField, derive_replica_seed
from tasep.clocked import CouplingCheck, simulate_clocked, verify_lpp_coupling

LABELS = np.arange(30)
POSITIONS = -2 * np.arange(30)


@pytest.fixture
def field() -> WeightField:
    return WeightField(SeedSpec(master_seed=17))


class TestSimulateClocked:
    """Tests for simulate_clocked."""

    def test_single_particle_partial_sums(self, field) -> None:
        run = simulate_clocked(field, np.array([0]), np.array([0]), 1e9, 6)
        waits = [field.at(z, 0) for z in range(1, 7)]
        np.testing.assert_allclose(run.arrivals(0), np.cumsum(waits), rtol=1e-12)
        assert run.position(0, 1e9) == 6

    def test_blocked_until_front_moves(self) -> None:
        # particle 1 sits behind particle 0 and can only go once 0 has left
        field = ForcedField({(1, 0): 5.0, (1, 1): 1.0})
        run = simulate_clocked(field, np.array([0, 1]), np.array([0, -1]), 10.0, 1)
        assert run.arrivals(0).tolist() == [5.0]
        assert run.arrivals(1).tolist() == [6.0]

    def test_exclusion_and_order(self, field) -> None:
        run = simulate_clocked(field, LABELS, POSITIONS, 15.0, 40)
        for t in np.linspace(0.0, 15.0, 31):
            x = [run.position(int(k), float(t)) for k in LABELS]
            assert np.all(np.diff(x) < 0)

    def test_column_limit(self, field) -> None:
        run = simulate_clocked(field, np.array([0]), np.array([0]), 1e9, 3)
        assert len(run.arrivals(0)) == 3

    def test_rejects_bad_order(self, field) -> None:
        with pytest.raises(InvalidParameterError):
            simulate_clocked(field, np.array([0, 1]), np.array([0, 4]), 5.0, 10)


class TestVerifyLppCoupling:
    """Tests for verify_lpp_coupling."""

    def test_empty_grid(self, field) -> None:
        report = verify_lpp_coupling(field, LABELS, POSITIONS, Window(0, 5, 0, 5), [])
        assert report
        assert report.cells_checked == 0

    def test_single_particle_row(self, field) -> None:
        report = verify_lpp_coupling(field, np.array([0]), np.array([0]), Window(0, 8, 0, 0), np.arange(0.5, 10.0, 0.5))
        assert report.holds
        assert report.counterexample is None

    @pytest.mark.parametrize("replica", range(100))
    def test_thirty_particles(self, replica: int) -> None:
        field = WeightField(SeedSpec(derive_replica_seed(23, replica)))
        report = verify_lpp_coupling(field, LABELS, POSITIONS, Window(-10, 29, 0, 29), np.arange(1.0, 21.0))
        assert report.holds, report.counterexample
        assert report.cells_checked == 40 * 30 * 20

    def test_rows_must_be_labels(self, field) -> None:
        with pytest.raises(InvalidParameterError, match="labels"):
            verify_lpp_coupling(field, LABELS, POSITIONS, Window(0, 5, 25, 35), [1.0])

    def test_report_is_falsy_on_failure(self) -> None:
        report = CouplingCheck(holds=False, cells_checked=3, counterexample=((1, 0), 2.0, 1.5, 0))
        assert not report
