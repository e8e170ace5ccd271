"""Tests for the second-class pair of the extended system."""

import numpy as np
import pytest
from domain.errors import InsufficientHorizonError
from domain.models import SeedSpec
from lattice.competition import competition_interface, extended_setup, second_class_from_interface
from lattice.weights import ForcedField, WeightField, derive_replica_seed
from tasep.coupling import interface_matches_trajectory, second_class_trajectory


class TestSecondClassTrajectory:
    """Tests for second_class_trajectory."""

    def test_unit_weights(self) -> None:
        traj = second_class_trajectory(ForcedField({}, default=1.0), extended_setup(0.5, 0.75, 4), 3.5)
        assert traj.times.tolist() == [0.0, 1.0, 3.0]
        assert traj.positions.tolist() == [0, 1, 0]
        assert traj.position_at(2.0) == 1
        assert traj.steps_at(3.2) == 2

    @pytest.mark.parametrize("replica", range(10))
    def test_matches_interface(self, replica: int) -> None:
        field = WeightField(SeedSpec(derive_replica_seed(21, replica)))
        setup = extended_setup(0.25, 0.75, 60)
        ip = competition_interface(field, setup)
        horizon = 0.9 * ip.last_time
        traj = second_class_trajectory(field, setup, horizon)
        assert interface_matches_trajectory(ip, traj, horizon)
        for t in np.linspace(0.0, horizon, 7):
            assert traj.position_at(float(t)) == second_class_from_interface(ip, float(t))

    def test_horizon_past_interface(self) -> None:
        field = WeightField(SeedSpec(5))
        setup = extended_setup(0.5, 0.75, 10)
        ip = competition_interface(field, setup)
        traj = second_class_trajectory(field, setup, ip.last_time)
        with pytest.raises(InsufficientHorizonError):
            interface_matches_trajectory(ip, traj, ip.last_time)
