"""Exclusion dynamics with a second-class particle and its couplings to last-passage percolation."""

from tasep.clocked import ClockedRun, CouplingCheck, simulate_clocked, verify_lpp_coupling
from tasep.coupling import (
    PairTrajectory,
    PoissonDomination,
    interface_matches_trajectory,
    poisson_domination_report,
    second_class_trajectory,
)
from tasep.dynamics import (
    TasepState,
    check_invariants,
    init_shock_state,
    minimal_halfwidth,
    run_discrepancy,
    run_until,
    shock_sample,
    state_from_sites,
)

__all__ = [
    # Direct dynamics
    "TasepState",
    "check_invariants",
    "init_shock_state",
    "minimal_halfwidth",
    "run_discrepancy",
    "run_until",
    "shock_sample",
    "state_from_sites",
    # Clocked dynamics
    "ClockedRun",
    "CouplingCheck",
    "simulate_clocked",
    "verify_lpp_coupling",
    # Second-class pair
    "PairTrajectory",
    "PoissonDomination",
    "interface_matches_trajectory",
    "poisson_domination_report",
    "second_class_trajectory",
]
