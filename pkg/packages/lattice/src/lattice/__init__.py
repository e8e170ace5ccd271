"""Exponential weight fields, exact last-passage solvers, the competition interface and stationary models."""

from lattice.competition import (
    ExtendedSetup,
    cluster_consistency_check,
    cluster_of,
    competition_interface,
    extended_setup,
    interface_shock_sample,
    second_class_from_interface,
)
from lattice.engine import (
    LppTable,
    backtrack_path,
    lpp_line_to_point,
    lpp_line_to_points,
    lpp_point_to_point,
    lpp_table,
    point_to_point_tail_profile,
    superadditivity_check,
)
from lattice.lines import inclined_line, lambda_line, rho_line, tasep_line
from lattice.stationary import (
    BoundaryWeightSeq,
    boundary_weights,
    coupling_inequality_check,
    exit_tail_profile,
    good_event_probability,
    sandwich_check,
    stationary_lpp,
    stationary_lpp_auto,
    stationary_rescaled_increments,
)
from lattice.weights import ForcedField, WeightField, derive_replica_seed, sample_exponential, weight_at

__all__ = [
    # Weights
    "ForcedField",
    "WeightField",
    "derive_replica_seed",
    "sample_exponential",
    "weight_at",
    # Lines and solvers
    "LppTable",
    "backtrack_path",
    "inclined_line",
    "lambda_line",
    "lpp_line_to_point",
    "lpp_line_to_points",
    "lpp_point_to_point",
    "lpp_table",
    "point_to_point_tail_profile",
    "rho_line",
    "superadditivity_check",
    "tasep_line",
    # Competition interface
    "ExtendedSetup",
    "cluster_consistency_check",
    "cluster_of",
    "competition_interface",
    "extended_setup",
    "interface_shock_sample",
    "second_class_from_interface",
    # Stationary models
    "BoundaryWeightSeq",
    "boundary_weights",
    "coupling_inequality_check",
    "exit_tail_profile",
    "good_event_probability",
    "sandwich_check",
    "stationary_lpp",
    "stationary_lpp_auto",
    "stationary_rescaled_increments",
]
