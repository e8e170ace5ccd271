"""Harness package: replica orchestration, statistics, experiments and the acceptance suite."""

from harness.acceptance import CriterionResult, run_acceptance
from harness.diagnostics import (
    crossing_diagnostic,
    find_crossing,
    independence_diagnostic,
    maximizer_localization_diagnostic,
    modulus_diagnostic,
    slow_decorrelation_diagnostic,
)
from harness.experiments import ShockExperiment, run_shock_experiment, write_experiment
from harness.replicas import ReplicaRun, run_replicas, simulate_replica
from harness.stats import joint_product_distance, ks_report, ks_statistic, pearson, scaling_exponent_fit

__all__ = [
    # Replicas
    "ReplicaRun",
    "run_replicas",
    "simulate_replica",
    # Statistics
    "joint_product_distance",
    "ks_report",
    "ks_statistic",
    "pearson",
    "scaling_exponent_fit",
    # Experiments
    "ShockExperiment",
    "run_shock_experiment",
    "write_experiment",
    # Diagnostics
    "crossing_diagnostic",
    "find_crossing",
    "independence_diagnostic",
    "maximizer_localization_diagnostic",
    "modulus_diagnostic",
    "slow_decorrelation_diagnostic",
    # Acceptance
    "CriterionResult",
    "run_acceptance",
]
