"""Interacting particle system on a dynamic random network.

Thin re-export of the compiled extension; see the package README for the
model and the estimation pipeline.
"""

from ._ipsnet import (
    ChainTooLargeError,
    EmpiricalMoments,
    EmptySampleError,
    EstimationResult,
    IoFailureError,
    KsResult,
    Link,
    ModelParams,
    MomentSet,
    ObservationSeries,
    ReducibleChainError,
    ReplicationSummary,
    RunRecord,
    SeriesTooShortError,
    ValidationError,
    default_burn_in,
    empirical_moments,
    estimate,
    estimate_from_moments,
    exact_moments,
    expected_squared_increment,
    export_summary,
    joint_chain_matrix,
    ks_two_sample,
    mean_s,
    read_trajectory,
    run_replications,
    second_moment_s,
    simulate,
    write_trajectory,
)

__all__ = [
    "ChainTooLargeError",
    "EmpiricalMoments",
    "EmptySampleError",
    "EstimationResult",
    "IoFailureError",
    "KsResult",
    "Link",
    "ModelParams",
    "MomentSet",
    "ObservationSeries",
    "ReducibleChainError",
    "ReplicationSummary",
    "RunRecord",
    "SeriesTooShortError",
    "ValidationError",
    "default_burn_in",
    "empirical_moments",
    "estimate",
    "estimate_from_moments",
    "exact_moments",
    "expected_squared_increment",
    "export_summary",
    "joint_chain_matrix",
    "ks_two_sample",
    "mean_s",
    "read_trajectory",
    "run_replications",
    "second_moment_s",
    "simulate",
    "write_trajectory",
]
