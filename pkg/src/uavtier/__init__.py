"""Ergodic capacity and tier planning for multi-hop UAV relay channels."""

from .bounds import (
    EULER_GAMMA,
    BoundsReport,
    GapFloor,
    bounds_report,
    digamma_int,
    g_factor,
    gap_floor,
    harmonic,
    high_snr_capacity,
    increment_one_antenna,
    logdet_moment,
    lower_bound,
    rect_vs_square_delta,
    upper_bound,
)
from .channel import (
    CapacityEstimate,
    ChannelSpec,
    SnrValue,
    capacity_sample,
    logdet_gram_sample,
    mc_ergodic_capacity,
    mc_logdet_moment,
    sample_channel,
    substream,
)
from .errors import NumericFailure, SearchBudgetExceeded
from .optimizer import (
    OptimizationResult,
    PowerModel,
    RankedCandidate,
    assemble_spec,
    effective_snr,
    grid_cell,
    objective_lower,
    objective_mc,
    objective_upper,
    optimize,
    order_parts_for_power,
    sweep_grid,
)
from .partitions import (
    MAX_ENUMERATION_BUDGET,
    PartitionCandidate,
    Provenance,
    asymptotic_candidates,
    count_partitions,
    direct_candidate,
    display_index,
    enumerate_partitions,
    hardy_ramanujan_estimate,
    optimal_tier_count,
    reduced_candidates,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "CapacityEstimate",
    "ChannelSpec",
    "EULER_GAMMA",
    "GapFloor",
    "MAX_ENUMERATION_BUDGET",
    "NumericFailure",
    "OptimizationResult",
    "PartitionCandidate",
    "PowerModel",
    "Provenance",
    "RankedCandidate",
    "SearchBudgetExceeded",
    "SnrValue",
    "assemble_spec",
    "asymptotic_candidates",
    "bounds_report",
    "capacity_sample",
    "count_partitions",
    "digamma_int",
    "direct_candidate",
    "display_index",
    "effective_snr",
    "enumerate_partitions",
    "g_factor",
    "gap_floor",
    "grid_cell",
    "hardy_ramanujan_estimate",
    "harmonic",
    "high_snr_capacity",
    "increment_one_antenna",
    "logdet_gram_sample",
    "logdet_moment",
    "lower_bound",
    "mc_ergodic_capacity",
    "mc_logdet_moment",
    "objective_lower",
    "objective_mc",
    "objective_upper",
    "optimal_tier_count",
    "optimize",
    "order_parts_for_power",
    "rect_vs_square_delta",
    "reduced_candidates",
    "sample_channel",
    "substream",
    "sweep_grid",
    "upper_bound",
]
