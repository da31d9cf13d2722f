"""Streaming change detection over binary sequences.

Thin Python surface over the C++ core: block-sequence maintenance, the
exact and approximate change solvers, the two-sided detector, workload
generation, and the experiment harness.
"""

from ._core import (
    Block,
    BlockSequence,
    ChangeEvent,
    ChangeResult,
    CountPair,
    Detector,
    DetectorConfig,
    Direction,
    Fraction,
    HarnessOptions,
    RunMetrics,
    Workload,
    WorkloadKind,
    WorkloadSpec,
    exact_change_block,
    find_cands,
    find_cands_prime,
    find_change,
    find_segment,
    generate,
    log_likelihood,
    ml_log_likelihood,
    naive_change_raw,
    probability_at,
    run_experiment,
    sequence_from_bits,
    split_score,
    split_score_fixed,
)

__all__ = [
    "Block",
    "BlockSequence",
    "ChangeEvent",
    "ChangeResult",
    "CountPair",
    "Detector",
    "DetectorConfig",
    "Direction",
    "Fraction",
    "HarnessOptions",
    "RunMetrics",
    "Workload",
    "WorkloadKind",
    "WorkloadSpec",
    "exact_change_block",
    "find_cands",
    "find_cands_prime",
    "find_change",
    "find_segment",
    "generate",
    "log_likelihood",
    "ml_log_likelihood",
    "naive_change_raw",
    "probability_at",
    "run_experiment",
    "sequence_from_bits",
    "split_score",
    "split_score_fixed",
]
