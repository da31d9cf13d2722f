#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "borderline/detector.hpp"
#include "borderline/synthgen.hpp"

namespace borderline {

struct HarnessOptions {
    /// Score every query with the pure approximate and exact solvers too
    /// and record their ratio; costs extra solves per query.
    bool ratios = true;
};

/// Aggregated outcome of one detector run over one generated stream.
///
/// Matching rule: true changes are walked in order and each claims the
/// first remaining detection at or after its position; the delay is their
/// distance in entries. Detections claimed by no change are false
/// positives. Ratio queries with exact score 0 are vacuous and excluded;
/// when every query is vacuous the ratios stay at their no-loss value 1.
struct RunMetrics {
    std::vector<ChangeEvent> events;
    std::vector<double> delays;
    std::size_t true_changes = 0;
    std::size_t matched = 0;
    std::size_t false_positives = 0;
    std::size_t queries = 0;
    std::size_t ratio_queries = 0;
    double min_ratio = 1.0;
    double avg_ratio = 1.0;
    /// Mean per-query split evaluations over both polarities, divided by
    /// the window entry count n...
    double cand_frac_n = 0.0;
    /// ...and by the combined border count k_inc + k_dec (never above 1).
    double cand_frac_k = 0.0;
    /// Seconds spent streaming, instrumentation included.
    double wall_time = 0.0;

    double mean_delay() const noexcept;  // NaN when nothing matched
};

/// Generate the stream, run a detector over it, and collect metrics.
RunMetrics run_experiment(const WorkloadSpec& spec, const DetectorConfig& config,
                          const HarnessOptions& options = {});

/// Mean cost of one approximate query against a fixed window state.
struct QueryCost {
    double seconds = 0.0;   // mean wall time per query
    double tested = 0.0;    // mean split evaluations per query
    std::size_t blocks = 0; // border count of the measured window
};

/// Repeat find_change(seq, eps) and average its cost. repetitions is
/// clamped up to 1.
QueryCost measure_query_cost(const BlockSequence& seq, double eps,
                             std::size_t repetitions);

}  // namespace borderline
