#include "borderline/evalharness.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "borderline/solver.hpp"

namespace borderline {

double RunMetrics::mean_delay() const noexcept {
    if (delays.empty()) return std::numeric_limits<double>::quiet_NaN();
    double sum = 0.0;
    for (const double d : delays) sum += d;
    return sum / static_cast<double>(delays.size());
}

RunMetrics run_experiment(const WorkloadSpec& spec, const DetectorConfig& config,
                          const HarnessOptions& options) {
    const Workload workload = generate(spec);

    RunMetrics metrics;
    metrics.true_changes = workload.true_changes.size();

    Detector detector(config);
    double ratio_sum = 0.0;
    double min_ratio = 1.0;
    double frac_n_sum = 0.0;
    double frac_k_sum = 0.0;

    detector.set_query_probe([&](const QueryView& view) {
        ++metrics.queries;
        std::size_t tested =
            view.increase_result.tested + view.decrease_result.tested;
        if (options.ratios) {
            // Rescore the identical window with the un-hybridized solvers so
            // the ratio reflects the approximation alone.
            const ChangeResult inc = find_change(view.increase, config.eps);
            const ChangeResult dec = find_change(view.decrease, config.eps);
            const ChangeResult inc_exact = exact_change_block(view.increase);
            const ChangeResult dec_exact = exact_change_block(view.decrease);
            tested = inc.tested + dec.tested;
            const double approx = std::max(inc.score, dec.score);
            const double exact = std::max(inc_exact.score, dec_exact.score);
            if (exact > 0.0) {
                const double ratio = approx / exact;
                min_ratio = std::min(min_ratio, ratio);
                ratio_sum += ratio;
                ++metrics.ratio_queries;
            }
        }
        const std::size_t k = view.increase.size() + view.decrease.size();
        frac_n_sum +=
            static_cast<double>(tested) / static_cast<double>(view.window_len);
        if (k > 0) {
            frac_k_sum += static_cast<double>(tested) / static_cast<double>(k);
        }
    });

    const auto start = std::chrono::steady_clock::now();
    for (const std::uint8_t bit : workload.bits) {
        if (auto event = detector.observe(bit != 0)) {
            metrics.events.push_back(*event);
        }
    }
    metrics.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    std::size_t next_event = 0;
    for (const std::uint64_t change : workload.true_changes) {
        while (next_event < metrics.events.size() &&
               metrics.events[next_event].detected_at < change) {
            ++next_event;
        }
        if (next_event == metrics.events.size()) break;
        metrics.delays.push_back(static_cast<double>(
            metrics.events[next_event].detected_at - change));
        ++metrics.matched;
        ++next_event;
    }
    metrics.false_positives = metrics.events.size() - metrics.matched;

    if (metrics.queries > 0) {
        metrics.cand_frac_n = frac_n_sum / static_cast<double>(metrics.queries);
        metrics.cand_frac_k = frac_k_sum / static_cast<double>(metrics.queries);
    }
    if (metrics.ratio_queries > 0) {
        metrics.min_ratio = min_ratio;
        metrics.avg_ratio = ratio_sum / static_cast<double>(metrics.ratio_queries);
    }
    return metrics;
}

QueryCost measure_query_cost(const BlockSequence& seq, double eps,
                             std::size_t repetitions) {
    if (repetitions == 0) repetitions = 1;
    QueryCost cost;
    cost.blocks = seq.size();
    std::size_t tested_total = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t r = 0; r < repetitions; ++r) {
        tested_total += find_change(seq, eps).tested;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    cost.seconds = elapsed / static_cast<double>(repetitions);
    cost.tested = static_cast<double>(tested_total) / static_cast<double>(repetitions);
    return cost;
}

}  // namespace borderline
