#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "borderline/blockseq.hpp"
#include "borderline/evalharness.hpp"
#include "borderline/solver.hpp"
#include "borderline/synthgen.hpp"

using namespace borderline;

TEST_CASE("exact runs lose nothing") {
    const RunMetrics m =
        run_experiment({WorkloadKind::ind, 20000, 1, 10000}, {6.0, 0.0, 1});
    CHECK(m.queries == 20000);
    CHECK(m.ratio_queries > 0);
    CHECK(m.ratio_queries <= m.queries);
    CHECK(m.avg_ratio == 1.0);
    CHECK(m.min_ratio == 1.0);
    CHECK(m.true_changes == 0);
    CHECK(m.matched == 0);
    CHECK(std::isnan(m.mean_delay()));
    CHECK(m.wall_time > 0.0);
}

TEST_CASE("step changes are found with small delay") {
    const RunMetrics m =
        run_experiment({WorkloadKind::step, 200000, 1, 10000}, {6.0, 0.0, 1});
    CHECK(m.true_changes == 19);
    CHECK(m.events.size() >= 17);
    CHECK(m.events.size() <= 21);
    CHECK(m.matched >= 17);
    CHECK(m.false_positives <= 2);
    CHECK(m.delays.size() == m.matched);
    REQUIRE(!m.delays.empty());
    CHECK(m.mean_delay() > 0.0);
    CHECK(m.mean_delay() < 500.0);
}

TEST_CASE("approximate scores respect the floor") {
    for (const double eps : {0.5, 0.9}) {
        const RunMetrics m =
            run_experiment({WorkloadKind::step, 100000, 1, 10000}, {6.0, eps, 1});
        CHECK(m.min_ratio >= (1.0 - eps) - 1e-9);
        CHECK(m.min_ratio <= 1.0 + 1e-12);
        CHECK(m.avg_ratio >= m.min_ratio);
        CHECK(m.avg_ratio <= 1.0 + 1e-12);
        CHECK(m.cand_frac_k <= 1.0 + 1e-12);
        CHECK(m.cand_frac_n > 0.0);
    }
    // Aggressive approximation still keeps the average ratio high.
    const RunMetrics rough =
        run_experiment({WorkloadKind::step, 200000, 1, 10000}, {6.0, 0.9, 1});
    CHECK(rough.avg_ratio >= 0.95);
}

TEST_CASE("tested fraction shrinks as eps grows") {
    // A threshold no score reaches keeps every run's windows identical, so
    // the query points match across the eps grid. Per polarity the ladder
    // evaluates its candidates above the anchor plus at most one probe per
    // ladder gap, which never exceeds the k-1 splits of the exact scan.
    const WorkloadSpec spec{WorkloadKind::hill, 50000, 3, 10000};
    double prev = 2.0;
    double first = 0.0;
    for (const double eps : {0.0, 0.1, 0.5, 0.9}) {
        const RunMetrics m = run_experiment(spec, {1e9, eps, 100});
        CHECK(m.queries == 500);
        CHECK(m.events.empty());
        CHECK(m.cand_frac_k <= prev + 1e-12);
        CHECK(m.cand_frac_k <= 1.0 + 1e-12);
        prev = m.cand_frac_k;
        if (eps == 0.0) first = m.cand_frac_k;
    }
    // The roughest setting probes well under the exact scan's k-1 splits.
    CHECK(prev < 0.75 * first);
}

TEST_CASE("vacuous queries leave ratios at one") {
    const RunMetrics m = run_experiment({WorkloadKind::ind, 1, 5, 1}, {6.0, 0.5, 1});
    CHECK(m.queries == 1);
    CHECK(m.ratio_queries == 0);  // a one-entry window has nothing to split
    CHECK(m.min_ratio == 1.0);
    CHECK(m.avg_ratio == 1.0);
}

TEST_CASE("ratio instrumentation can be disabled") {
    const RunMetrics m = run_experiment({WorkloadKind::step, 50000, 1, 10000},
                                        {6.0, 0.5, 10}, HarnessOptions{false});
    CHECK(m.queries == 5000);
    CHECK(m.ratio_queries == 0);
    CHECK(m.min_ratio == 1.0);
    CHECK(m.avg_ratio == 1.0);
    CHECK(m.cand_frac_n > 0.0);
    CHECK(m.cand_frac_k > 0.0);
}

TEST_CASE("experiments are reproducible") {
    const WorkloadSpec spec{WorkloadKind::step, 50000, 9, 10000};
    const DetectorConfig config{6.0, 0.5, 10};
    const RunMetrics a = run_experiment(spec, config);
    const RunMetrics b = run_experiment(spec, config);
    CHECK(a.events == b.events);
    CHECK(a.min_ratio == b.min_ratio);
    CHECK(a.avg_ratio == b.avg_ratio);
    CHECK(a.cand_frac_n == b.cand_frac_n);
    CHECK(a.cand_frac_k == b.cand_frac_k);
}

TEST_CASE("query cost measurement") {
    const Workload w = generate({WorkloadKind::hill, 20000, 2, 10000});
    BlockSequence seq;
    for (const std::uint8_t bit : w.bits) seq.push(bit != 0);
    REQUIRE(seq.size() >= 3);

    const QueryCost exact = measure_query_cost(seq, 0.0, 5);
    CHECK(exact.blocks == seq.size());
    CHECK(exact.tested == static_cast<double>(seq.size() - 1));
    CHECK(exact.seconds > 0.0);

    const QueryCost rough = measure_query_cost(seq, 0.9, 5);
    CHECK(rough.tested < exact.tested);
    CHECK(rough.tested > 0.0);

    // Zero repetitions are clamped up rather than dividing by zero.
    const QueryCost one = measure_query_cost(seq, 0.0, 0);
    CHECK(one.tested == exact.tested);
}
