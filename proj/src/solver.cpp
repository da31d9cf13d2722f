#include "borderline/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace borderline {

namespace {

// Smallest index in [lo, hi) satisfying pred, or hi when none.
// pred must be false on a prefix of the range and true on the rest.
template <typename Pred>
std::size_t binary_find_first(std::size_t lo, std::size_t hi, Pred pred) {
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

void check_eps(double eps, const char* where) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument(std::string(where) + ": eps must lie in [0, 1)");
    }
}

CandidateSet all_indices(std::size_t k) {
    CandidateSet all(k);
    std::iota(all.begin(), all.end(), std::size_t{1});
    return all;
}

// ln freq(j, k): the suffix one-frequency, as an exact ratio first.
double log_suffix_freq(const BlockSequence& seq, std::size_t j) {
    const Fraction f = seq.freq(j, seq.size());
    return std::log(f.value());
}

// ln(1 - freq(1, j-1)), with the empty prefix (j = 1) contributing ln 1 = 0.
// The complement is the exact ratio zeros/total, not 1 minus a rounded value.
double log_prefix_comp(const BlockSequence& seq, std::size_t j) {
    if (j <= 1) return 0.0;
    const CountPair c = seq.counts(1, j - 1);
    return std::log(static_cast<double>(c.zeros) / static_cast<double>(c.total()));
}

}  // namespace

std::size_t find_segment(const BlockSequence& seq, double p1, double p2) {
    if (!(p1 >= 0.0 && p1 < p2 && p2 <= 1.0)) {
        throw std::invalid_argument("find_segment: need 0 <= p1 < p2 <= 1");
    }
    const std::size_t k = seq.size();
    // Advantage of p1 over p2 on block j: d_j = ones*X + zeros*Y with
    // X = ln(p1/p2) < 0 < Y = ln((1-p1)/(1-p2)). An infinite term decides
    // the sign before the finite one could cancel it, so d_j never NaNs.
    // Advantages within a relative tie band of zero count as gone: an exact
    // tie evaluates to float noise either side of zero, and collapsing it
    // downward keeps the smallest-index convention. The normalized
    // advantage d / (|ones*X| + |zeros*Y|) is strictly decreasing in the
    // block frequency, so the tolerant predicate stays monotone.
    const double x = std::log(p1) - std::log(p2);
    const double y = std::log1p(-p1) - std::log1p(-p2);
    const auto advantage_gone = [&](std::size_t j) {
        const Block& b = seq.block(j);
        double d = 0.0;
        double magnitude = 0.0;
        if (b.ones > 0) {
            if (std::isinf(x)) return true;  // d = -infinity
            const double term = static_cast<double>(b.ones) * x;
            d += term;
            magnitude -= term;
        }
        if (b.zeros > 0) {
            if (std::isinf(y)) return false;  // d = +infinity
            const double term = static_cast<double>(b.zeros) * y;
            d += term;
            magnitude += term;
        }
        return d <= 1e-12 * magnitude;
    };
    // d_j > 0 exactly on a prefix: block frequencies increase, d is
    // decreasing in the block frequency.
    return binary_find_first(1, k + 1, advantage_gone);
}

CandidateSet find_cands(const BlockSequence& seq, double eps) {
    check_eps(eps, "find_cands");
    const std::size_t k = seq.size();
    if (k == 0) return {};
    if (k == 1) return {1};
    if (eps == 0.0) return all_indices(k);

    // k >= 2 means block 2 has a higher frequency than block 1 >= 0, so the
    // whole window holds at least one 1 and every suffix log is finite.
    const double log_q = log_suffix_freq(seq, 1);
    const double slack = 1.0 - eps;
    CandidateSet cands{1};
    std::size_t i = 1;
    while (i < k) {
        const double rho = (log_suffix_freq(seq, i) - log_q) / slack;
        std::size_t next = binary_find_first(i + 1, k + 1, [&](std::size_t j) {
            return log_suffix_freq(seq, j) - log_q > rho;
        });
        if (next > k) next = k;  // nothing clears the rung: close with the top
        cands.push_back(next);
        i = next;
    }
    return cands;
}

CandidateSet find_cands_prime(const BlockSequence& seq, double eps) {
    check_eps(eps, "find_cands_prime");
    const std::size_t k = seq.size();
    if (k == 0) return {};
    if (k == 1) return {1};
    if (eps == 0.0) return all_indices(k);

    // Block 1 sits below block 2's frequency, so freq(1, k) < 1 and the
    // complement logs are finite. ln(1 - freq(1, j-1)) decreases in j.
    const CountPair whole = seq.counts(1, k);
    const double log_comp_q =
        std::log(static_cast<double>(whole.zeros) / static_cast<double>(whole.total()));
    const double slack = 1.0 - eps;
    CandidateSet cands{k};
    std::size_t i = k;
    while (i > 1) {
        const double rho = (log_prefix_comp(seq, i) - log_comp_q) / slack;
        // Largest j < i still above the rung. The quantity decreases in j,
        // so the first failure bounds it from the right.
        const std::size_t first_below =
            binary_find_first(1, i, [&](std::size_t j) {
                return !(log_prefix_comp(seq, j) - log_comp_q > rho);
            });
        const std::size_t next = first_below <= 1 ? 1 : first_below - 1;
        cands.push_back(next);
        i = next;
    }
    std::sort(cands.begin(), cands.end());
    return cands;
}

ChangeResult exact_change_block(const BlockSequence& seq) {
    const std::size_t k = seq.size();
    ChangeResult best;
    if (k < 2) return best;
    const CountPair whole = seq.counts(1, k);
    const Score ml_whole = ml_log_likelihood(whole);
    CountPair left;
    for (std::size_t i = 2; i <= k; ++i) {
        const Block& b = seq.block(i - 1);
        left.ones += b.ones;
        left.zeros += b.zeros;
        const CountPair right{whole.ones - left.ones, whole.zeros - left.zeros};
        const Score s =
            ml_log_likelihood(left) + ml_log_likelihood(right) - ml_whole;
        ++best.tested;
        if (s > best.score) {
            best.block_index = i;
            best.raw_index = seq.raw_offset(i);
            best.score = s;
        }
    }
    return best;
}

ChangeResult find_change(const BlockSequence& seq, double eps) {
    check_eps(eps, "find_change");
    const std::size_t k = seq.size();
    if (k < 2) return {};
    if (eps == 0.0) return exact_change_block(seq);

    const CandidateSet from_suffix = find_cands(seq, eps);
    const CandidateSet from_prefix = find_cands_prime(seq, eps);
    CandidateSet cands;
    cands.reserve(from_suffix.size() + from_prefix.size());
    std::merge(from_prefix.begin(), from_prefix.end(), from_suffix.begin(),
               from_suffix.end(), std::back_inserter(cands));
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const CountPair whole = seq.counts(1, k);
    const Score ml_whole = ml_log_likelihood(whole);
    ChangeResult best;
    const auto consider = [&](std::size_t i) {
        if (i < 2 || i > k) return;  // an empty side scores 0, never better
        ++best.tested;
        const CountPair left = seq.counts(1, i - 1);
        const CountPair right{whole.ones - left.ones, whole.zeros - left.zeros};
        const Score s =
            ml_log_likelihood(left) + ml_log_likelihood(right) - ml_whole;
        if (s > best.score ||
            (s == best.score && best.has_split() && i < best.block_index)) {
            best.block_index = i;
            best.raw_index = seq.raw_offset(i);
            best.score = s;
        }
    };

    for (std::size_t idx = 0; idx < cands.size(); ++idx) {
        consider(cands[idx]);
        if (idx == 0 || cands[idx - 1] + 1 >= cands[idx]) continue;
        // Unvisited indices hide between these two candidates; bracket them
        // with the gap's extreme frequencies and place the split they favor.
        const double p1 = seq.freq(1, cands[idx] - 1).value();
        const double p2 = seq.freq(cands[idx - 1], k).value();
        if (p1 >= p2) continue;
        const std::size_t located =
            std::clamp<std::size_t>(find_segment(seq, p1, p2), 2, k);
        consider(located);
    }
    return best;
}

ChangeResult naive_change_raw(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    ChangeResult best;
    if (n < 2) return best;
    CountPair whole;
    for (const std::uint8_t bit : bits) {
        if (bit) {
            ++whole.ones;
        } else {
            ++whole.zeros;
        }
    }
    const Score ml_whole = ml_log_likelihood(whole);
    CountPair left;
    for (std::size_t i = 2; i <= n; ++i) {
        if (bits[i - 2]) {
            ++left.ones;
        } else {
            ++left.zeros;
        }
        const CountPair right{whole.ones - left.ones, whole.zeros - left.zeros};
        // Increasing splits only: left frequency at most right frequency,
        // compared exactly.
        if (static_cast<unsigned __int128>(left.ones) * right.total() >
            static_cast<unsigned __int128>(right.ones) * left.total()) {
            continue;
        }
        const Score s =
            ml_log_likelihood(left) + ml_log_likelihood(right) - ml_whole;
        ++best.tested;
        if (s > best.score) {
            best.raw_index = i;
            best.score = s;
        }
    }
    return best;
}

}  // namespace borderline
