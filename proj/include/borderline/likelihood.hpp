#pragma once

#include <cstdint>

namespace borderline {

/// Log-likelihood values and likelihood-ratio scores, in nats.
/// May be -infinity when a segment is scored at a parameter its counts
/// exclude; never NaN.
using Score = double;

/// Counts of ones and zeros over a segment of a binary stream.
struct CountPair {
    std::uint64_t ones = 0;
    std::uint64_t zeros = 0;

    constexpr std::uint64_t total() const noexcept { return ones + zeros; }
    constexpr bool empty() const noexcept { return ones == 0 && zeros == 0; }

    /// Counts of the label-flipped segment.
    constexpr CountPair flipped() const noexcept { return {zeros, ones}; }

    constexpr CountPair& operator+=(const CountPair& other) noexcept {
        ones += other.ones;
        zeros += other.zeros;
        return *this;
    }
    friend constexpr CountPair operator+(CountPair lhs, const CountPair& rhs) noexcept {
        lhs += rhs;
        return lhs;
    }
    friend constexpr bool operator==(const CountPair&, const CountPair&) noexcept = default;
};

/// Bernoulli log-likelihood ones*ln(p) + zeros*ln(1-p), with the 0*ln(0) = 0
/// convention. Returns -infinity when the counts rule the parameter out
/// (ones > 0 with p = 0, or zeros > 0 with p = 1).
/// Throws std::invalid_argument unless p lies in [0, 1].
Score log_likelihood(CountPair counts, double p);

/// Log-likelihood of the segment at its maximum-likelihood parameter
/// ones/total. An empty segment scores 0. Always finite.
Score ml_log_likelihood(CountPair counts) noexcept;

/// Log-likelihood ratio of the two-segment model against the pooled
/// one-segment model, every segment at its ML parameter. Non-negative up to
/// rounding; 0 when either side is empty or both sides have equal frequency.
Score split_score(CountPair left, CountPair right) noexcept;

/// Same ratio with the segment parameters fixed at p1 and p2 instead of
/// fitted; never exceeds split_score(left, right).
/// Throws std::invalid_argument unless p1 and p2 lie in [0, 1].
Score split_score_fixed(CountPair left, CountPair right, double p1, double p2);

}  // namespace borderline
