#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "borderline/blockseq.hpp"
#include "borderline/likelihood.hpp"

namespace borderline {

/// Block indices emitted by the candidate ladders: sorted, distinct,
/// always containing the ladder's anchor index.
using CandidateSet = std::vector<std::size_t>;

/// Best split found over a window.
///
/// block_index is the first block of the right segment in block
/// coordinates (0 when the producer works in raw coordinates or found no
/// split); raw_index is the matching 1-based raw-stream position (0 when no
/// split exists); tested counts the split-score evaluations performed.
struct ChangeResult {
    std::size_t block_index = 0;
    std::uint64_t raw_index = 0;
    Score score = 0.0;
    std::size_t tested = 0;

    bool has_split() const noexcept { return raw_index != 0; }
};

/// Best split position for FIXED segment parameters p1 < p2.
///
/// The per-block advantage d_j of parameter p1 over p2 is positive exactly
/// on a prefix of the blocks, so the best split (left fitted by p1, right
/// by p2) sits at the first block where the advantage is gone; binary
/// search finds it in O(log k). Returns an index in [1, size()+1], where 1
/// means "all blocks right", size()+1 means "all blocks left".
/// Throws std::invalid_argument unless 0 <= p1 < p2 <= 1.
std::size_t find_segment(const BlockSequence& seq, double p1, double p2);

/// Candidate ladder over suffix frequencies freq(j, k).
///
/// Starts at index 1 and repeatedly jumps to the smallest index whose
/// suffix frequency clears the previous rung by the factor 1/(1-eps) in log
/// space, so consecutive candidates bracket every suffix frequency within
/// the approximation budget. eps = 0 yields every index.
/// Throws std::invalid_argument unless eps lies in [0, 1).
CandidateSet find_cands(const BlockSequence& seq, double eps);

/// Mirror ladder over prefix complements 1 - freq(1, j-1), walking from
/// index size() down to 1. eps = 0 yields every index.
/// Throws std::invalid_argument unless eps lies in [0, 1).
CandidateSet find_cands_prime(const BlockSequence& seq, double eps);

/// Best increasing split over the window's blocks, exact linear scan:
/// split_score(counts(1, i-1), counts(i, k)) over i = 2..k, smallest index
/// on ties. A window with fewer than two blocks has no split (score 0).
ChangeResult exact_change_block(const BlockSequence& seq);

/// Best increasing split with multiplicative guarantee 1 - eps.
///
/// Evaluates the union of both candidate ladders, and for every gap between
/// consecutive candidates runs the fixed-parameter locator with the gap's
/// bracketing frequencies (skipped when they are not increasing, where the
/// bracket is vacuous). eps = 0 delegates to the exact scan.
/// Throws std::invalid_argument unless eps lies in [0, 1).
ChangeResult find_change(const BlockSequence& seq, double eps);

/// Reference scan over the raw stream: best split i = 2..n among those
/// whose left one-frequency does not exceed the right one-frequency,
/// smallest index on ties. Fills raw_index only (block_index stays 0).
ChangeResult naive_change_raw(std::span<const std::uint8_t> bits);

}  // namespace borderline
