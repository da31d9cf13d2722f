#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "borderline/likelihood.hpp"

namespace borderline {

/// Counts of one maximal run between consecutive border indices.
struct Block {
    std::uint64_t ones = 0;
    std::uint64_t zeros = 0;

    constexpr std::uint64_t total() const noexcept { return ones + zeros; }
    friend constexpr bool operator==(const Block&, const Block&) noexcept = default;
};

/// Exact one-frequency of a block range, kept as the unreduced ratio
/// ones / (ones + zeros).
struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 0;

    double value() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

/// Monotone block partition of the stream observed since the last reset.
///
/// Blocks are the maximal runs between border indices, so their
/// one-frequencies increase strictly from left to right. Appending a bit
/// pushes a singleton block and then merges the tail while the last block's
/// frequency does not exceed its predecessor's; each merge removes a block
/// for good, which makes maintenance amortized O(1) per push. Frequencies
/// are compared as exact integer cross-products, so the strict-increase
/// invariant never depends on float rounding.
///
/// Block indices are 1-based: a split "at i" puts blocks 1..i-1 left and
/// i..k right. Prefix sums give O(1) range counts.
class BlockSequence {
public:
    BlockSequence();

    /// Append one bit and restore the monotone partition.
    void push(bool bit);

    /// Number of blocks k.
    std::size_t size() const noexcept { return blocks_.size(); }
    bool empty() const noexcept { return blocks_.empty(); }

    /// Number of raw entries pushed since the last reset.
    std::uint64_t raw_len() const noexcept { return raw_len_; }

    /// Block by 1-based index. Throws std::out_of_range.
    const Block& block(std::size_t i) const;

    /// 1-based raw-stream position where block i starts; raw_offset(1) = 1.
    /// Throws std::out_of_range.
    std::uint64_t raw_offset(std::size_t i) const;

    /// Combined counts of blocks i..j. An inverted range (i > j) is the
    /// empty range and yields {0, 0}; otherwise both ends must lie in
    /// [1, size()] or std::out_of_range is thrown.
    CountPair counts(std::size_t i, std::size_t j) const;

    /// Exact one-frequency of blocks i..j. Throws std::domain_error when
    /// the range holds no entries, std::out_of_range as for counts().
    Fraction freq(std::size_t i, std::size_t j) const;

    /// Drop all state and start a fresh window.
    void reset();

    /// Pushes and merges performed since the last reset.
    std::uint64_t push_count() const noexcept { return pushes_; }
    std::uint64_t merge_count() const noexcept { return merges_; }

    /// One block per line: "ones zeros raw_offset".
    void dump(std::ostream& os) const;

private:
    std::vector<Block> blocks_;
    std::vector<std::uint64_t> prefix_ones_;   // prefix_ones_[i] = ones in blocks 1..i
    std::vector<std::uint64_t> prefix_zeros_;  // sentinel 0 at index 0
    std::vector<std::uint64_t> raw_offsets_;   // raw_offsets_[i-1] = start of block i
    std::uint64_t raw_len_ = 0;
    std::uint64_t pushes_ = 0;
    std::uint64_t merges_ = 0;
};

}  // namespace borderline
