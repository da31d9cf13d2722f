#include "borderline/blockseq.hpp"

#include <ostream>
#include <stdexcept>

namespace borderline {

namespace {

// freq(a) <= freq(b) as exact integers: a.ones/a.total <= b.ones/b.total.
inline bool freq_le(const Block& a, const Block& b) noexcept {
    return static_cast<unsigned __int128>(a.ones) * b.total() <=
           static_cast<unsigned __int128>(b.ones) * a.total();
}

}  // namespace

BlockSequence::BlockSequence() {
    prefix_ones_.push_back(0);
    prefix_zeros_.push_back(0);
}

void BlockSequence::push(bool bit) {
    ++raw_len_;
    ++pushes_;
    blocks_.push_back(bit ? Block{1, 0} : Block{0, 1});
    prefix_ones_.push_back(prefix_ones_.back() + (bit ? 1 : 0));
    prefix_zeros_.push_back(prefix_zeros_.back() + (bit ? 0 : 1));
    raw_offsets_.push_back(raw_len_);

    // Pool the tail while the new block does not strictly exceed its
    // predecessor's frequency. The merged block keeps the earlier offset;
    // cumulative counts through it equal the old final prefix entry.
    while (blocks_.size() >= 2 &&
           freq_le(blocks_[blocks_.size() - 1], blocks_[blocks_.size() - 2])) {
        Block& prev = blocks_[blocks_.size() - 2];
        const Block& last = blocks_.back();
        prev.ones += last.ones;
        prev.zeros += last.zeros;
        blocks_.pop_back();
        prefix_ones_[prefix_ones_.size() - 2] = prefix_ones_.back();
        prefix_ones_.pop_back();
        prefix_zeros_[prefix_zeros_.size() - 2] = prefix_zeros_.back();
        prefix_zeros_.pop_back();
        raw_offsets_.pop_back();
        ++merges_;
    }
}

const Block& BlockSequence::block(std::size_t i) const {
    if (i < 1 || i > blocks_.size()) {
        throw std::out_of_range("BlockSequence::block: index out of range");
    }
    return blocks_[i - 1];
}

std::uint64_t BlockSequence::raw_offset(std::size_t i) const {
    if (i < 1 || i > blocks_.size()) {
        throw std::out_of_range("BlockSequence::raw_offset: index out of range");
    }
    return raw_offsets_[i - 1];
}

CountPair BlockSequence::counts(std::size_t i, std::size_t j) const {
    if (i > j) return {};
    if (i < 1 || j > blocks_.size()) {
        throw std::out_of_range("BlockSequence::counts: range out of bounds");
    }
    return {prefix_ones_[j] - prefix_ones_[i - 1],
            prefix_zeros_[j] - prefix_zeros_[i - 1]};
}

Fraction BlockSequence::freq(std::size_t i, std::size_t j) const {
    const CountPair c = counts(i, j);
    if (c.empty()) {
        throw std::domain_error("BlockSequence::freq: frequency of an empty range");
    }
    return {c.ones, c.total()};
}

void BlockSequence::reset() {
    blocks_.clear();
    prefix_ones_.assign(1, 0);
    prefix_zeros_.assign(1, 0);
    raw_offsets_.clear();
    raw_len_ = 0;
    pushes_ = 0;
    merges_ = 0;
}

void BlockSequence::dump(std::ostream& os) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        os << blocks_[i].ones << ' ' << blocks_[i].zeros << ' ' << raw_offsets_[i]
           << '\n';
    }
}

}  // namespace borderline
