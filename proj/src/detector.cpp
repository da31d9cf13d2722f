#include "borderline/detector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace borderline {

std::string_view to_string(Direction direction) noexcept {
    return direction == Direction::increase ? "increase" : "decrease";
}

Detector::Detector(DetectorConfig config) : config_(config) {
    if (!(config_.tau >= 0.0)) {
        throw std::invalid_argument("Detector: tau must be >= 0");
    }
    if (!(config_.eps >= 0.0 && config_.eps < 1.0)) {
        throw std::invalid_argument("Detector: eps must lie in [0, 1)");
    }
    if (config_.query_period == 0) {
        throw std::invalid_argument("Detector: query_period must be >= 1");
    }
}

ChangeResult Detector::query(const BlockSequence& seq) const {
    if (seq.size() <= kExactCutoff) return exact_change_block(seq);
    return find_change(seq, config_.eps);
}

std::optional<ChangeEvent> Detector::observe(bool bit) {
    increase_.push(bit);
    decrease_.push(!bit);
    ++position_;
    if (++since_query_ < config_.query_period) return std::nullopt;
    since_query_ = 0;

    const ChangeResult inc = query(increase_);
    const ChangeResult dec = query(decrease_);
    const Score score = std::max(inc.score, dec.score);
    const std::uint64_t n = increase_.raw_len();
    if (probe_) probe_(QueryView{increase_, decrease_, inc, dec, score, n});

    const double threshold = config_.tau + std::log(static_cast<double>(n));
    if (!(score > threshold)) return std::nullopt;

    // Ties go to the increase polarity. Both sequences index the same raw
    // stream, so the winner's raw position maps straight to the stream.
    const bool increase_wins = inc.score >= dec.score;
    const ChangeResult& winner = increase_wins ? inc : dec;
    const ChangeEvent event{
        position_,
        window_start_ + winner.raw_index,
        winner.score,
        increase_wins ? Direction::increase : Direction::decrease,
        n,
    };
    increase_.reset();
    decrease_.reset();
    window_start_ = position_;
    return event;
}

double Detector::sigma() const {
    const std::uint64_t n = increase_.raw_len();
    if (n == 0) {
        throw std::domain_error("Detector::sigma: window is empty");
    }
    return config_.tau + std::log(static_cast<double>(n));
}

void Detector::set_query_probe(std::function<void(const QueryView&)> probe) {
    probe_ = std::move(probe);
}

}  // namespace borderline
