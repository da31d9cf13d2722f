#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "borderline/blockseq.hpp"
#include "borderline/solver.hpp"

namespace borderline {

struct DetectorConfig {
    /// Slack added on top of the ln(window) model penalty.
    double tau = 6.0;
    /// Approximation budget for queries; 0 keeps every query exact.
    double eps = 0.0;
    /// Run a query every this many pushes (>= 1).
    std::uint64_t query_period = 1;
};

enum class Direction { increase, decrease };

std::string_view to_string(Direction direction) noexcept;

struct ChangeEvent {
    /// Absolute 1-based stream position whose push crossed the threshold.
    std::uint64_t detected_at = 0;
    /// Absolute 1-based stream position where the new segment starts.
    std::uint64_t split_at = 0;
    Score score = 0.0;
    Direction direction = Direction::increase;
    /// Window size at the moment of detection.
    std::uint64_t window_len = 0;

    friend bool operator==(const ChangeEvent&, const ChangeEvent&) noexcept = default;
};

/// Snapshot handed to the query probe, valid only during the call.
/// The window state is pre-reset: exactly what the query scored.
struct QueryView {
    const BlockSequence& increase;
    const BlockSequence& decrease;
    const ChangeResult& increase_result;
    const ChangeResult& decrease_result;
    Score score;  // better of the two polarities
    std::uint64_t window_len;
};

/// Two-sided streaming change detector.
///
/// Every bit feeds two polarity-mirrored block sequences (the raw bit and
/// its complement), so an upward change in either polarity covers both
/// directions of drift. A query solves the one-sided problem on each
/// sequence; when the better score exceeds tau + ln(window), the detector
/// emits an event and restarts the window from scratch.
class Detector {
public:
    /// Queries on windows with at most this many blocks take the exact
    /// linear scan regardless of eps; the candidate ladders only pay off
    /// once the border count is large.
    static constexpr std::size_t kExactCutoff = 64;

    /// Throws std::invalid_argument for tau < 0, eps outside [0, 1), or
    /// query_period = 0.
    explicit Detector(DetectorConfig config);

    /// Feed one bit. Returns the event when this push crossed the
    /// threshold; at most one event per call.
    std::optional<ChangeEvent> observe(bool bit);

    /// Current detection threshold tau + ln(window_len).
    /// Throws std::domain_error while the window is empty.
    double sigma() const;

    const DetectorConfig& config() const noexcept { return config_; }
    std::uint64_t stream_position() const noexcept { return position_; }
    std::uint64_t window_len() const noexcept { return increase_.raw_len(); }
    const BlockSequence& increase_sequence() const noexcept { return increase_; }
    const BlockSequence& decrease_sequence() const noexcept { return decrease_; }

    /// Install a hook run on every query with the pre-reset window state;
    /// pass an empty function to remove it.
    void set_query_probe(std::function<void(const QueryView&)> probe);

private:
    ChangeResult query(const BlockSequence& seq) const;

    DetectorConfig config_;
    BlockSequence increase_;
    BlockSequence decrease_;
    std::uint64_t position_ = 0;      // absolute bits observed
    std::uint64_t window_start_ = 0;  // absolute position just before the window
    std::uint64_t since_query_ = 0;
    std::function<void(const QueryView&)> probe_;
};

}  // namespace borderline
