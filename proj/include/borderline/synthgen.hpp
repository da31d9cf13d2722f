#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace borderline {

/// Canned stream families used by tests, experiments, and the CLI.
///
///  - ind:   every entry is Bernoulli(1/2)
///  - step:  probability alternates 1/4, 3/4, 1/4, ... per segment
///  - slope: probability ramps 1/4 -> 3/4 across one segment, back down
///           across the next, repeating
///  - hill:  one linear ramp 1/4 -> 3/4 across the whole stream
enum class WorkloadKind { ind, step, slope, hill };

std::string_view to_string(WorkloadKind kind) noexcept;
bool parse_workload_kind(std::string_view text, WorkloadKind& out) noexcept;

/// Deterministic stream description. Bits come from std::mt19937_64 seeded
/// with `seed`, one draw per entry, mapped to [0, 1) by the 53-bit shift.
/// Every field of the generator is pinned by the C++ standard, so the same
/// spec yields the same stream on every platform.
struct WorkloadSpec {
    WorkloadKind kind = WorkloadKind::ind;
    std::uint64_t length = 200'000;
    std::uint64_t seed = 0;
    /// Entries per segment for step and slope; ignored by ind and hill.
    std::uint64_t segment = 10'000;
};

struct Workload {
    std::vector<std::uint8_t> bits;
    /// 1-based positions where the generating distribution jumps (first
    /// entry of each new regime). Empty for ind, slope, and hill, whose
    /// distribution never jumps.
    std::vector<std::uint64_t> true_changes;
};

/// Probability of a 1 at 1-based position t under the spec.
/// Throws like generate() on an invalid spec or t outside [1, length].
double probability_at(const WorkloadSpec& spec, std::uint64_t t);

/// Materialize the stream and its true change positions.
/// Throws std::invalid_argument when length is 0, segment is 0 for a
/// segmented kind, or a segmented kind's length is not a multiple of the
/// segment.
Workload generate(const WorkloadSpec& spec);

}  // namespace borderline
