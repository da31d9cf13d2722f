#include "borderline/synthgen.hpp"

#include <random>
#include <stdexcept>

namespace borderline {

namespace {

constexpr double kLow = 0.25;
constexpr double kHigh = 0.75;

void validate(const WorkloadSpec& spec) {
    if (spec.length == 0) {
        throw std::invalid_argument("WorkloadSpec: length must be >= 1");
    }
    if (spec.kind == WorkloadKind::step || spec.kind == WorkloadKind::slope) {
        if (spec.segment == 0) {
            throw std::invalid_argument("WorkloadSpec: segment must be >= 1");
        }
        if (spec.length % spec.segment != 0) {
            throw std::invalid_argument(
                "WorkloadSpec: length must be a multiple of segment");
        }
    }
}

// Linear interpolation from -> to over len entries; entry j in [0, len).
// A one-entry ramp sits at its start.
double ramp(double from, double to, std::uint64_t j, std::uint64_t len) {
    if (len <= 1) return from;
    return from + (to - from) * (static_cast<double>(j) / static_cast<double>(len - 1));
}

double probability_at_unchecked(const WorkloadSpec& spec, std::uint64_t t) {
    switch (spec.kind) {
        case WorkloadKind::ind:
            return 0.5;
        case WorkloadKind::step:
            return ((t - 1) / spec.segment) % 2 == 0 ? kLow : kHigh;
        case WorkloadKind::slope: {
            const std::uint64_t pos = (t - 1) % (2 * spec.segment);
            if (pos < spec.segment) return ramp(kLow, kHigh, pos, spec.segment);
            return ramp(kHigh, kLow, pos - spec.segment, spec.segment);
        }
        case WorkloadKind::hill:
            return ramp(kLow, kHigh, t - 1, spec.length);
    }
    throw std::invalid_argument("WorkloadSpec: unknown kind");
}

}  // namespace

std::string_view to_string(WorkloadKind kind) noexcept {
    switch (kind) {
        case WorkloadKind::ind:
            return "ind";
        case WorkloadKind::step:
            return "step";
        case WorkloadKind::slope:
            return "slope";
        case WorkloadKind::hill:
            return "hill";
    }
    return "?";
}

bool parse_workload_kind(std::string_view text, WorkloadKind& out) noexcept {
    if (text == "ind") {
        out = WorkloadKind::ind;
    } else if (text == "step") {
        out = WorkloadKind::step;
    } else if (text == "slope") {
        out = WorkloadKind::slope;
    } else if (text == "hill") {
        out = WorkloadKind::hill;
    } else {
        return false;
    }
    return true;
}

double probability_at(const WorkloadSpec& spec, std::uint64_t t) {
    validate(spec);
    if (t < 1 || t > spec.length) {
        throw std::out_of_range("probability_at: position outside the stream");
    }
    return probability_at_unchecked(spec, t);
}

Workload generate(const WorkloadSpec& spec) {
    validate(spec);
    Workload out;
    out.bits.reserve(spec.length);
    std::mt19937_64 rng(spec.seed);
    for (std::uint64_t t = 1; t <= spec.length; ++t) {
        const double p = probability_at_unchecked(spec, t);
        // 53-bit uniform in [0, 1); pinned by the standard, same everywhere.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        out.bits.push_back(u < p ? 1 : 0);
    }
    if (spec.kind == WorkloadKind::step) {
        for (std::uint64_t start = spec.segment + 1; start <= spec.length;
             start += spec.segment) {
            out.true_changes.push_back(start);
        }
    }
    return out;
}

}  // namespace borderline
