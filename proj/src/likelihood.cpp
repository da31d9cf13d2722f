#include "borderline/likelihood.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace borderline {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// x * ln(x) with the 0 * ln(0) = 0 convention.
inline double xlogx(double x) noexcept {
    return x > 0.0 ? x * std::log(x) : 0.0;
}

}  // namespace

Score log_likelihood(CountPair counts, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("log_likelihood: p must lie in [0, 1]");
    }
    double value = 0.0;
    if (counts.ones > 0) {
        if (p == 0.0) return kNegInf;
        value += static_cast<double>(counts.ones) * std::log(p);
    }
    if (counts.zeros > 0) {
        if (p == 1.0) return kNegInf;
        value += static_cast<double>(counts.zeros) * std::log1p(-p);
    }
    return value;
}

Score ml_log_likelihood(CountPair counts) noexcept {
    if (counts.empty()) return 0.0;
    const double a = static_cast<double>(counts.ones);
    const double b = static_cast<double>(counts.zeros);
    // a*ln(a/t) + b*ln(b/t) rearranged so label flips evaluate identically.
    return xlogx(a) + xlogx(b) - xlogx(a + b);
}

Score split_score(CountPair left, CountPair right) noexcept {
    return ml_log_likelihood(left) + ml_log_likelihood(right) -
           ml_log_likelihood(left + right);
}

Score split_score_fixed(CountPair left, CountPair right, double p1, double p2) {
    return log_likelihood(left, p1) + log_likelihood(right, p2) -
           ml_log_likelihood(left + right);
}

}  // namespace borderline
