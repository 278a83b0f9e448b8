#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlpl {

/// Axis-aligned cube [lo, hi]^n used for domains.
struct Box {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x, double tol = 1e-12) const {
        return x >= lo - tol && x <= hi + tol;
    }
};

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepFailure : std::runtime_error {
    StepFailure(const std::string& msg, double grad_norm)
        : std::runtime_error(msg), last_gradient_norm(grad_norm) {}
    double last_gradient_norm;
};

/// Fixed-tree (pairwise) summation: deterministic and more accurate than a
/// running sum. All reductions that feed audits go through here.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

}  // namespace nlpl
