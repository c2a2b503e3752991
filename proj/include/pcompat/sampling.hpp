#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcompat/scalar_field.hpp"

namespace pcompat {

inline constexpr double kDefaultAbsTol = 1e-9;
inline constexpr double kDefaultRelTol = 1e-9;
inline constexpr double kDefaultStep = 1e-4;

/// Where and how strictly residuals are checked.
struct SampleSpec {
    std::array<double, 3> lo{-2.0, -2.0, -2.0};
    std::array<double, 3> hi{2.0, 2.0, 2.0};
    /// Points with |p| <= excluded_radius are rejected (0 disables).
    double excluded_radius = 0.25;
    int count = 500;
    std::uint64_t seed = 42;
    double abs_tol = kDefaultAbsTol;
    double rel_tol = kDefaultRelTol;

    static SampleSpec cube(double lo, double hi) {
        SampleSpec s;
        s.lo = {lo, lo, lo};
        s.hi = {hi, hi, hi};
        return s;
    }

    void validate() const {
        for (int i = 0; i < 3; ++i) {
            if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || !(lo[i] < hi[i])) {
                throw std::invalid_argument("sample box needs finite lo < hi on every axis");
            }
        }
        if (!std::isfinite(excluded_radius) || excluded_radius < 0.0) {
            throw std::invalid_argument("excluded radius must be >= 0");
        }
        if (count < 1) {
            throw std::invalid_argument("sample count must be >= 1");
        }
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
            throw std::invalid_argument("tolerances must be > 0");
        }
    }

    [[nodiscard]] double threshold(double scale) const { return abs_tol + rel_tol * scale; }
};

/// Deterministic sample points. The stream for a seed is fixed, so a larger
/// count yields a superset of a smaller one.
inline std::vector<Point3> sample_points(const SampleSpec& spec) {
    spec.validate();
    std::mt19937_64 engine(spec.seed);
    // 53 random bits -> [0,1); independent of the standard library's
    // distribution implementations.
    auto unit = [&engine] { return static_cast<double>(engine() >> 11U) * 0x1.0p-53; };
    std::vector<Point3> points;
    points.reserve(static_cast<std::size_t>(spec.count));
    const std::size_t max_attempts = 1000U * static_cast<std::size_t>(spec.count) + 10000U;
    std::size_t attempts = 0;
    while (points.size() < static_cast<std::size_t>(spec.count)) {
        if (++attempts > max_attempts) {
            throw std::invalid_argument("sample box lies (almost) entirely inside the excluded ball");
        }
        Point3 p{spec.lo[0] + (spec.hi[0] - spec.lo[0]) * unit(), spec.lo[1] + (spec.hi[1] - spec.lo[1]) * unit(),
                 spec.lo[2] + (spec.hi[2] - spec.lo[2]) * unit()};
        if (spec.excluded_radius > 0.0 && p.norm() <= spec.excluded_radius) {
            continue;
        }
        points.push_back(p);
    }
    return points;
}

} // namespace pcompat
