#pragma once

// Deciding whether a field vanishes, and the finite-difference oracle used to
// check symbolic derivatives.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcompat/polynomial.hpp"
#include "pcompat/sampling.hpp"
#include "pcompat/scalar_field.hpp"

namespace pcompat {

/// Central difference (f(p + h e) - f(p - h e)) / 2h. Truncation error is
/// h^2 f'''/6 for C^3 fields.
inline double fd_partial(const ScalarField& f, const Point3& p, Axis axis, double h = kDefaultStep) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("finite-difference step must be > 0");
    }
    const double forward = evaluate(f, p.shifted(axis, h));
    const double backward = evaluate(f, p.shifted(axis, -h));
    return (forward - backward) / (2.0 * h);
}

struct ZeroTestResult {
    bool zero = false;
    /// Decided by polynomial expansion rather than sampling.
    bool exact = false;
    int points_tested = 0;
    int failed_evaluations = 0;
    double max_abs = 0.0;
};

/// Polynomials are expanded and compared exactly. Anything else is evaluated
/// at the spec's sample points and accepted when every |f(p)| is within
/// abs_tol + rel_tol * scale(p). Points where evaluation leaves the domain are
/// skipped; more than 1% of them makes the answer "not zero". A sampled "zero"
/// can be a false positive only for fields that vanish on every sample point.
inline ZeroTestResult zero_test(const ScalarField& f, const SampleSpec& spec) {
    ZeroTestResult result;
    if (auto poly = to_polynomial(f)) {
        result.zero = poly->is_zero();
        result.exact = true;
        return result;
    }
    bool all_within = true;
    for (const Point3& p : sample_points(spec)) {
        try {
            const ValueScale v = evaluate_with_scale(f, p);
            ++result.points_tested;
            const double mag = std::abs(v.value);
            result.max_abs = std::max(result.max_abs, mag);
            if (mag > spec.threshold(v.scale)) {
                all_within = false;
            }
        } catch (const DomainError&) {
            ++result.failed_evaluations;
        }
    }
    const bool enough = result.failed_evaluations * 100 <= spec.count;
    result.zero = all_within && enough && result.points_tested > 0;
    return result;
}

inline bool is_identically_zero(const ScalarField& f, const SampleSpec& spec = SampleSpec{}) {
    return zero_test(f, spec).zero;
}

} // namespace pcompat
