#pragma once

// Residual suites over sampled points: the compatibility verdict for a
// potential, the equation_E <=> D pi = 0 equivalence check, the sweep over the
// degree-2 family and the finite-difference gate for symbolic derivatives.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pcompat/connection.hpp"
#include "pcompat/poisson.hpp"
#include "pcompat/polynomial.hpp"
#include "pcompat/sampling.hpp"
#include "pcompat/zero_test.hpp"

namespace pcompat {

struct CheckResult {
    std::string name;
    double max_abs_residual = 0.0;
    int points_tested = 0;
    double threshold = 0.0;
    /// max_abs_residual <= threshold, and no more than 1% of the points
    /// failed to evaluate.
    bool passed = false;
};

enum class Verdict { compatible, incompatible, degenerate_zero, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::compatible:
        return "compatible";
    case Verdict::incompatible:
        return "incompatible";
    case Verdict::degenerate_zero:
        return "degenerate-zero";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

struct Report {
    std::string potential_text;
    SampleSpec spec;
    std::vector<CheckResult> checks;
    Verdict verdict = Verdict::inconclusive;
};

/// Check names in report order.
inline constexpr std::array<const char*, 6> kCheckNames{"equation_E", "dpi",     "modular",
                                                        "jacobi",     "casimir", "divergence"};

/// True when too many sample points were outside the validity domain for the
/// check to mean anything.
inline bool is_inconclusive(const CheckResult& check, const SampleSpec& spec) {
    return (spec.count - check.points_tested) * 100 > spec.count;
}

/// Evaluates all residual components at every point. The threshold is
/// abs_tol + rel_tol * (largest residual scale seen), one number per check so
/// that `passed` can be read straight off the two reported values. A point
/// where any component leaves the domain is dropped from the statistics.
inline CheckResult evaluate_check(std::string name, std::span<const ScalarField> residuals,
                                  const std::vector<Point3>& points, const SampleSpec& spec) {
    CheckResult result;
    result.name = std::move(name);
    double max_scale = 0.0;
    for (const Point3& p : points) {
        double local_max = 0.0;
        double local_scale = 0.0;
        try {
            for (const ScalarField& r : residuals) {
                const ValueScale v = evaluate_with_scale(r, p);
                local_max = std::max(local_max, std::abs(v.value));
                local_scale = std::max(local_scale, v.scale);
            }
        } catch (const DomainError&) {
            continue;
        }
        ++result.points_tested;
        result.max_abs_residual = std::max(result.max_abs_residual, local_max);
        max_scale = std::max(max_scale, local_scale);
    }
    result.threshold = spec.threshold(max_scale);
    result.passed =
        result.points_tested > 0 && !is_inconclusive(result, spec) && result.max_abs_residual <= result.threshold;
    return result;
}

/// The residual fields of each named check for the potential f.
struct ResidualSuite {
    std::vector<ScalarField> equation_e;
    std::vector<ScalarField> dpi;
    std::vector<ScalarField> modular;
    std::vector<ScalarField> jacobi;
    std::vector<ScalarField> casimir;
    std::vector<ScalarField> divergence;

    [[nodiscard]] std::array<const std::vector<ScalarField>*, 6> in_report_order() const {
        return {&equation_e, &dpi, &modular, &jacobi, &casimir, &divergence};
    }
};

inline ResidualSuite build_residual_suite(const ScalarField& f) {
    const Bivector pi = bivector_from_potential(f);
    ResidualSuite suite;
    const OneForm e = equation_e_residual(f);
    suite.equation_e.assign(e.components().begin(), e.components().end());
    for (const Bivector& b : dpi_components(pi)) {
        for (const ScalarField& c : b.components()) {
            suite.dpi.push_back(c);
        }
    }
    const VectorField phi = modular_field(pi);
    suite.modular.assign(phi.components().begin(), phi.components().end());
    suite.jacobi.push_back(jacobiator(pi).c);
    const VectorField cas = casimir_field(f);
    suite.casimir.assign(cas.components().begin(), cas.components().end());
    const auto div = divergence_residuals(pi);
    suite.divergence.assign(div.begin(), div.end());
    return suite;
}

/// True when every component of the bivector of f vanishes.
inline bool is_degenerate_potential(const ScalarField& f, const SampleSpec& spec) {
    const std::array<ScalarField, 3> pi = bivector_from_potential(f).components();
    return std::all_of(pi.begin(), pi.end(), [&](const ScalarField& c) { return is_identically_zero(c, spec); });
}

/// Verdict: degenerate-zero when the bivector vanishes; otherwise any
/// conclusive failed check makes it incompatible, any inconclusive check
/// makes it inconclusive, and all checks passing makes it compatible.
inline Verdict decide_verdict(const std::vector<CheckResult>& checks, const SampleSpec& spec, bool degenerate) {
    if (degenerate) {
        return Verdict::degenerate_zero;
    }
    bool inconclusive = false;
    for (const CheckResult& c : checks) {
        if (is_inconclusive(c, spec) || c.points_tested == 0) {
            inconclusive = true;
        } else if (!c.passed) {
            return Verdict::incompatible;
        }
    }
    return inconclusive ? Verdict::inconclusive : Verdict::compatible;
}

inline Report run_suite(const ScalarField& f, const SampleSpec& spec, std::string potential_text) {
    spec.validate();
    const std::vector<Point3> points = sample_points(spec);
    const ResidualSuite suite = build_residual_suite(f);
    Report report;
    report.potential_text = std::move(potential_text);
    report.spec = spec;
    const auto groups = suite.in_report_order();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        report.checks.push_back(evaluate_check(kCheckNames[i], *groups[i], points, spec));
    }
    report.verdict = decide_verdict(report.checks, spec, is_degenerate_potential(f, spec));
    return report;
}

inline Report run_suite(const ScalarField& f, const SampleSpec& spec = SampleSpec{}) {
    return run_suite(f, spec, canonical_text(f));
}

// ---------------------------------------------------------------------------

struct NamedField {
    std::string name;
    ScalarField field;
};

struct EquivalenceRow {
    std::string name;
    bool equation_e_passed = false;
    bool dpi_passed = false;

    [[nodiscard]] bool consistent() const { return equation_e_passed == dpi_passed; }
};

/// For each field, decides equation_E and D pi = 0 independently on the same points.
inline std::vector<EquivalenceRow> theorem_equivalence_check(const std::vector<NamedField>& fields,
                                                             const SampleSpec& spec = SampleSpec{}) {
    const std::vector<Point3> points = sample_points(spec);
    std::vector<EquivalenceRow> rows;
    rows.reserve(fields.size());
    for (const NamedField& nf : fields) {
        const OneForm e = equation_e_residual(nf.field);
        std::vector<ScalarField> dpi;
        for (const Bivector& b : dpi_components(nf.field)) {
            for (const ScalarField& c : b.components()) {
                dpi.push_back(c);
            }
        }
        EquivalenceRow row;
        row.name = nf.name;
        row.equation_e_passed = evaluate_check("equation_E", e.components(), points, spec).passed;
        row.dpi_passed = evaluate_check("dpi", dpi, points, spec).passed;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------

enum class SweepStatus { passed, failed, degenerate_zero, constraint_violation };

struct SweepEntry {
    Rational a, b, c;
    SweepStatus status = SweepStatus::failed;
    /// Exact check: threshold 0, max_abs_residual is 0 exactly when the equation_E
    /// residual expands to the zero polynomial.
    CheckResult check;
};

struct Triple {
    Rational a, b, c;
};

/// Every valid triple's family member is checked for equation_E by exact expansion.
inline std::vector<SweepEntry> sweep_quadratic(const std::vector<Triple>& grid, const SampleSpec& spec = SampleSpec{}) {
    const std::vector<Point3> points = sample_points(spec);
    std::vector<SweepEntry> out;
    for (const Triple& t : grid) {
        SweepEntry entry{t.a, t.b, t.c, SweepStatus::failed, {}};
        entry.check.name = "family(" + to_string(t.a) + "," + to_string(t.b) + "," + to_string(t.c) + ")";
        ScalarField f;
        try {
            f = quadratic_family(t.a, t.b, t.c);
        } catch (const ConstraintError&) {
            entry.status = SweepStatus::constraint_violation;
            out.push_back(std::move(entry));
            continue;
        }
        const OneForm residual = equation_e_residual(f);
        bool exact_zero = true;
        std::vector<Polynomial> expanded;
        for (const ScalarField& r : residual.components()) {
            auto poly = to_polynomial(r);
            if (!poly) {
                // cannot happen for family members: they are polynomials
                exact_zero = false;
                expanded.emplace_back();
                continue;
            }
            exact_zero = exact_zero && poly->is_zero();
            expanded.push_back(std::move(*poly));
        }
        double max_abs = 0.0;
        if (!exact_zero) {
            for (const Point3& p : points) {
                for (const Polynomial& poly : expanded) {
                    max_abs = std::max(max_abs, std::abs(poly.evaluate(p)));
                }
            }
            max_abs = std::max(max_abs, std::numeric_limits<double>::min());
        }
        entry.check.max_abs_residual = max_abs;
        entry.check.points_tested = exact_zero ? 0 : static_cast<int>(points.size());
        entry.check.threshold = 0.0;
        entry.check.passed = exact_zero;
        if (is_degenerate_potential(f, spec)) {
            entry.status = SweepStatus::degenerate_zero;
        } else {
            entry.status = exact_zero ? SweepStatus::passed : SweepStatus::failed;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

// ---------------------------------------------------------------------------

struct CrossCheckResult {
    /// max over points and axes of |symbolic partial - central difference|
    double max_error = 0.0;
    /// max over points of the positivized magnitude of f
    double field_scale = 0.0;
    int points_tested = 0;
    int excluded_points = 0;

    /// 10 h^2 * field scale
    [[nodiscard]] double bound(double h) const { return 10.0 * h * h * field_scale; }
};

/// Symbolic first partials against central differences at the spec's points.
/// Points whose stencil leaves the validity domain are excluded and counted.
inline CrossCheckResult cross_check(const ScalarField& f, const SampleSpec& spec, double h) {
    const auto grad = gradient(f);
    CrossCheckResult result;
    for (const Point3& p : sample_points(spec)) {
        double local_error = 0.0;
        double local_scale = 0.0;
        try {
            local_scale = evaluate_with_scale(f, p).scale;
            for (Axis a : kAxes) {
                const double exact = evaluate(grad[index_of(a)], p);
                local_error = std::max(local_error, std::abs(exact - fd_partial(f, p, a, h)));
            }
        } catch (const DomainError&) {
            ++result.excluded_points;
            continue;
        }
        ++result.points_tested;
        result.max_error = std::max(result.max_error, local_error);
        result.field_scale = std::max(result.field_scale, local_scale);
    }
    return result;
}

struct ConvergenceResult {
    CrossCheckResult coarse;
    CrossCheckResult fine;
    double h_coarse = 0.0;
    double h_fine = 0.0;
    /// log(e_coarse / e_fine) / log(h_coarse / h_fine); NaN when the stencil
    /// is exact for f.
    double order = std::numeric_limits<double>::quiet_NaN();
    /// The coarse-step error is already at the rounding floor, so the central
    /// difference is exact for f (e.g. quadratics) and no order is defined.
    bool stencil_exact = false;

    [[nodiscard]] bool within_bounds() const {
        return coarse.max_error <= coarse.bound(h_coarse) && fine.max_error <= fine.bound(h_fine);
    }
    [[nodiscard]] bool order_ok(double minimum = 1.9) const { return stencil_exact || order >= minimum; }
};

inline ConvergenceResult convergence_check(const ScalarField& f, const SampleSpec& spec, double h_coarse = 1e-3,
                                           double h_fine = 1e-4) {
    ConvergenceResult r;
    r.h_coarse = h_coarse;
    r.h_fine = h_fine;
    r.coarse = cross_check(f, spec, h_coarse);
    r.fine = cross_check(f, spec, h_fine);
    const double rounding_floor =
        1000.0 * std::numeric_limits<double>::epsilon() * std::max(r.coarse.field_scale, 1.0) / h_coarse;
    if (r.coarse.max_error <= rounding_floor) {
        r.stencil_exact = true;
    } else {
        r.order = std::log(r.coarse.max_error / r.fine.max_error) / std::log(h_coarse / h_fine);
    }
    return r;
}

} // namespace pcompat
