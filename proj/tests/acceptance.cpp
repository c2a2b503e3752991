// Acceptance run: one [PASS]/[FAIL] line per criterion, detail lines indented
// below it. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "schema_check.hpp"
#include "test_support.hpp"

using namespace pcompat;
using namespace pcompat::testing;

namespace {

struct Outcome {
    bool passed = false;
    std::vector<std::string> details;

    void note(const std::string& line) { details.push_back(line); }
    template <class... Args> void notef(Args&&... args) {
        std::ostringstream s;
        (s << ... << args);
        details.push_back(s.str());
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<NamedField> curl_form_suite() {
    std::vector<NamedField> out = named_suite();
    int i = 0;
    for (const Polynomial& p : random_potentials()) {
        out.push_back({"random" + std::to_string(i++), to_field(p)});
    }
    return out;
}

Outcome christoffel_fidelity() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    for (const Polynomial& p : random_potentials()) {
        const ChristoffelTable table = christoffel_table(to_field(p));
        const auto expected = transcribed_christoffel(p);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    if (!(expand(table(i, j, k)) - expected[i][j][k]).is_zero()) {
                        ++mismatches;
                    }
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    o.passed = mismatches == 0 && elapsed < 5.0;
    o.notef("20 potentials x 27 symbols, mismatches ", mismatches, ", runtime ", std::fixed, std::setprecision(2),
            elapsed, " s");
    return o;
}

Outcome dpi_fidelity() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    for (const Polynomial& p : random_potentials()) {
        const auto computed = dpi_components(to_field(p));
        const auto expected = transcribed_dpi(p);
        for (int i = 0; i < 3; ++i) {
            const auto comps = computed[i].components();
            for (int c = 0; c < 3; ++c) {
                if (!(expand(comps[c]) - expected[i][c]).is_zero()) {
                    ++mismatches;
                }
            }
        }
    }
    const double elapsed = seconds_since(start);
    o.passed = mismatches == 0 && elapsed < 5.0;
    o.notef("20 potentials x 9 components, mismatches ", mismatches, ", runtime ", std::fixed, std::setprecision(2),
            elapsed, " s");
    return o;
}

Outcome theorem_equivalence() {
    Outcome o;
    int mismatches = 0;
    int e_pass = 0;
    const auto rows = theorem_equivalence_check(named_suite());
    for (const EquivalenceRow& row : rows) {
        e_pass += row.equation_e_passed ? 1 : 0;
        if (!row.consistent()) {
            ++mismatches;
            o.notef("mismatch on ", row.name, ": equation_E ", row.equation_e_passed, ", dpi ", row.dpi_passed);
        }
    }
    o.passed = mismatches == 0;
    o.notef(rows.size(), " fields, ", e_pass, " satisfy both, ", rows.size() - e_pass - mismatches,
            " fail both, mismatches ", mismatches);
    return o;
}

Outcome quadratic_family_exact() {
    Outcome o;
    std::vector<Triple> grid;
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; b <= 2; ++b) {
            for (int c = 0; c <= 2; ++c) {
                grid.push_back({Rational(a), Rational(b), Rational(c)});
            }
        }
    }
    int failures = 0;
    for (const SweepEntry& e : sweep_quadratic(grid)) {
        if (!e.check.passed || e.check.max_abs_residual != 0.0) {
            ++failures;
            o.note("residual not exactly zero for " + e.check.name);
        }
    }
    const std::string member = canonical_text(quadratic_family(Rational(1), Rational(1), Rational(1)));
    const bool printed = member == "2*x^2+2*y^2+2*z^2-2*x*y+2*x*z+2*y*z";
    o.passed = failures == 0 && printed;
    o.notef(grid.size(), " triples, exact-zero failures ", failures);
    o.note("family(1,1,1) = " + member);
    return o;
}

Outcome so3_potential_check() {
    Outcome o;
    const ScalarField f = so3_potential();
    const SampleSpec spec;
    double e_max = 0.0;
    const OneForm e = equation_e_residual(f);
    for (const Point3& p : sample_points(spec)) {
        for (const ScalarField& c : e.components()) {
            e_max = std::max(e_max, std::abs(evaluate(c, p)));
        }
    }

    // the stated multiple r * pi_so(3), and the multiple 3 r * pi_so(3) that
    // grad(r^3) = 3 r (x, y, z) actually produces
    const std::array<ScalarField, 3> pi = bivector_from_potential(f).components();
    const std::array<ScalarField, 3> so3 = so3_bivector().components();
    SampleSpec hundred;
    hundred.count = 100;
    double literal = 0.0;
    double tripled = 0.0;
    double ratio_lo = 1e300;
    double ratio_hi = 0.0;
    for (const Point3& p : sample_points(hundred)) {
        const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
        for (int c = 0; c < 3; ++c) {
            const double got = evaluate(pi[c], p);
            const double base = r * evaluate(so3[c], p);
            literal = std::max(literal, std::abs(got - base));
            tripled = std::max(tripled, std::abs(got - 3.0 * base));
            if (std::abs(base) > 1e-3) {
                ratio_lo = std::min(ratio_lo, got / base);
                ratio_hi = std::max(ratio_hi, got / base);
            }
        }
    }
    o.passed = e_max <= 1e-9 && literal <= 1e-12;
    o.notef("max |equation_E residual| = ", std::scientific, std::setprecision(3), e_max,
            " (<= 1e-9: ", e_max <= 1e-9 ? "yes" : "no", ")");
    o.notef("max |pi - r*(z,-y,x)| over 100 points = ", std::scientific, std::setprecision(3), literal,
            " (<= 1e-12: ", literal <= 1e-12 ? "yes" : "no", ")");
    o.notef("componentwise ratio pi / (r*(z,-y,x)) ranges over [", std::fixed, std::setprecision(12), ratio_lo, ", ",
            ratio_hi, "]");
    o.notef("max |pi - 3r*(z,-y,x)| = ", std::scientific, std::setprecision(3), tripled,
            ": the bivector of r^3 is 3r*pi_so(3), a constant multiple of r*pi_so(3), so compatibility still holds");
    return o;
}

Outcome negative_control() {
    Outcome o;
    const ScalarField f = parse("(x^2+y^2+z^2)/2");
    const Report r = run_suite(f);
    const OneForm e = equation_e_residual(f);
    const Point3 p{1.0, 0.0, 0.0};
    const std::array<double, 3> expected{-1.0, 0.0, 0.0};
    double dev = 0.0;
    for (int c = 0; c < 3; ++c) {
        dev = std::max(dev, std::abs(evaluate(e[c], p) - expected[c]));
    }
    o.passed = r.verdict == Verdict::incompatible && dev <= 1e-12;
    o.notef("verdict ", to_string(r.verdict), ", |E(1,0,0) - (-1,0,0)| = ", std::scientific, std::setprecision(3), dev);
    return o;
}

Outcome structural_identities() {
    Outcome o;
    const SampleSpec spec;
    int torsion = 0, metric = 0, modular = 0, casimir = 0, jacobi = 0;
    const auto suite = curl_form_suite();
    for (const NamedField& nf : suite) {
        const Bivector pi = bivector_from_potential(nf.field);
        const ChristoffelTable gamma = christoffel_table(pi);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const OneForm a = OneForm::basis(i), b = OneForm::basis(j);
                const OneForm t = koszul_connection(pi, a, b) - koszul_connection(pi, b, a) - lie_bracket_pi(pi, a, b);
                for (const ScalarField& c : t.components()) {
                    torsion += is_identically_zero(c, spec) ? 0 : 1;
                }
                for (int k = 0; k < 3; ++k) {
                    metric += is_identically_zero(gamma(i, j, k) + gamma(i, k, j), spec) ? 0 : 1;
                }
            }
        }
        const VectorField phi = modular_field(pi);
        for (const ScalarField& c : phi.components()) {
            modular += is_identically_zero(c, spec) ? 0 : 1;
        }
        const VectorField cas = casimir_field(nf.field);
        for (const ScalarField& c : cas.components()) {
            casimir += is_identically_zero(c, spec) ? 0 : 1;
        }
        jacobi += is_identically_zero(jacobiator(pi).c, spec) ? 0 : 1;
    }
    const ScalarField j = jacobiator(Bivector{ScalarField(1), parse("-x"), ScalarField(0)}).c;
    double dev = 0.0;
    SampleSpec hundred;
    hundred.count = 100;
    for (const Point3& p : sample_points(hundred)) {
        dev = std::max(dev, std::abs(std::abs(evaluate(j, p)) - 1.0));
    }
    o.passed = torsion + metric + modular + casimir + jacobi == 0 && dev <= 1e-12;
    o.notef(suite.size(), " curl-form bivectors; nonzero torsion ", torsion, ", metric ", metric, ", modular ", modular,
            ", casimir ", casimir, ", jacobiator ", jacobi);
    o.notef("jacobiator of (1,-x,0) = ", canonical_text(j), ", max ||J| - 1| = ", std::scientific, std::setprecision(3),
            dev);
    return o;
}

Outcome rescaled_connection() {
    Outcome o;
    const ScalarField g = parse("x^2+y^2+z^2");
    const Bivector pi = so3_bivector();
    const Bivector scaled = g * pi;
    SampleSpec spec;
    spec.count = 100;
    const std::vector<Point3> points = sample_points(spec);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const OneForm a = OneForm::basis(i), b = OneForm::basis(j);
            const OneForm closed = scaled_koszul(g, pi, a, b);
            const OneForm direct = koszul_connection(scaled, a, b);
            for (const Point3& p : points) {
                for (int k = 0; k < 3; ++k) {
                    dev = std::max(dev, std::abs(evaluate(closed[k], p) - evaluate(direct[k], p)));
                }
            }
        }
    }
    o.passed = dev <= 1e-9;
    o.notef("9 coframe pairs x 100 points, max deviation ", std::scientific, std::setprecision(3), dev);
    return o;
}

Outcome oracle_gate() {
    Outcome o;
    const SampleSpec spec;
    int failures = 0;
    int exact = 0;
    double worst_order = 1e300;
    const auto suite = curl_form_suite();
    for (const NamedField& nf : suite) {
        const ConvergenceResult r = convergence_check(nf.field, spec, 1e-3, 1e-4);
        if (!r.within_bounds() || !r.order_ok(1.9)) {
            ++failures;
            o.notef("gate failed for ", nf.name, ": errors ", r.coarse.max_error, " / ", r.fine.max_error, ", order ",
                    r.order);
        }
        if (r.stencil_exact) {
            ++exact;
        } else {
            worst_order = std::min(worst_order, r.order);
        }
    }
    o.passed = failures == 0;
    o.notef(suite.size(), " potentials at h = 1e-3 and 1e-4, failures ", failures, ", stencil-exact ", exact,
            ", lowest observed order ", std::fixed, std::setprecision(3), worst_order);
    return o;
}

Outcome round_trip() {
    Outcome o;
    int failures = 0;
    for (const Polynomial& p : random_potentials(4242, 10)) {
        const ScalarField f = to_field(p);
        const Polynomial back = expand(potential_from_bivector(bivector_from_potential(f)));
        const Polynomial diff = back - p;
        if (diff.degree() > 0) {
            ++failures;
            o.note("round trip of " + p.to_string() + " gave " + back.to_string());
        }
    }
    o.passed = failures == 0;
    o.notef("10 potentials, non-constant differences ", failures);
    return o;
}

struct CliExample {
    std::vector<std::string> args;
    int exit_code;
    std::string expected_line;
};

Outcome cli_contract() {
    Outcome o;
    const std::vector<CliExample> examples{
        {{"verify", "--f", "(x^2+y^2+z^2)^(3/2)", "--exclude", "0.25"}, 0, "verdict: compatible"},
        {{"verify", "--f", "(x^2+y^2+z^2)/2"}, 1, "verdict: incompatible"},
        {{"verify", "--f", "x+"}, 64, ""},
        {{"christoffel", "--f", "x*y*z"}, 0, "Gamma_11^2 = -y"},
        {{"christoffel", "--f", "x"}, 0, "Gamma_33^3 = 0"},
        {{"christoffel", "--f", "x^2+y^2"}, 0, "Gamma_31^2 = 2"},
        {{"family", "1", "0", "0"}, 0, "x^2+y^2"},
        {{"family", "1", "1", "1"}, 0, "2*x^2+2*y^2+2*z^2-2*x*y+2*x*z+2*y*z"},
        {{"family", "1", "-1", "0"}, 64, ""},
        {{"potential", "x*y", "-(x*z)", "y*z"}, 0, "x*y*z"},
        {{"potential", "z", "-y", "x"}, 0, "(x^2+y^2+z^2)/2"},
        {{"potential", "x", "0", "0"}, 1, "(0, 1, 0)"},
    };
    int failures = 0;
    for (const CliExample& ex : examples) {
        std::ostringstream out, err;
        const int code = cli::run_cli(ex.args, out, err);
        const bool ok = code == ex.exit_code && out.str().find(ex.expected_line) != std::string::npos;
        if (!ok) {
            ++failures;
            std::string joined;
            for (const std::string& a : ex.args) {
                joined += " " + a;
            }
            o.notef("pcompat", joined, " exited ", code, " (expected ", ex.exit_code, ")");
        }
    }
    int schema_failures = 0;
    const nlohmann::json schema = load_schema(PCOMPAT_SCHEMA_PATH);
    for (const char* f : {"(x^2+y^2+z^2)^(3/2)", "(x^2+y^2+z^2)/2", "0", "sqrt(x)"}) {
        std::ostringstream out, err;
        cli::run_cli({"verify", "--f", f, "--format", "json"}, out, err);
        const auto errors = schema_errors(nlohmann::json::parse(out.str()), schema);
        if (!errors.empty()) {
            ++schema_failures;
            o.note(std::string("schema violation for ") + f + ": " + errors.front());
        }
    }
    o.passed = failures == 0 && schema_failures == 0;
    o.notef(examples.size(), " documented invocations, wrong exit code or output ", failures,
            "; JSON reports failing the schema ", schema_failures);
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 Christoffel symbols match the closed-form table", christoffel_fidelity},
        {"AC2 D pi matches the closed-form components", dpi_fidelity},
        {"AC3 equation_E and D pi = 0 agree on every suite field", theorem_equivalence},
        {"AC4 degree-2 family solves equation_E exactly", quadratic_family_exact},
        {"AC5 (x^2+y^2+z^2)^(3/2) solves equation_E; bivector equals r*pi_so(3)", so3_potential_check},
        {"AC6 (x^2+y^2+z^2)/2 is incompatible", negative_control},
        {"AC7 structural identities on curl-form bivectors", structural_identities},
        {"AC8 rescaled connection formula", rescaled_connection},
        {"AC9 finite-difference oracle gate", oracle_gate},
        {"AC10 potential round trip", round_trip},
        {"AC11 CLI contract", cli_contract},
    };
    int failed = 0;
    for (const auto& [label, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.note(std::string("exception: ") + e.what());
        }
        failed += o.passed ? 0 : 1;
        std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << label << '\n';
        for (const std::string& d : o.details) {
            std::cout << "       " << d << '\n';
        }
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed;
}
