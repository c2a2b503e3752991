#pragma once

// The pcompat command-line front end. run_cli is kept separate from main so
// the tests can drive it with string streams.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcompat/pcompat.hpp"

namespace pcompat::cli {

enum ExitCode : int {
    kCompatible = 0,
    kIncompatible = 1,
    kDegenerate = 2,
    kInconclusive = 3,
    kUsage = 64,
};

inline int exit_code_for(Verdict v) {
    switch (v) {
    case Verdict::compatible:
        return kCompatible;
    case Verdict::incompatible:
        return kIncompatible;
    case Verdict::degenerate_zero:
        return kDegenerate;
    case Verdict::inconclusive:
        return kInconclusive;
    }
    return kInconclusive;
}

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Signed decimal literal, exactly.
inline Rational parse_signed_decimal(const std::string& text, const std::string& what) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto value = parse_decimal(body);
    if (!value) {
        throw UsageError(what + ": not a decimal literal: '" + text + "'");
    }
    return negative ? Rational(-*value) : *value;
}

inline double parse_real(const std::string& text, const std::string& what) {
    return to_double(parse_signed_decimal(text, what));
}

inline long long parse_whole(const std::string& text, const std::string& what) {
    const Rational v = parse_signed_decimal(text, what);
    if (!is_integer(v) || v < 0 || v > Rational(std::numeric_limits<long long>::max())) {
        throw UsageError(what + ": expected a non-negative whole number, got '" + text + "'");
    }
    return numerator_of(v).convert_to<long long>();
}

struct CliConfig {
    std::string subcommand;
    std::optional<std::string> f;
    std::optional<std::string> p12, p13, p23;
    std::vector<std::string> positional;
    std::vector<std::string> box;
    std::optional<std::string> count, seed, exclude, abs_tol, rel_tol, h;
    std::string format = "text";

    [[nodiscard]] SampleSpec sample_spec() const {
        SampleSpec spec;
        if (!box.empty()) {
            const double lo = parse_real(box.at(0), "--box");
            const double hi = parse_real(box.at(1), "--box");
            spec = SampleSpec::cube(lo, hi);
        }
        if (count) {
            const long long n = parse_whole(*count, "--count");
            if (n < 1 || n > 10'000'000) {
                throw UsageError("--count must be between 1 and 10000000");
            }
            spec.count = static_cast<int>(n);
        }
        if (seed) {
            spec.seed = static_cast<std::uint64_t>(parse_whole(*seed, "--seed"));
        }
        if (exclude) {
            spec.excluded_radius = parse_real(*exclude, "--exclude");
        }
        if (abs_tol) {
            spec.abs_tol = parse_real(*abs_tol, "--abs-tol");
        }
        if (rel_tol) {
            spec.rel_tol = parse_real(*rel_tol, "--rel-tol");
        }
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return spec;
    }

    [[nodiscard]] double step() const {
        const double value = h ? parse_real(*h, "--h") : kDefaultStep;
        if (!(value > 0.0)) {
            throw UsageError("--h must be > 0");
        }
        return value;
    }
};

namespace detail {

/// Raised after a parse failure has been reported on the diagnostic stream.
struct ReportedParseError {};

inline ScalarField parse_or_report(const std::string& text, const std::string& what, std::ostream& err) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        err << "error: cannot parse " << what << ": " << e.what() << '\n'
            << "  " << text << '\n'
            << "  " << std::string(e.offset(), ' ') << "^\n";
        throw ReportedParseError{};
    }
}

/// Polynomials print in canonical expanded form, anything else as the
/// simplified tree.
inline std::string field_text(const ScalarField& f) { return canonical_text(f); }

inline const std::string& require(const std::optional<std::string>& value, const char* flag) {
    if (!value) {
        throw UsageError(std::string("missing required option ") + flag);
    }
    return *value;
}

inline std::string pair_label(int i, int j, int k) {
    return "Gamma_" + std::to_string(i + 1) + std::to_string(j + 1) + "^" + std::to_string(k + 1);
}

inline Bivector bivector_input(const CliConfig& cfg, std::ostream& err) {
    std::array<std::string, 3> texts;
    if (cfg.positional.size() == 3) {
        texts = {cfg.positional[0], cfg.positional[1], cfg.positional[2]};
    } else if (!cfg.positional.empty()) {
        throw UsageError("expected three bivector components p12 p13 p23");
    } else {
        texts = {require(cfg.p12, "--p12"), require(cfg.p13, "--p13"), require(cfg.p23, "--p23")};
    }
    return {parse_or_report(texts[0], "p12", err), parse_or_report(texts[1], "p13", err),
            parse_or_report(texts[2], "p23", err)};
}

inline bool has_bivector_flags(const CliConfig& cfg) { return cfg.p12 || cfg.p13 || cfg.p23; }

inline ScalarField potential_input(const CliConfig& cfg, std::ostream& err) {
    if (cfg.f) {
        return parse_or_report(*cfg.f, "potential", err);
    }
    if (cfg.positional.size() == 1) {
        return parse_or_report(cfg.positional[0], "potential", err);
    }
    throw UsageError("missing required option --f");
}

inline std::string potential_source(const CliConfig& cfg) {
    return cfg.f ? *cfg.f : (cfg.positional.empty() ? std::string() : cfg.positional[0]);
}

// ---------------------------------------------------------------------------

inline int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const SampleSpec spec = cfg.sample_spec();
    const double h = cfg.step();
    const ScalarField f = potential_input(cfg, err);
    Report report = run_suite(f, spec, potential_source(cfg));

    // Oracle gate on the symbolic first partials before the verdict is trusted.
    const CrossCheckResult gate = cross_check(f, spec, h);
    if (gate.max_error > gate.bound(h)) {
        err << "warning: symbolic derivatives disagree with central differences (max error " << gate.max_error << " > "
            << gate.bound(h) << " at h=" << h << "); verdict downgraded to inconclusive\n";
        if (report.verdict != Verdict::degenerate_zero) {
            report.verdict = Verdict::inconclusive;
        }
    }
    if (cfg.format == "json") {
        out << to_json(report).dump(2) << '\n';
    } else {
        out << render_text(report);
    }
    return exit_code_for(report.verdict);
}

inline int cmd_christoffel(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const ChristoffelTable table = has_bivector_flags(cfg) ? christoffel_table(bivector_input(cfg, err))
                                                           : christoffel_table(potential_input(cfg, err));
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [i, j] : kChristoffelPairOrder) {
        for (int k = 0; k < 3; ++k) {
            const std::string text = field_text(table(i, j, k));
            if (cfg.format == "json") {
                entries.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"expr", text}});
            } else {
                out << pair_label(i, j, k) << " = " << text << '\n';
            }
        }
    }
    if (cfg.format == "json") {
        out << entries.dump(2) << '\n';
    }
    return 0;
}

inline int cmd_family(const CliConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    if (cfg.positional.size() != 3) {
        throw UsageError("family expects three coefficients a b c");
    }
    const Rational a = parse_signed_decimal(cfg.positional[0], "a");
    const Rational b = parse_signed_decimal(cfg.positional[1], "b");
    const Rational c = parse_signed_decimal(cfg.positional[2], "c");
    ScalarField f;
    try {
        f = quadratic_family(a, b, c);
    } catch (const ConstraintError& e) {
        throw UsageError(e.what());
    }
    const SweepEntry entry = sweep_quadratic({Triple{a, b, c}}, cfg.sample_spec()).front();
    const char* status = entry.status == SweepStatus::passed            ? "pass"
                         : entry.status == SweepStatus::degenerate_zero ? "degenerate-zero"
                                                                        : "FAIL";
    if (cfg.format == "json") {
        out << nlohmann::json{{"potential", field_text(f)},
                              {"equation_E_exact_zero", entry.check.passed},
                              {"status", status}}
                   .dump(2)
            << '\n';
    } else {
        out << field_text(f) << '\n';
        out << "equation_E residual expands to zero: " << status << '\n';
    }
    switch (entry.status) {
    case SweepStatus::passed:
        return 0;
    case SweepStatus::degenerate_zero:
        return kDegenerate;
    default:
        return kIncompatible;
    }
}

inline int cmd_potential(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const Bivector pi = bivector_input(cfg, err);
    const SampleSpec spec = cfg.sample_spec();
    try {
        const ScalarField f = potential_from_bivector(pi, spec);
        if (cfg.format == "json") {
            out << nlohmann::json{{"potential", field_text(f)}}.dump(2) << '\n';
        } else {
            out << field_text(f) << '\n';
        }
        return 0;
    } catch (const NotClosedError& e) {
        std::vector<std::string> residuals;
        for (const ScalarField& r : e.residuals()) {
            residuals.push_back(field_text(r));
        }
        if (cfg.format == "json") {
            out << nlohmann::json{{"error", "not closed"}, {"divergence_residuals", residuals}}.dump(2) << '\n';
        } else {
            out << "not of curl form; divergence residuals: (" << residuals[0] << ", " << residuals[1] << ", "
                << residuals[2] << ")\n";
        }
        return kIncompatible;
    }
}

inline int cmd_residual(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const OneForm r = equation_e_residual(potential_input(cfg, err));
    constexpr std::array<const char*, 3> labels{"dx", "dy", "dz"};
    if (cfg.format == "json") {
        nlohmann::json j;
        for (int i = 0; i < 3; ++i) {
            j[labels[i]] = field_text(r[i]);
        }
        out << j.dump(2) << '\n';
    } else {
        for (int i = 0; i < 3; ++i) {
            out << "E_" << labels[i] << " = " << field_text(r[i]) << '\n';
        }
    }
    return 0;
}

inline int cmd_jacobi(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    const Bivector pi = has_bivector_flags(cfg) || cfg.positional.size() == 3
                            ? bivector_input(cfg, err)
                            : bivector_from_potential(potential_input(cfg, err));
    const std::string text = field_text(jacobiator(pi).c);
    if (cfg.format == "json") {
        out << nlohmann::json{{"jacobiator", text}}.dump(2) << '\n';
    } else {
        out << "J = " << text << '\n';
    }
    return 0;
}

inline void add_sampling_options(CLI::App* sub, CliConfig& cfg) {
    sub->add_option("--box", cfg.box, "Sample cube [LO, HI]^3")->type_name("LO")->expected(2)->allow_extra_args(false);
    sub->add_option("--count", cfg.count, "Number of sample points")->type_name("N");
    sub->add_option("--seed", cfg.seed, "Sampling seed")->type_name("S");
    sub->add_option("--exclude", cfg.exclude, "Radius of the excluded ball around the origin")->type_name("R");
    sub->add_option("--abs-tol", cfg.abs_tol, "Absolute residual tolerance")->type_name("T");
    sub->add_option("--rel-tol", cfg.rel_tol, "Relative residual tolerance")->type_name("T");
    sub->add_option("--h", cfg.h, "Finite-difference step")->type_name("H");
}

inline void add_common(CLI::App* sub, CliConfig& cfg) {
    sub->add_option("--format", cfg.format, "Output format")

        ->check(CLI::IsMember({"json", "text"}));
    add_sampling_options(sub, cfg);
}

} // namespace detail

/// Runs one invocation; args exclude the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Checks whether a Poisson bivector on R^3 is compatible with the canonical metric", "pcompat"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1, 1);
    CliConfig cfg;

    auto* verify = app.add_subcommand("verify", "Run all residual checks for a potential f");
    verify->add_option("--f", cfg.f, "Potential f");
    auto* christoffel = app.add_subcommand("christoffel", "Print the 27 Christoffel symbols");
    christoffel->add_option("--f", cfg.f, "Potential f");
    christoffel->add_option("--p12", cfg.p12);
    christoffel->add_option("--p13", cfg.p13);
    christoffel->add_option("--p23", cfg.p23);
    auto* family = app.add_subcommand("family", "Member of the degree-2 family for a b c");
    family->add_option("coefficients", cfg.positional, "a b c")->expected(3);
    auto* potential = app.add_subcommand("potential", "Reconstruct f from a bivector p12 p13 p23");
    potential->add_option("components", cfg.positional, "p12 p13 p23")->expected(0, 3);
    potential->add_option("--p12", cfg.p12);
    potential->add_option("--p13", cfg.p13);
    potential->add_option("--p23", cfg.p23);
    auto* residual = app.add_subcommand("residual", "Print the components of d|df|^2 - (Laplacian f) df");
    residual->add_option("--f", cfg.f, "Potential f");
    auto* jacobi = app.add_subcommand("jacobi", "Print the Jacobi obstruction of a bivector");
    jacobi->add_option("components", cfg.positional, "p12 p13 p23")->expected(0, 3);
    jacobi->add_option("--f", cfg.f, "Potential f");
    jacobi->add_option("--p12", cfg.p12);
    jacobi->add_option("--p13", cfg.p13);
    jacobi->add_option("--p23", cfg.p23);
    for (CLI::App* sub : {verify, christoffel, family, potential, residual, jacobi}) {
        detail::add_common(sub, cfg);
        sub->positionals_at_end();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        if (cfg.subcommand == "verify") {
            return detail::cmd_verify(cfg, out, err);
        }
        if (cfg.subcommand == "christoffel") {
            return detail::cmd_christoffel(cfg, out, err);
        }
        if (cfg.subcommand == "family") {
            return detail::cmd_family(cfg, out, err);
        }
        if (cfg.subcommand == "potential") {
            return detail::cmd_potential(cfg, out, err);
        }
        if (cfg.subcommand == "residual") {
            return detail::cmd_residual(cfg, out, err);
        }
        return detail::cmd_jacobi(cfg, out, err);
    } catch (const detail::ReportedParseError&) {
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace pcompat::cli
