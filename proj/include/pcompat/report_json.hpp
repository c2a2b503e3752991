#pragma once

// Report serialization: JSON (round-trippable) and a plain-text rendering of
// the same data.

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pcompat/verify.hpp"

namespace pcompat {

inline constexpr const char* kThresholdRule =
    "threshold = abs_tol + rel_tol * max sampled residual scale; tolerances are engineering choices";

inline Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::compatible, Verdict::incompatible, Verdict::degenerate_zero, Verdict::inconclusive}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    throw std::invalid_argument("unknown verdict: " + s);
}

inline nlohmann::json to_json(const SampleSpec& spec) {
    nlohmann::json box = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        box.push_back({spec.lo[i], spec.hi[i]});
    }
    return {{"box", box},
            {"excluded_radius", spec.excluded_radius},
            {"count", spec.count},
            {"seed", spec.seed},
            {"abs_tol", spec.abs_tol},
            {"rel_tol", spec.rel_tol},
            {"threshold_rule", kThresholdRule}};
}

inline nlohmann::json to_json(const CheckResult& c) {
    return {{"name", c.name},
            {"max_abs_residual", c.max_abs_residual},
            {"points_tested", c.points_tested},
            {"threshold", c.threshold},
            {"passed", c.passed}};
}

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : r.checks) {
        checks.push_back(to_json(c));
    }
    return {{"potential", r.potential_text},
            {"spec", to_json(r.spec)},
            {"checks", checks},
            {"verdict", to_string(r.verdict)}};
}

inline Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.potential_text = j.at("potential").get<std::string>();
    const auto& s = j.at("spec");
    const auto& box = s.at("box");
    if (!box.is_array() || box.size() != 3) {
        throw std::invalid_argument("spec.box must hold three [lo, hi] pairs");
    }
    for (int i = 0; i < 3; ++i) {
        r.spec.lo[i] = box.at(i).at(0).get<double>();
        r.spec.hi[i] = box.at(i).at(1).get<double>();
    }
    r.spec.excluded_radius = s.at("excluded_radius").get<double>();
    r.spec.count = s.at("count").get<int>();
    r.spec.seed = s.at("seed").get<std::uint64_t>();
    r.spec.abs_tol = s.at("abs_tol").get<double>();
    r.spec.rel_tol = s.at("rel_tol").get<double>();
    for (const auto& c : j.at("checks")) {
        r.checks.push_back(CheckResult{c.at("name").get<std::string>(), c.at("max_abs_residual").get<double>(),
                                       c.at("points_tested").get<int>(), c.at("threshold").get<double>(),
                                       c.at("passed").get<bool>()});
    }
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    return r;
}

inline std::string render_text(const Report& r) {
    std::ostringstream out;
    out << "potential: " << r.potential_text << '\n';
    out << "samples:   " << r.spec.count << " points in";
    for (int i = 0; i < 3; ++i) {
        out << (i == 0 ? " " : " x ") << '[' << r.spec.lo[i] << ", " << r.spec.hi[i] << ']';
    }
    out << ", |p| > " << r.spec.excluded_radius << ", seed " << r.spec.seed << '\n';
    out << "tolerance: abs " << r.spec.abs_tol << ", rel " << r.spec.rel_tol << " (x max residual scale)\n";
    out << std::left << std::setw(12) << "check" << std::setw(16) << "max|residual|" << std::setw(16) << "threshold"
        << std::setw(8) << "points" << "result\n";
    for (const CheckResult& c : r.checks) {
        const bool inconclusive = is_inconclusive(c, r.spec);
        out << std::left << std::setw(12) << c.name << std::setw(16) << c.max_abs_residual << std::setw(16)
            << c.threshold << std::setw(8) << c.points_tested
            << (inconclusive ? "inconclusive" : (c.passed ? "pass" : "FAIL")) << '\n';
    }
    out << "verdict: " << to_string(r.verdict);
    if (r.verdict == Verdict::degenerate_zero) {
        out << " (the potential is constant, so the bivector is identically zero)";
    }
    out << '\n';
    return out.str();
}

} // namespace pcompat
