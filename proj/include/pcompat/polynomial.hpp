#pragma once

// Polynomials in x, y, z with coefficients in Q(sqrt 2, sqrt 3, ...).
//
// `to_polynomial` recognizes fields that are polynomials (including constant
// square roots of rationals and division by invertible constants) and expands
// them into monomial form, so identities between them are decided exactly.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pcompat/radical.hpp"
#include "pcompat/scalar_field.hpp"

namespace pcompat {

/// Exponents of x, y, z.
using Monomial = std::array<int, 3>;

class Polynomial {
  public:
    Polynomial() = default;
    Polynomial(const RadicalNumber& c) { // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) {
            terms_.emplace(Monomial{0, 0, 0}, c);
        }
    }
    Polynomial(const Rational& c) : Polynomial(RadicalNumber(c)) {} // NOLINT(google-explicit-constructor)
    Polynomial(int c) : Polynomial(RadicalNumber(c)) {}             // NOLINT(google-explicit-constructor)

    static Polynomial variable(Axis a) {
        Polynomial p;
        Monomial m{0, 0, 0};
        m[index_of(a)] = 1;
        p.terms_.emplace(m, RadicalNumber(1));
        return p;
    }

    static Polynomial monomial(const RadicalNumber& coef, const Monomial& m) {
        Polynomial p;
        if (!coef.is_zero()) {
            p.terms_.emplace(m, coef);
        }
        return p;
    }

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::map<Monomial, RadicalNumber>& terms() const { return terms_; }

    [[nodiscard]] std::optional<RadicalNumber> constant_value() const {
        if (terms_.empty()) {
            return RadicalNumber();
        }
        if (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0, 0}) {
            return terms_.begin()->second;
        }
        return std::nullopt;
    }

    [[nodiscard]] int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            d = std::max(d, m[0] + m[1] + m[2]);
        }
        return d;
    }

    [[nodiscard]] bool depends_on(Axis a) const {
        return std::any_of(terms_.begin(), terms_.end(), [a](const auto& t) { return t.first[index_of(a)] != 0; });
    }

    Polynomial operator-() const {
        Polynomial out = *this;
        for (auto& [m, c] : out.terms_) {
            c = -c;
        }
        return out;
    }

    Polynomial& operator+=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    Polynomial& operator-=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                out.add_term(Monomial{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

    [[nodiscard]] Polynomial pow(unsigned n) const {
        Polynomial result(1);
        Polynomial base = *this;
        while (n != 0) {
            if ((n & 1U) != 0) {
                result = result * base;
            }
            n >>= 1U;
            if (n != 0) {
                base = base * base;
            }
        }
        return result;
    }

    [[nodiscard]] Polynomial partial(Axis a) const {
        Polynomial out;
        const int i = index_of(a);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) {
                continue;
            }
            Monomial dm = m;
            --dm[i];
            out.add_term(dm, c * RadicalNumber(Rational(m[i])));
        }
        return out;
    }

    /// Antiderivative along `a` with no constant of integration.
    [[nodiscard]] Polynomial integrate(Axis a) const {
        Polynomial out;
        const int i = index_of(a);
        for (const auto& [m, c] : terms_) {
            Monomial im = m;
            ++im[i];
            out.add_term(im, c * RadicalNumber(Rational(1, im[i])));
        }
        return out;
    }

    [[nodiscard]] double evaluate(const Point3& p) const {
        double sum = 0.0;
        for (const auto& [m, c] : terms_) {
            double term = c.to_double();
            for (Axis a : kAxes) {
                term *= std::pow(p[a], m[index_of(a)]);
            }
            sum += term;
        }
        return sum;
    }

    /// Terms in display order: ascending total degree, then monomials with
    /// more concentrated exponents first (x^2 before x*y), then x-, y-, z-
    /// exponents descending.
    [[nodiscard]] std::vector<std::pair<Monomial, RadicalNumber>> display_terms() const {
        std::vector<std::pair<Monomial, RadicalNumber>> out(terms_.begin(), terms_.end());
        auto key = [](const Monomial& m) {
            Monomial sorted = m;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            return std::make_tuple(m[0] + m[1] + m[2], sorted, m);
        };
        std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
            auto [da, pa, ma] = key(a.first);
            auto [db, pb, mb] = key(b.first);
            if (da != db) {
                return da < db;
            }
            if (pa != pb) {
                return pa > pb;
            }
            return ma > mb;
        });
        return out;
    }

    /// Canonical text: expanded monomials in display order; a common
    /// denominator is pulled out as "(...)/d".
    [[nodiscard]] std::string to_string() const {
        if (terms_.empty()) {
            return "0";
        }
        Integer common = 1;
        for (const auto& [m, c] : terms_) {
            const Integer d = c.denominator_lcm();
            common = common / detail::gcd(common, d) * d;
        }
        const RadicalNumber factor{Rational(common)};
        std::string body;
        bool first = true;
        for (const auto& [m, c] : display_terms()) {
            std::string term = term_text(m, c * factor);
            if (!first && term.front() != '-') {
                body += "+";
            }
            body += term;
            first = false;
        }
        if (common == 1) {
            return body;
        }
        if (terms_.size() > 1) {
            body = "(" + body + ")";
        }
        return body + "/" + common.str();
    }

  private:
    static std::string monomial_text(const Monomial& m) {
        std::string out;
        for (Axis a : kAxes) {
            const int e = m[index_of(a)];
            if (e == 0) {
                continue;
            }
            if (!out.empty()) {
                out += "*";
            }
            out += axis_name(a);
            if (e > 1) {
                out += "^" + std::to_string(e);
            }
        }
        return out;
    }

    static std::string term_text(const Monomial& m, const RadicalNumber& c) {
        const std::string mono = monomial_text(m);
        const std::string coef = c.to_string();
        if (mono.empty()) {
            return coef;
        }
        if (c.term_count() > 1) {
            return "(" + coef + ")*" + mono;
        }
        if (coef == "1") {
            return mono;
        }
        if (coef == "-1") {
            return "-" + mono;
        }
        return coef + "*" + mono;
    }

    void add_term(const Monomial& m, const RadicalNumber& c) {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    std::map<Monomial, RadicalNumber> terms_;
};

namespace detail {

using PolynomialCache = std::unordered_map<const Node*, std::optional<Polynomial>>;

inline std::optional<Polynomial> radical_power(const RadicalNumber& c, long exponent) {
    RadicalNumber base = c;
    if (exponent < 0) {
        auto inv = c.inverse();
        if (!inv) {
            return std::nullopt;
        }
        base = *inv;
        exponent = -exponent;
    }
    return Polynomial(base).pow(static_cast<unsigned>(exponent));
}

inline std::optional<Polynomial> to_polynomial(const ScalarField& f, PolynomialCache& cache) {
    if (auto it = cache.find(f.identity()); it != cache.end()) {
        return it->second;
    }
    std::optional<Polynomial> result = std::visit(
        [&](const auto& n) -> std::optional<Polynomial> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                return Polynomial(n.value);
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                return Polynomial::variable(n.axis);
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                auto a = to_polynomial(n.arg, cache);
                return a ? std::optional<Polynomial>(-*a) : std::nullopt;
            } else if constexpr (std::is_same_v<T, expr::Sum> || std::is_same_v<T, expr::Difference> ||
                                 std::is_same_v<T, expr::Product>) {
                auto a = to_polynomial(n.lhs, cache);
                if (!a) {
                    return std::nullopt;
                }
                auto b = to_polynomial(n.rhs, cache);
                if (!b) {
                    return std::nullopt;
                }
                if constexpr (std::is_same_v<T, expr::Sum>) {
                    return *a + *b;
                } else if constexpr (std::is_same_v<T, expr::Difference>) {
                    return *a - *b;
                } else {
                    return *a * *b;
                }
            } else if constexpr (std::is_same_v<T, expr::Quotient>) {
                auto den = to_polynomial(n.rhs, cache);
                if (!den) {
                    return std::nullopt;
                }
                auto c = den->constant_value();
                if (!c || c->is_zero()) {
                    return std::nullopt;
                }
                auto inv = c->inverse();
                if (!inv) {
                    return std::nullopt;
                }
                auto num = to_polynomial(n.lhs, cache);
                if (!num) {
                    return std::nullopt;
                }
                return *num * Polynomial(*inv);
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                auto base = to_polynomial(n.base, cache);
                if (!base) {
                    return std::nullopt;
                }
                const Integer num = numerator_of(n.exponent);
                const Integer den = denominator_of(n.exponent);
                if (abs(num) > 4096) {
                    return std::nullopt;
                }
                if (den == 1) {
                    if (num >= 0) {
                        return base->pow(num.template convert_to<unsigned>());
                    }
                    auto c = base->constant_value();
                    if (!c || c->is_zero()) {
                        return std::nullopt;
                    }
                    return radical_power(*c, num.template convert_to<long>());
                }
                if (den == 2) {
                    auto c = base->constant_value();
                    if (!c) {
                        return std::nullopt;
                    }
                    auto r = c->as_rational();
                    if (!r || *r <= 0) {
                        return std::nullopt;
                    }
                    return radical_power(RadicalNumber::sqrt_of(*r), num.template convert_to<long>());
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, expr::SquareRoot>) {
                auto a = to_polynomial(n.arg, cache);
                if (!a) {
                    return std::nullopt;
                }
                auto c = a->constant_value();
                if (!c) {
                    return std::nullopt;
                }
                auto r = c->as_rational();
                if (!r || *r < 0) {
                    return std::nullopt;
                }
                return Polynomial(RadicalNumber::sqrt_of(*r));
            } else {
                return std::nullopt;
            }
        },
        f.node().data);
    cache.emplace(f.identity(), result);
    return result;
}

} // namespace detail

/// Expanded monomial form of `f`, or nullopt when `f` is not recognized as a
/// polynomial (fractional powers of non-constants, division by non-constants,
/// line integrals).
inline std::optional<Polynomial> to_polynomial(const ScalarField& f) {
    detail::PolynomialCache cache;
    return detail::to_polynomial(f, cache);
}

namespace detail {

inline ScalarField radical_field(const RadicalNumber& c) {
    ScalarField out;
    for (const auto& [m, q] : c.terms()) {
        if (m == 1) {
            out += ScalarField(q);
        } else {
            out += ScalarField(q) * sqrt(ScalarField(Rational(m)));
        }
    }
    return out;
}

} // namespace detail

/// Expression tree for a polynomial, built term by term in display order.
inline ScalarField to_field(const Polynomial& p) {
    ScalarField out;
    for (const auto& [m, c] : p.display_terms()) {
        ScalarField term = detail::radical_field(c);
        for (Axis a : kAxes) {
            const int e = m[index_of(a)];
            if (e != 0) {
                term *= pow(ScalarField::variable(a), e);
            }
        }
        out += term;
    }
    return out;
}

/// Canonical text for any field: the expanded form for polynomials, the
/// simplified tree otherwise.
inline std::string canonical_text(const ScalarField& f) {
    if (auto p = to_polynomial(f)) {
        return p->to_string();
    }
    return emit(f);
}

} // namespace pcompat
