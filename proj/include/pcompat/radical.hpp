#pragma once

// Numbers of the form sum_k q_k * sqrt(m_k) with rational q_k and distinct
// squarefree positive integers m_k. Square roots of distinct squarefree
// integers are linearly independent over Q, so a value is zero iff every
// coefficient is zero. This is what makes constants such as sqrt(ab) in the
// degree-2 solution family exactly zero-testable.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "pcompat/rational.hpp"

namespace pcompat {

namespace detail {

// Trial-division bound for squarefree extraction. Radicands with a repeated
// prime factor above this bound whose cofactor is not a perfect square are
// kept as-is (zero-testing may then report a false "nonzero", never a false
// "zero" for values built from a single such radicand).
inline constexpr unsigned kSquarefreeTrialBound = 100000;

/// Splits n > 0 into (s, m) with n = s^2 * m and m squarefree (see bound above).
inline std::pair<Integer, Integer> split_square(Integer n) {
    Integer square_root_part = 1;
    auto strip = [&](unsigned p) {
        const Integer pp = Integer(p) * p;
        while (n % pp == 0) {
            n /= pp;
            square_root_part *= p;
        }
    };
    strip(2);
    for (unsigned p = 3; p <= kSquarefreeTrialBound; p += 2) {
        if (Integer(p) * p > n) {
            break;
        }
        strip(p);
    }
    if (auto r = exact_isqrt(n); r && n > 1) {
        square_root_part *= *r;
        n = 1;
    }
    return {square_root_part, n};
}

inline Integer gcd(Integer a, Integer b) {
    while (b != 0) {
        Integer t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

} // namespace detail

class RadicalNumber {
  public:
    RadicalNumber() = default;
    RadicalNumber(const Rational& value) { // NOLINT(google-explicit-constructor)
        if (value != 0) {
            terms_.emplace(Integer(1), value);
        }
    }
    RadicalNumber(int value) : RadicalNumber(Rational(value)) {} // NOLINT(google-explicit-constructor)

    /// Exact sqrt of a nonnegative rational: sqrt(p/q) = sqrt(p*q)/q.
    static RadicalNumber sqrt_of(const Rational& value) {
        if (value < 0) {
            throw std::domain_error("sqrt of negative rational " + pcompat::to_string(value));
        }
        RadicalNumber out;
        if (value == 0) {
            return out;
        }
        const Integer den = denominator_of(value);
        auto [outside, radicand] = detail::split_square(numerator_of(value) * den);
        out.terms_.emplace(radicand, Rational(outside) / Rational(den));
        return out;
    }

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    [[nodiscard]] std::optional<Rational> as_rational() const {
        if (terms_.empty()) {
            return Rational(0);
        }
        if (terms_.size() == 1 && terms_.begin()->first == 1) {
            return terms_.begin()->second;
        }
        return std::nullopt;
    }

    [[nodiscard]] const std::map<Integer, Rational>& terms() const { return terms_; }

    [[nodiscard]] double to_double() const {
        double sum = 0.0;
        for (const auto& [radicand, coef] : terms_) {
            sum += pcompat::to_double(coef) * std::sqrt(radicand.convert_to<double>());
        }
        return sum;
    }

    /// Inverse of a single-term value; multi-term values return nullopt.
    [[nodiscard]] std::optional<RadicalNumber> inverse() const {
        if (terms_.size() != 1) {
            return std::nullopt;
        }
        const auto& [m, q] = *terms_.begin();
        // 1/(q sqrt(m)) = sqrt(m) / (q m)
        RadicalNumber out;
        out.terms_.emplace(m, Rational(1) / (q * Rational(m)));
        return out;
    }

    RadicalNumber operator-() const {
        RadicalNumber out = *this;
        for (auto& [m, q] : out.terms_) {
            q = -q;
        }
        return out;
    }

    RadicalNumber& operator+=(const RadicalNumber& other) {
        for (const auto& [m, q] : other.terms_) {
            add_term(m, q);
        }
        return *this;
    }
    RadicalNumber& operator-=(const RadicalNumber& other) {
        for (const auto& [m, q] : other.terms_) {
            add_term(m, -q);
        }
        return *this;
    }

    friend RadicalNumber operator+(RadicalNumber a, const RadicalNumber& b) { return a += b; }
    friend RadicalNumber operator-(RadicalNumber a, const RadicalNumber& b) { return a -= b; }

    friend RadicalNumber operator*(const RadicalNumber& a, const RadicalNumber& b) {
        RadicalNumber out;
        for (const auto& [m1, q1] : a.terms_) {
            for (const auto& [m2, q2] : b.terms_) {
                // m1, m2 squarefree: m1*m2 = g^2 * (m1/g)(m2/g), and the
                // cofactor is again squarefree.
                const Integer g = detail::gcd(m1, m2);
                out.add_term((m1 / g) * (m2 / g), q1 * q2 * Rational(g));
            }
        }
        return out;
    }
    RadicalNumber& operator*=(const RadicalNumber& other) { return *this = *this * other; }

    friend bool operator==(const RadicalNumber& a, const RadicalNumber& b) { return a.terms_ == b.terms_; }

    /// Least common multiple of the coefficient denominators.
    [[nodiscard]] Integer denominator_lcm() const {
        Integer l = 1;
        for (const auto& [m, q] : terms_) {
            const Integer d = denominator_of(q);
            l = l / detail::gcd(l, d) * d;
        }
        return l;
    }

    [[nodiscard]] std::size_t term_count() const { return terms_.size(); }

    /// Text such as "3", "-1/2", "2*sqrt(6)", "1-sqrt(2)".
    [[nodiscard]] std::string to_string() const {
        if (terms_.empty()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto& [m, q] : terms_) {
            std::string term;
            const bool negative = q < 0;
            const Rational mag = negative ? Rational(-q) : q;
            if (m == 1) {
                term = pcompat::to_string(mag);
            } else if (mag == 1) {
                term = "sqrt(" + m.str() + ")";
            } else {
                term = pcompat::to_string(mag) + "*sqrt(" + m.str() + ")";
            }
            if (negative) {
                out += "-";
            } else if (!first) {
                out += "+";
            }
            out += term;
            first = false;
        }
        return out;
    }

  private:
    void add_term(const Integer& radicand, const Rational& coef) {
        if (coef == 0) {
            return;
        }
        auto [it, inserted] = terms_.emplace(radicand, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    std::map<Integer, Rational> terms_;
};

} // namespace pcompat
