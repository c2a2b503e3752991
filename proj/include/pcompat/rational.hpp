#pragma once

// Exact rational arithmetic used for constants, exponents and polynomial
// coefficients.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcompat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("rational_from_double: non-finite value");
    }
    if (v == 0.0) {
        return Rational(0);
    }
    int exponent = 0;
    const double mantissa = std::frexp(v, &exponent);
    // mantissa * 2^53 is an exact integer
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational result{Integer(scaled)};
    if (exponent > 0) {
        result *= Rational(Integer(1) << exponent);
    } else if (exponent < 0) {
        result /= Rational(Integer(1) << (-exponent));
    }
    return result;
}

/// Parses `digits[.digits][(e|E)[+-]digits]` exactly. Returns nullopt when the
/// whole view is not a decimal literal.
inline std::optional<Rational> parse_decimal(std::string_view text) {
    std::size_t i = 0;
    Integer mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        mantissa = mantissa * 10 + (text[i] - '0');
        any_digit = true;
        ++i;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            mantissa = mantissa * 10 + (text[i] - '0');
            --scale;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit) {
        return std::nullopt;
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            negative = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) {
            return std::nullopt;
        }
        int exp = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            exp = exp * 10 + (text[i] - '0');
            if (exp > 4000) {
                return std::nullopt;
            }
            ++i;
        }
        scale += negative ? -exp : exp;
    }
    if (i != text.size()) {
        return std::nullopt;
    }
    Rational value{mantissa};
    const Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(scale)));
    if (scale >= 0) {
        value *= Rational(ten_pow);
    } else {
        value /= Rational(ten_pow);
    }
    return value;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    if (is_integer(r)) {
        return numerator_of(r).str();
    }
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Rational rational_pow(const Rational& base, long exponent) {
    Rational result(1);
    Rational b = exponent >= 0 ? base : Rational(1) / base;
    auto n = static_cast<unsigned long>(exponent >= 0 ? exponent : -exponent);
    while (n != 0) {
        if ((n & 1U) != 0) {
            result *= b;
        }
        b *= b;
        n >>= 1U;
    }
    return result;
}

/// Exact integer square root, if `n` is a perfect square.
inline std::optional<Integer> exact_isqrt(const Integer& n) {
    if (n < 0) {
        return std::nullopt;
    }
    Integer root = boost::multiprecision::sqrt(n);
    if (root * root == n) {
        return root;
    }
    return std::nullopt;
}

/// Exact q-th root of a rational when it exists (q >= 1).
inline std::optional<Rational> exact_root(const Rational& r, unsigned q) {
    if (q == 1) {
        return r;
    }
    const bool negative = r < 0;
    if (negative && q % 2 == 0) {
        return std::nullopt;
    }
    auto int_root = [q](const Integer& n) -> std::optional<Integer> {
        if (n == 0) {
            return Integer(0);
        }
        // floating estimate, then exact check of the neighbours; a miss only
        // means the caller keeps the unfolded form
        const double estimate = std::pow(n.convert_to<double>(), 1.0 / q);
        if (!std::isfinite(estimate) || estimate > 9.0e18) {
            return std::nullopt;
        }
        const auto guess = Integer(static_cast<std::int64_t>(std::llround(estimate)));
        for (Integer cand = guess > 1 ? guess - 1 : Integer(0); cand <= guess + 1; ++cand) {
            if (boost::multiprecision::pow(cand, q) == n) {
                return cand;
            }
        }
        return std::nullopt;
    };
    Integer num = numerator_of(r);
    if (negative) {
        num = -num;
    }
    auto n_root = int_root(num);
    auto d_root = int_root(denominator_of(r));
    if (!n_root || !d_root) {
        return std::nullopt;
    }
    Rational root = Rational(*n_root) / Rational(*d_root);
    return negative ? Rational(-root) : root;
}

} // namespace pcompat
