#pragma once

// Recursive-descent parser for scalar-field expressions.
//
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := '-' factor | atom ('^' exponent)*      ('^' is right-associative)
//   atom     := number | 'x' | 'y' | 'z' | '(' expr ')' | 'sqrt' '(' expr ')'
//   exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//   number   := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//
// Whitespace is ignored. Decimal literals become exact rationals, and constant
// subexpressions such as 3/2 fold to a single rational constant.

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pcompat/rational.hpp"
#include "pcompat/scalar_field.hpp"

namespace pcompat {

class ParseError : public std::runtime_error {
  public:
    enum class Kind { syntax, unknown_identifier, malformed_exponent };

    ParseError(Kind kind, std::size_t offset, const std::string& message)
        : std::runtime_error(message + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    /// Byte offset into the parsed text.
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    Kind kind_;
    std::size_t offset_;
};

namespace detail {

class ExpressionParser {
  public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    ScalarField parse_all() {
        ScalarField result = parse_expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail(ParseError::Kind::syntax, std::string("unexpected '") + text_[pos_] + "'");
        }
        return result;
    }

  private:
    [[noreturn]] void fail(ParseError::Kind kind, const std::string& message) const {
        throw ParseError(kind, pos_, message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) {
                fail(ParseError::Kind::syntax, std::string("expected '") + c + "' but input ended");
            }
            fail(ParseError::Kind::syntax, std::string("expected '") + c + "'");
        }
    }

    [[nodiscard]] char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ScalarField parse_expr() {
        ScalarField lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = lhs + parse_term();
            } else if (accept('-')) {
                lhs = lhs - parse_term();
            } else {
                return lhs;
            }
        }
    }

    ScalarField parse_term() {
        ScalarField lhs = parse_factor();
        for (;;) {
            if (accept('*')) {
                lhs = lhs * parse_factor();
            } else if (accept('/')) {
                lhs = lhs / parse_factor();
            } else {
                return lhs;
            }
        }
    }

    ScalarField parse_factor() {
        if (accept('-')) {
            return -parse_factor();
        }
        ScalarField base = parse_atom();
        if (accept('^')) {
            return pow(base, parse_exponent_chain());
        }
        return base;
    }

    Rational parse_exponent_chain() {
        const std::size_t start = pos_;
        Rational exponent = parse_exponent();
        if (accept('^')) {
            const Rational upper = parse_exponent_chain();
            if (!is_integer(upper) || abs(numerator_of(upper)) > 64) {
                pos_ = start;
                fail(ParseError::Kind::malformed_exponent, "exponent tower must reduce to a small integer power");
            }
            if (exponent == 0 && upper < 0) {
                pos_ = start;
                fail(ParseError::Kind::malformed_exponent, "zero exponent raised to a negative power");
            }
            exponent = rational_pow(exponent, numerator_of(upper).convert_to<long>());
        }
        return exponent;
    }

    Integer parse_integer_literal() {
        skip_space();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
            skip_space();
        }
        Integer value = 0;
        bool any = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
            value = value * 10 + (text_[pos_] - '0');
            any = true;
            ++pos_;
        }
        if (!any || (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))) {
            pos_ = start;
            fail(ParseError::Kind::malformed_exponent, "exponent must be an integer or (integer/integer)");
        }
        return negative ? Integer(-value) : value;
    }

    Rational parse_exponent() {
        skip_space();
        const std::size_t start = pos_;
        if (accept('(')) {
            const Integer num = parse_integer_literal();
            Integer den = 1;
            if (accept('/')) {
                den = parse_integer_literal();
                if (den == 0) {
                    pos_ = start;
                    fail(ParseError::Kind::malformed_exponent, "zero denominator in exponent");
                }
            }
            if (!accept(')')) {
                pos_ = start;
                fail(ParseError::Kind::malformed_exponent, "exponent must be an integer or (integer/integer)");
            }
            return Rational(num) / Rational(den);
        }
        return Rational(parse_integer_literal());
    }

    ScalarField parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) {
            fail(ParseError::Kind::syntax, "expected an operand but input ended");
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ScalarField inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "x") {
                return ScalarField::x();
            }
            if (name == "y") {
                return ScalarField::y();
            }
            if (name == "z") {
                return ScalarField::z();
            }
            if (name == "sqrt") {
                expect('(');
                ScalarField inner = parse_expr();
                expect(')');
                return sqrt(inner);
            }
            pos_ = start;
            fail(ParseError::Kind::unknown_identifier, "unknown identifier '" + std::string(name) + "'");
        }
        fail(ParseError::Kind::syntax, std::string("unexpected '") + c + "'");
    }

    ScalarField parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '.')) {
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
                ++look;
            }
            if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look])) != 0) {
                pos_ = look;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
                    ++pos_;
                }
            }
        }
        auto value = parse_decimal(text_.substr(start, pos_ - start));
        if (!value) {
            pos_ = start;
            fail(ParseError::Kind::syntax, "malformed number");
        }
        return ScalarField(*value);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an expression in x, y, z. Throws ParseError with the byte offset of
/// the problem.
inline ScalarField parse(std::string_view text) { return detail::ExpressionParser(text).parse_all(); }

} // namespace pcompat
