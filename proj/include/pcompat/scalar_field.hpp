#pragma once

// Immutable expression trees over the coordinates x, y, z of R^3.
//
// Nodes are shared (a ScalarField is a handle to a const node), so copies are
// cheap and values can be shared freely between threads. The arithmetic
// builders apply only local rewrites: identities with 0 and 1, constant
// folding, double negation and collapsing of nested powers where that is
// valid on the whole real domain of the inner power.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pcompat/rational.hpp"

namespace pcompat {

enum class Axis : int { x = 0, y = 1, z = 2 };

inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

constexpr int index_of(Axis a) { return static_cast<int>(a); }
constexpr Axis axis_at(int i) { return static_cast<Axis>(i); }
constexpr char axis_name(Axis a) { return "xyz"[index_of(a)]; }

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] constexpr double operator[](Axis a) const {
        switch (a) {
        case Axis::x:
            return x;
        case Axis::y:
            return y;
        default:
            return z;
        }
    }
    [[nodiscard]] Point3 shifted(Axis a, double delta) const {
        Point3 out = *this;
        switch (a) {
        case Axis::x:
            out.x += delta;
            break;
        case Axis::y:
            out.y += delta;
            break;
        case Axis::z:
            out.z += delta;
            break;
        }
        return out;
    }
    [[nodiscard]] bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Raised when a field is evaluated outside its validity domain (negative
/// base of an even root, zero divisor, non-finite intermediate).
class DomainError : public std::domain_error {
  public:
    DomainError(const std::string& reason, std::string subexpression)
        : std::domain_error(reason + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

    [[nodiscard]] const std::string& subexpression() const noexcept { return subexpression_; }

  private:
    std::string subexpression_;
};

struct Node;

class ScalarField {
  public:
    /// The constant 0.
    ScalarField();
    ScalarField(const Rational& value);                      // NOLINT(google-explicit-constructor)
    ScalarField(int value) : ScalarField(Rational(value)) {} // NOLINT(google-explicit-constructor)

    static ScalarField variable(Axis a);
    static ScalarField x() { return variable(Axis::x); }
    static ScalarField y() { return variable(Axis::y); }
    static ScalarField z() { return variable(Axis::z); }

    [[nodiscard]] const Node& node() const { return *node_; }
    [[nodiscard]] const Node* identity() const { return node_.get(); }

    /// True if the tree mentions x, y or z.
    [[nodiscard]] bool has_variables() const;
    /// Value of a Constant node (no folding of larger constant subtrees).
    [[nodiscard]] std::optional<Rational> constant_value() const;
    [[nodiscard]] bool is_constant(int v) const;

    explicit ScalarField(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  private:
    std::shared_ptr<const Node> node_;
};

namespace expr {

struct Constant {
    Rational value;
    double approx;
};
struct Variable {
    Axis axis;
};
struct Negate {
    ScalarField arg;
};
struct Sum {
    ScalarField lhs, rhs;
};
struct Difference {
    ScalarField lhs, rhs;
};
struct Product {
    ScalarField lhs, rhs;
};
struct Quotient {
    ScalarField lhs, rhs;
};
struct Power {
    ScalarField base;
    Rational exponent;
    double approx_exponent;
};
struct SquareRoot {
    ScalarField arg;
};
/// f(p) = integral over t in [0,1] of sum_i form_i(t p) p_i: the potential of
/// the closed one-form `form` normalized by f(0) = 0.
struct LineIntegral {
    std::array<ScalarField, 3> form;
};

} // namespace expr

struct Node {
    using Data = std::variant<expr::Constant, expr::Variable, expr::Negate, expr::Sum, expr::Difference, expr::Product,
                              expr::Quotient, expr::Power, expr::SquareRoot, expr::LineIntegral>;
    Data data;
    bool has_variables = false;
};

namespace detail {

inline ScalarField make_field(Node::Data data) {
    bool vars = std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                return false;
            } else if constexpr (std::is_same_v<T, expr::Variable> || std::is_same_v<T, expr::LineIntegral>) {
                return true;
            } else if constexpr (std::is_same_v<T, expr::Negate> || std::is_same_v<T, expr::SquareRoot>) {
                return n.arg.has_variables();
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                return n.base.has_variables();
            } else {
                return n.lhs.has_variables() || n.rhs.has_variables();
            }
        },
        data);
    return ScalarField(std::make_shared<const Node>(Node{std::move(data), vars}));
}

template <class T> const T* as(const ScalarField& f) { return std::get_if<T>(&f.node().data); }

} // namespace detail

inline ScalarField::ScalarField() : ScalarField(Rational(0)) {}

inline ScalarField::ScalarField(const Rational& value)
    : node_(std::make_shared<const Node>(Node{expr::Constant{value, to_double(value)}, false})) {}

inline ScalarField ScalarField::variable(Axis a) { return detail::make_field(expr::Variable{a}); }

inline bool ScalarField::has_variables() const { return node_->has_variables; }

inline std::optional<Rational> ScalarField::constant_value() const {
    if (const auto* c = detail::as<expr::Constant>(*this)) {
        return c->value;
    }
    return std::nullopt;
}

inline bool ScalarField::is_constant(int v) const {
    const auto* c = detail::as<expr::Constant>(*this);
    return c != nullptr && c->value == v;
}

// ---------------------------------------------------------------------------
// Builders

inline ScalarField operator-(const ScalarField& a) {
    if (auto c = a.constant_value()) {
        return ScalarField(Rational(-*c));
    }
    if (const auto* n = detail::as<expr::Negate>(a)) {
        return n->arg;
    }
    return detail::make_field(expr::Negate{a});
}

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    auto ca = a.constant_value();
    auto cb = b.constant_value();
    if (ca && cb) {
        return ScalarField(Rational(*ca + *cb));
    }
    if (ca && *ca == 0) {
        return b;
    }
    if (cb && *cb == 0) {
        return a;
    }
    if (const auto* n = detail::as<expr::Negate>(b)) {
        return detail::make_field(expr::Difference{a, n->arg});
    }
    if (cb && *cb < 0) {
        return detail::make_field(expr::Difference{a, ScalarField(Rational(-*cb))});
    }
    return detail::make_field(expr::Sum{a, b});
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    auto ca = a.constant_value();
    auto cb = b.constant_value();
    if (ca && cb) {
        return ScalarField(Rational(*ca - *cb));
    }
    if (cb && *cb == 0) {
        return a;
    }
    if (ca && *ca == 0) {
        return -b;
    }
    if (const auto* n = detail::as<expr::Negate>(b)) {
        return a + n->arg;
    }
    if (cb && *cb < 0) {
        return detail::make_field(expr::Sum{a, ScalarField(Rational(-*cb))});
    }
    return detail::make_field(expr::Difference{a, b});
}

inline ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    auto ca = a.constant_value();
    auto cb = b.constant_value();
    if (ca && cb) {
        return ScalarField(Rational(*ca * *cb));
    }
    if ((ca && *ca == 0) || (cb && *cb == 0)) {
        return ScalarField(0);
    }
    if (ca && *ca == 1) {
        return b;
    }
    if (cb && *cb == 1) {
        return a;
    }
    if (ca && *ca == -1) {
        return -b;
    }
    if (cb && *cb == -1) {
        return -a;
    }
    if (cb) {
        // constants lead
        return b * a;
    }
    if (ca) {
        if (const auto* p = detail::as<expr::Product>(b)) {
            if (auto inner = p->lhs.constant_value()) {
                return ScalarField(Rational(*ca * *inner)) * p->rhs;
            }
        }
    }
    return detail::make_field(expr::Product{a, b});
}

inline ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    auto ca = a.constant_value();
    auto cb = b.constant_value();
    if (cb && *cb == 0) {
        // left for evaluation to report
        return detail::make_field(expr::Quotient{a, b});
    }
    if (ca && cb) {
        return ScalarField(Rational(*ca / *cb));
    }
    if (ca && *ca == 0) {
        return ScalarField(0);
    }
    if (cb && *cb == 1) {
        return a;
    }
    if (cb && *cb == -1) {
        return -a;
    }
    return detail::make_field(expr::Quotient{a, b});
}

inline ScalarField& operator+=(ScalarField& a, const ScalarField& b) { return a = a + b; }
inline ScalarField& operator-=(ScalarField& a, const ScalarField& b) { return a = a - b; }
inline ScalarField& operator*=(ScalarField& a, const ScalarField& b) { return a = a * b; }

inline ScalarField sqrt(const ScalarField& a);

/// base^exponent for an exact rational exponent.
inline ScalarField pow(const ScalarField& base, const Rational& exponent) {
    if (exponent == 0) {
        return ScalarField(1);
    }
    if (exponent == 1) {
        return base;
    }
    if (auto c = base.constant_value()) {
        if (*c == 0 && exponent > 0) {
            return ScalarField(0);
        }
        if (*c == 1) {
            return ScalarField(1);
        }
        if (*c != 0) {
            const Integer q = denominator_of(exponent);
            if (q <= 64) {
                if (auto root = exact_root(*c, q.convert_to<unsigned>())) {
                    return ScalarField(rational_pow(*root, numerator_of(exponent).convert_to<long>()));
                }
            }
        }
    }
    if (const auto* inner = detail::as<expr::Power>(base)) {
        // (b^s)^r = b^(s r) holds when r is an integer and s has an odd
        // denominator, or whenever b^s already forces b >= 0 (even denominator).
        const bool inner_even_root = denominator_of(inner->exponent) % 2 == 0;
        if (is_integer(exponent) || inner_even_root) {
            return pow(inner->base, inner->exponent * exponent);
        }
    }
    if (const auto* root = detail::as<expr::SquareRoot>(base)) {
        return pow(root->arg, exponent / 2);
    }
    return detail::make_field(expr::Power{base, exponent, to_double(exponent)});
}

inline ScalarField pow(const ScalarField& base, int exponent) { return pow(base, Rational(exponent)); }

inline ScalarField sqrt(const ScalarField& a) {
    if (auto c = a.constant_value()) {
        if (*c >= 0) {
            if (auto root = exact_root(*c, 2)) {
                return ScalarField(*root);
            }
        }
    }
    return detail::make_field(expr::SquareRoot{a});
}

/// Potential of the closed one-form with components `form`, with value 0 at
/// the origin, evaluated by Gauss-Legendre quadrature along the segment [0, p].
inline ScalarField line_integral(std::array<ScalarField, 3> form) {
    return detail::make_field(expr::LineIntegral{std::move(form)});
}

// ---------------------------------------------------------------------------
// Emission

namespace detail {

enum Precedence : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

inline int precedence(const ScalarField& f) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                if (!is_integer(n.value)) {
                    return kProduct;
                }
                return n.value < 0 ? kUnary : kAtom;
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                return kUnary;
            } else if constexpr (std::is_same_v<T, expr::Sum> || std::is_same_v<T, expr::Difference>) {
                return kSum;
            } else if constexpr (std::is_same_v<T, expr::Product> || std::is_same_v<T, expr::Quotient>) {
                return kProduct;
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                return kPower;
            } else {
                return kAtom;
            }
        },
        f.node().data);
}

inline std::string emit_exponent(const Rational& r) {
    if (is_integer(r)) {
        return to_string(r);
    }
    return "(" + to_string(r) + ")";
}

inline std::string emit(const ScalarField& f, int min_precedence);

inline std::string wrap(const ScalarField& f, int min_precedence) {
    std::string body = emit(f, 0);
    if (precedence(f) < min_precedence) {
        return "(" + body + ")";
    }
    return body;
}

inline std::string emit(const ScalarField& f, int /*min_precedence*/) {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                return to_string(n.value);
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                return std::string(1, axis_name(n.axis));
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                return "-" + wrap(n.arg, kUnary);
            } else if constexpr (std::is_same_v<T, expr::Sum>) {
                return wrap(n.lhs, kSum) + "+" + wrap(n.rhs, kProduct);
            } else if constexpr (std::is_same_v<T, expr::Difference>) {
                return wrap(n.lhs, kSum) + "-" + wrap(n.rhs, kProduct);
            } else if constexpr (std::is_same_v<T, expr::Product>) {
                return wrap(n.lhs, kProduct) + "*" + wrap(n.rhs, kUnary);
            } else if constexpr (std::is_same_v<T, expr::Quotient>) {
                return wrap(n.lhs, kProduct) + "/" + wrap(n.rhs, kUnary);
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                return wrap(n.base, kAtom) + "^" + emit_exponent(n.exponent);
            } else if constexpr (std::is_same_v<T, expr::SquareRoot>) {
                return "sqrt(" + emit(n.arg, 0) + ")";
            } else {
                return "line_integral(" + emit(n.form[0], 0) + ", " + emit(n.form[1], 0) + ", " + emit(n.form[2], 0) +
                       ")";
            }
        },
        f.node().data);
}

} // namespace detail

/// Text in the expression grammar (line integrals excepted), parenthesized so
/// that re-parsing reproduces the same tree shape.
inline std::string emit(const ScalarField& f) { return detail::emit(f, 0); }

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline double checked(double v, const ScalarField& where) {
    if (!std::isfinite(v)) {
        throw DomainError("non-finite value", emit(where));
    }
    return v;
}

inline double rational_power(double base, const Rational& exponent, double approx_exponent, const ScalarField& where) {
    if (is_integer(exponent)) {
        if (base == 0.0 && exponent < 0) {
            throw DomainError("zero raised to a negative power", emit(where));
        }
        return checked(std::pow(base, approx_exponent), where);
    }
    if (base == 0.0) {
        if (exponent < 0) {
            throw DomainError("zero raised to a negative power", emit(where));
        }
        return 0.0;
    }
    if (base < 0.0) {
        if (denominator_of(exponent) % 2 == 0) {
            throw DomainError("even root of a negative value", emit(where));
        }
        const double mag = std::pow(-base, approx_exponent);
        const bool odd_numerator = numerator_of(exponent) % 2 != 0;
        return checked(odd_numerator ? -mag : mag, where);
    }
    return checked(std::pow(base, approx_exponent), where);
}

} // namespace detail

inline double evaluate(const ScalarField& f, const Point3& p);

namespace detail {

/// Integral over t in [0, 1] for a line integral along [0, p]. Domain errors
/// at quadrature nodes and integrals that fail to converge (a singularity
/// between nodes) are both reported against the line-integral node.
template <class Integrand> double segment_integral(Integrand&& integrand, const ScalarField& where) {
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(std::forward<Integrand>(integrand), 0.0,
                                                                              1.0, 12, 1e-13, &error, &l1);
    } catch (const std::exception& e) {
        throw DomainError(std::string("segment from the origin leaves the domain: ") + e.what(), emit(where));
    }
    if (!std::isfinite(value) || error > 1e-8 * std::max(1.0, l1)) {
        throw DomainError("line integral does not converge along the segment from the origin", emit(where));
    }
    return value;
}

} // namespace detail

inline double evaluate(const ScalarField& f, const Point3& p) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                return n.approx;
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                return p[n.axis];
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                return -evaluate(n.arg, p);
            } else if constexpr (std::is_same_v<T, expr::Sum>) {
                return evaluate(n.lhs, p) + evaluate(n.rhs, p);
            } else if constexpr (std::is_same_v<T, expr::Difference>) {
                return evaluate(n.lhs, p) - evaluate(n.rhs, p);
            } else if constexpr (std::is_same_v<T, expr::Product>) {
                return detail::checked(evaluate(n.lhs, p) * evaluate(n.rhs, p), f);
            } else if constexpr (std::is_same_v<T, expr::Quotient>) {
                const double den = evaluate(n.rhs, p);
                if (den == 0.0) {
                    throw DomainError("division by zero", emit(f));
                }
                return detail::checked(evaluate(n.lhs, p) / den, f);
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                return detail::rational_power(evaluate(n.base, p), n.exponent, n.approx_exponent, f);
            } else if constexpr (std::is_same_v<T, expr::SquareRoot>) {
                const double v = evaluate(n.arg, p);
                if (v < 0.0) {
                    throw DomainError("square root of a negative value", emit(f));
                }
                return std::sqrt(v);
            } else {
                return detail::segment_integral(
                    [&](double t) {
                        const Point3 q{t * p.x, t * p.y, t * p.z};
                        return evaluate(n.form[0], q) * p.x + evaluate(n.form[1], q) * p.y +
                               evaluate(n.form[2], q) * p.z;
                    },
                    f);
            }
        },
        f.node().data);
}

struct ValueScale {
    double value;
    /// Magnitude of the same tree with every sum replaced by a sum of
    /// absolute values; the size against which cancellation is judged.
    double scale;
};

inline ValueScale evaluate_with_scale(const ScalarField& f, const Point3& p) {
    return std::visit(
        [&](const auto& n) -> ValueScale {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                return {n.approx, std::abs(n.approx)};
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                return {p[n.axis], std::abs(p[n.axis])};
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                auto a = evaluate_with_scale(n.arg, p);
                return {-a.value, a.scale};
            } else if constexpr (std::is_same_v<T, expr::Sum> || std::is_same_v<T, expr::Difference>) {
                auto a = evaluate_with_scale(n.lhs, p);
                auto b = evaluate_with_scale(n.rhs, p);
                const double v = std::is_same_v<T, expr::Sum> ? a.value + b.value : a.value - b.value;
                return {v, a.scale + b.scale};
            } else if constexpr (std::is_same_v<T, expr::Product>) {
                auto a = evaluate_with_scale(n.lhs, p);
                auto b = evaluate_with_scale(n.rhs, p);
                return {detail::checked(a.value * b.value, f), a.scale * b.scale};
            } else if constexpr (std::is_same_v<T, expr::Quotient>) {
                auto a = evaluate_with_scale(n.lhs, p);
                auto b = evaluate_with_scale(n.rhs, p);
                if (b.value == 0.0) {
                    throw DomainError("division by zero", emit(f));
                }
                return {detail::checked(a.value / b.value, f), a.scale / std::abs(b.value)};
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                auto a = evaluate_with_scale(n.base, p);
                const double v = detail::rational_power(a.value, n.exponent, n.approx_exponent, f);
                const double s = n.exponent > 0 ? std::pow(a.scale, n.approx_exponent) : std::abs(v);
                return {v, s};
            } else if constexpr (std::is_same_v<T, expr::SquareRoot>) {
                auto a = evaluate_with_scale(n.arg, p);
                if (a.value < 0.0) {
                    throw DomainError("square root of a negative value", emit(f));
                }
                return {std::sqrt(a.value), std::sqrt(a.scale)};
            } else {
                const double value = evaluate(f, p);
                const double scale = detail::segment_integral(
                    [&](double t) {
                        const Point3 q{t * p.x, t * p.y, t * p.z};
                        double sum = 0.0;
                        for (Axis a : kAxes) {
                            sum += evaluate_with_scale(n.form[index_of(a)], q).scale * std::abs(p[a]);
                        }
                        return sum;
                    },
                    f);
                return {value, scale};
            }
        },
        f.node().data);
}

// ---------------------------------------------------------------------------
// Differentiation

namespace detail {

using DerivativeCache = std::unordered_map<const Node*, ScalarField>;

inline ScalarField partial(const ScalarField& f, Axis axis, DerivativeCache& cache) {
    if (!f.has_variables()) {
        return ScalarField(0);
    }
    if (auto it = cache.find(f.identity()); it != cache.end()) {
        return it->second;
    }
    ScalarField result = std::visit(
        [&](const auto& n) -> ScalarField {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, expr::Constant>) {
                return ScalarField(0);
            } else if constexpr (std::is_same_v<T, expr::Variable>) {
                return ScalarField(n.axis == axis ? 1 : 0);
            } else if constexpr (std::is_same_v<T, expr::Negate>) {
                return -partial(n.arg, axis, cache);
            } else if constexpr (std::is_same_v<T, expr::Sum>) {
                return partial(n.lhs, axis, cache) + partial(n.rhs, axis, cache);
            } else if constexpr (std::is_same_v<T, expr::Difference>) {
                return partial(n.lhs, axis, cache) - partial(n.rhs, axis, cache);
            } else if constexpr (std::is_same_v<T, expr::Product>) {
                return partial(n.lhs, axis, cache) * n.rhs + n.lhs * partial(n.rhs, axis, cache);
            } else if constexpr (std::is_same_v<T, expr::Quotient>) {
                const ScalarField dl = partial(n.lhs, axis, cache);
                const ScalarField dr = partial(n.rhs, axis, cache);
                if (dr.is_constant(0)) {
                    return dl / n.rhs;
                }
                return (dl * n.rhs - n.lhs * dr) / pow(n.rhs, 2);
            } else if constexpr (std::is_same_v<T, expr::Power>) {
                return ScalarField(n.exponent) * pow(n.base, n.exponent - 1) * partial(n.base, axis, cache);
            } else if constexpr (std::is_same_v<T, expr::SquareRoot>) {
                return partial(n.arg, axis, cache) / (ScalarField(2) * f);
            } else {
                return n.form[index_of(axis)];
            }
        },
        f.node().data);
    cache.emplace(f.identity(), result);
    return result;
}

} // namespace detail

/// Exact symbolic partial derivative.
inline ScalarField partial(const ScalarField& f, Axis axis) {
    detail::DerivativeCache cache;
    return detail::partial(f, axis, cache);
}

inline std::array<ScalarField, 3> gradient(const ScalarField& f) {
    return {partial(f, Axis::x), partial(f, Axis::y), partial(f, Axis::z)};
}

inline ScalarField laplacian(const ScalarField& f) {
    ScalarField sum;
    for (Axis a : kAxes) {
        sum += partial(partial(f, a), a);
    }
    return sum;
}

} // namespace pcompat
