#pragma once

// Shared generators and independent oracles for the test binaries.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcompat/pcompat.hpp"

namespace pcompat {

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }

} // namespace pcompat

namespace pcompat::testing {

inline ScalarField X() { return ScalarField::x(); }
inline ScalarField Y() { return ScalarField::y(); }
inline ScalarField Z() { return ScalarField::z(); }

/// Seeded generator of small random polynomials of bounded total degree with
/// integer coefficients in [-3, 3].
class PolynomialGenerator {
  public:
    explicit PolynomialGenerator(std::uint64_t seed) : engine_(seed) {}

    Polynomial next(int max_degree = 4, int max_terms = 6) {
        std::uniform_int_distribution<int> terms(1, max_terms);
        std::uniform_int_distribution<int> coef(-3, 3);
        std::uniform_int_distribution<int> deg(0, max_degree);
        Polynomial p;
        const int n = terms(engine_);
        for (int t = 0; t < n; ++t) {
            const int d = deg(engine_);
            std::uniform_int_distribution<int> split(0, d);
            const int a = split(engine_);
            std::uniform_int_distribution<int> split2(0, d - a);
            const int b = split2(engine_);
            int c = coef(engine_);
            if (c == 0) {
                c = 1;
            }
            p += Polynomial::monomial(RadicalNumber(Rational(c)), {a, b, d - a - b});
        }
        return p;
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

/// Seeded generator of random expression trees that stay finite and
/// differentiable on the default sample box: denominators and radicands are
/// kept away from zero by construction.
class ExpressionGenerator {
  public:
    explicit ExpressionGenerator(std::uint64_t seed) : engine_(seed) {}

    ScalarField next(int depth = 3) {
        std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
        switch (pick(engine_)) {
        case 0:
            return leaf_variable();
        case 1:
            return ScalarField(Rational(small_int(), 1 + (small_int() + 3) % 3));
        case 2:
            return next(depth - 1) + next(depth - 1);
        case 3:
            return next(depth - 1) - next(depth - 1);
        case 4:
            return next(depth - 1) * next(depth - 1);
        case 5: {
            const ScalarField d = next(depth - 1);
            return next(depth - 1) / (ScalarField(1) + d * d);
        }
        case 6: {
            std::uniform_int_distribution<int> e(2, 3);
            return pow(next(depth - 1), e(engine_));
        }
        default: {
            const ScalarField u = next(depth - 1);
            return sqrt(ScalarField(1) + u * u);
        }
        }
    }

  private:
    ScalarField leaf_variable() {
        std::uniform_int_distribution<int> a(0, 2);
        return ScalarField::variable(axis_at(a(engine_)));
    }
    int small_int() {
        std::uniform_int_distribution<int> v(-3, 3);
        return v(engine_);
    }

    std::mt19937_64 engine_;
};

/// Second partial of a polynomial, by the polynomial's own differentiation
/// (independent of the expression-tree derivative).
inline Polynomial d2(const Polynomial& f, Axis a, Axis b) { return f.partial(a).partial(b); }

/// The 27 Christoffel symbols of the curl-form bivector of f, transcribed
/// entry by entry from the closed-form table (1-based labels in comments).
inline std::array<std::array<std::array<Polynomial, 3>, 3>, 3> transcribed_christoffel(const Polynomial& f) {
    using enum Axis;
    const Polynomial fxx = d2(f, x, x), fyy = d2(f, y, y), fzz = d2(f, z, z);
    const Polynomial fxy = d2(f, x, y), fxz = d2(f, x, z), fyz = d2(f, y, z);
    const Polynomial half = Polynomial(RadicalNumber(Rational(1, 2)));
    const Polynomial zero;
    std::array<std::array<std::array<Polynomial, 3>, 3>, 3> g;
    g[0][0] = {zero, -fxz, fxy};                       // 11
    g[0][1] = {fxz, zero, half * (-fxx + fyy + fzz)};  // 12
    g[1][0] = {zero, -fyz, half * (-fxx + fyy - fzz)}; // 21
    g[0][2] = {-fxy, half * (fxx - fyy - fzz), zero};  // 13
    g[2][0] = {zero, half * (fxx + fyy - fzz), fyz};   // 31
    g[1][1] = {fyz, zero, -fxy};                       // 22
    g[1][2] = {half * (fxx - fyy + fzz), fxy, zero};   // 23
    g[2][1] = {half * (-fxx - fyy + fzz), zero, -fxz}; // 32
    g[2][2] = {-fyz, fxz, zero};                       // 33
    return g;
}

/// D_{dx}pi, D_{dy}pi, D_{dz}pi as (p12, p13, p23) coefficient triples,
/// transcribed from the three displayed closed forms. Components that the
/// displays omit are zero.
inline std::array<std::array<Polynomial, 3>, 3> transcribed_dpi(const Polynomial& f) {
    using enum Axis;
    const Polynomial fx = f.partial(x), fy = f.partial(y), fz = f.partial(z);
    const Polynomial fxx = d2(f, x, x), fyy = d2(f, y, y), fzz = d2(f, z, z);
    const Polynomial fxy = d2(f, x, y), fxz = d2(f, x, z), fyz = d2(f, y, z);
    const Polynomial half = Polynomial(RadicalNumber(Rational(1, 2)));
    const Polynomial zero;
    std::array<std::array<Polynomial, 3>, 3> d;
    // D_{dx} pi
    d[0][0] = fz * fyz + fx * fxy + half * fy * (-fxx + fyy - fzz);
    d[0][1] = fy * fyz + fx * fxz + half * fz * (-fxx - fyy + fzz);
    d[0][2] = zero;
    // D_{dy} pi
    d[1][0] = -fz * fxz - fy * fxy + half * fx * (-fxx + fyy + fzz);
    d[1][1] = zero;
    d[1][2] = fy * fyz + fx * fxz + half * fz * (-fxx - fyy + fzz);
    // D_{dz} pi
    d[2][0] = zero;
    d[2][1] = -fz * fxz - fy * fxy + half * fx * (-fxx + fyy + fzz);
    d[2][2] = -fz * fyz - fx * fxy + half * fy * (fxx - fyy + fzz);
    return d;
}

inline Polynomial expand(const ScalarField& f) {
    auto p = to_polynomial(f);
    if (!p) {
        throw std::logic_error("expected a polynomial field: " + emit(f));
    }
    return *p;
}

/// Twenty seeded random polynomial potentials of degree <= 4.
inline std::vector<Polynomial> random_potentials(std::uint64_t seed = 2024, int n = 20) {
    PolynomialGenerator gen(seed);
    std::vector<Polynomial> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(gen.next(4, 6));
    }
    return out;
}

/// The named potentials used across the suites.
inline std::vector<NamedField> named_suite() {
    std::vector<NamedField> out;
    for (int a = 0; a <= 2; ++a) {
        for (int b = 0; b <= 2; ++b) {
            for (int c = 0; c <= 2; ++c) {
                out.push_back({"family(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")",
                               quadratic_family(Rational(a), Rational(b), Rational(c))});
            }
        }
    }
    const ScalarField r2 = X() * X() + Y() * Y() + Z() * Z();
    out.push_back({"so3_potential", so3_potential()});
    out.push_back({"r^2/2", r2 / ScalarField(2)});
    out.push_back({"x^2", pow(X(), 2)});
    out.push_back({"xyz", X() * Y() * Z()});
    out.push_back({"x^3", pow(X(), 3)});
    return out;
}

inline double max_abs_at(const ScalarField& f, const std::vector<Point3>& points) {
    double m = 0.0;
    for (const Point3& p : points) {
        m = std::max(m, std::abs(evaluate(f, p)));
    }
    return m;
}

} // namespace pcompat::testing
