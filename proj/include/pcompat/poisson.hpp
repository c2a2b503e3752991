#pragma once

// Poisson-specific objects on R^3 with the canonical metric: the divergence
// conditions, the PDE on potentials, the Jacobi obstruction, Casimir check,
// potential reconstruction and the two known solution families.

#include <array>
#include <stdexcept>
#include <string>

#include "pcompat/connection.hpp"
#include "pcompat/forms.hpp"
#include "pcompat/polynomial.hpp"
#include "pcompat/sampling.hpp"
#include "pcompat/zero_test.hpp"

namespace pcompat {

/// The three conditions equivalent to a vanishing modular field:
/// (d_y p12 + d_z p13, d_x p12 - d_z p23, d_x p13 + d_y p23).
inline std::array<ScalarField, 3> divergence_residuals(const Bivector& pi) {
    return {partial(pi.p12, Axis::y) + partial(pi.p13, Axis::z), partial(pi.p12, Axis::x) - partial(pi.p23, Axis::z),
            partial(pi.p13, Axis::x) + partial(pi.p23, Axis::y)};
}

/// d(<df, df>) - (Laplacian f) df.
inline OneForm equation_e_residual(const ScalarField& f) {
    const auto grad = gradient(f);
    const ScalarField norm_sq = grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2];
    const ScalarField lap = laplacian(f);
    OneForm out;
    for (Axis a : kAxes) {
        out[index_of(a)] = partial(norm_sq, a) - lap * grad[index_of(a)];
    }
    return out;
}

/// Coefficient of [pi, pi] up to a fixed normalization: with
/// (a, b, c) = (p12, p13, p23),
///   a c_y + b c_z + a b_x - c b_z - b a_x - c a_y,
/// which is minus w . curl w for w = (p23, -p13, p12). Zero iff pi is Poisson.
inline Trivector jacobiator(const Bivector& pi) {
    const ScalarField& a = pi.p12;
    const ScalarField& b = pi.p13;
    const ScalarField& c = pi.p23;
    return {a * partial(c, Axis::y) + b * partial(c, Axis::z) + a * partial(b, Axis::x) - c * partial(b, Axis::z) -
            b * partial(a, Axis::x) - c * partial(a, Axis::y)};
}

/// pi(df) for pi = bivector_from_potential(f); vanishes iff f is a Casimir.
inline VectorField casimir_field(const ScalarField& f) { return sharp(bivector_from_potential(f), differential(f)); }

class NotClosedError : public std::runtime_error {
  public:
    explicit NotClosedError(std::array<ScalarField, 3> residuals)
        : std::runtime_error("bivector is not of curl form: divergence residuals do not vanish"),
          residuals_(std::move(residuals)) {}

    [[nodiscard]] const std::array<ScalarField, 3>& residuals() const noexcept { return residuals_; }

  private:
    std::array<ScalarField, 3> residuals_;
};

/// f with f(0) = 0 and df = p23 dx - p13 dy + p12 dz. Polynomial input is
/// integrated term by term; anything else becomes a line-integral field
/// evaluated by quadrature along [0, p]. Closedness is checked first (exactly
/// for polynomials, on the spec's samples otherwise).
inline ScalarField potential_from_bivector(const Bivector& pi, const SampleSpec& spec = SampleSpec{}) {
    auto residuals = divergence_residuals(pi);
    for (const ScalarField& r : residuals) {
        if (!is_identically_zero(r, spec)) {
            throw NotClosedError(residuals);
        }
    }
    const std::array<ScalarField, 3> form{pi.p23, -pi.p13, pi.p12};
    auto wx = to_polynomial(form[0]);
    auto wy = to_polynomial(form[1]);
    auto wz = to_polynomial(form[2]);
    if (wx && wy && wz) {
        Polynomial f = wx->integrate(Axis::x);
        f += (*wy - f.partial(Axis::y)).integrate(Axis::y);
        f += (*wz - f.partial(Axis::z)).integrate(Axis::z);
        return to_field(f);
    }
    return line_integral(form);
}

class ConstraintError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// (a+c)x^2 + (a+b)y^2 + (b+c)z^2 - 2 sqrt(bc) xy + 2 sqrt(ab) xz + 2 sqrt(ac) yz.
/// The square roots stay exact (sqrt nodes over rationals).
/// Requires ab, ac, bc >= 0.
inline ScalarField quadratic_family(const Rational& a, const Rational& b, const Rational& c) {
    if (a * b < 0 || a * c < 0 || b * c < 0) {
        throw ConstraintError("quadratic family needs ab, ac, bc >= 0 (got a=" + to_string(a) + ", b=" + to_string(b) +
                              ", c=" + to_string(c) + ")");
    }
    const ScalarField x = ScalarField::x();
    const ScalarField y = ScalarField::y();
    const ScalarField z = ScalarField::z();
    const ScalarField two(2);
    auto root = [](const Rational& v) { return sqrt(ScalarField(v)); };
    return ScalarField(Rational(a + c)) * pow(x, 2) + ScalarField(Rational(a + b)) * pow(y, 2) +
           ScalarField(Rational(b + c)) * pow(z, 2) - two * root(b * c) * x * y + two * root(a * b) * x * z +
           two * root(a * c) * y * z;
}

inline ScalarField quadratic_family(double a, double b, double c) {
    return quadratic_family(rational_from_double(a), rational_from_double(b), rational_from_double(c));
}

/// (x^2 + y^2 + z^2)^(3/2); its bivector is sqrt(x^2+y^2+z^2) times 3 pi_so(3).
inline ScalarField so3_potential() {
    const ScalarField x = ScalarField::x();
    const ScalarField y = ScalarField::y();
    const ScalarField z = ScalarField::z();
    return pow(pow(x, 2) + pow(y, 2) + pow(z, 2), Rational(3, 2));
}

/// The linear Poisson structure of so(3): z dx^dy - y dx^dz + x dy^dz.
inline Bivector so3_bivector() { return {ScalarField::z(), -ScalarField::y(), ScalarField::x()}; }

} // namespace pcompat
