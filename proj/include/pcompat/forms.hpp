#pragma once

// One-forms, vector fields, bivectors and trivectors on R^3 with ScalarField
// coefficients, and the pointwise algebra that ties them to a Poisson tensor.

#include <array>
#include <stdexcept>
#include <utility>

#include "pcompat/scalar_field.hpp"

namespace pcompat {

namespace detail {

/// Three coefficients on a coordinate basis; Tag keeps one-forms and vector
/// fields apart.
template <class Tag> class Components3 {
  public:
    Components3() = default;
    Components3(ScalarField c0, ScalarField c1, ScalarField c2) : c_{std::move(c0), std::move(c1), std::move(c2)} {}
    explicit Components3(std::array<ScalarField, 3> c) : c_(std::move(c)) {}

    /// The i-th basis element (dx, dy, dz or d/dx, d/dy, d/dz).
    static Components3 basis(int i) {
        Components3 out;
        out.c_[i] = ScalarField(1);
        return out;
    }
    static Components3 basis(Axis a) { return basis(index_of(a)); }

    [[nodiscard]] const ScalarField& operator[](int i) const { return c_[i]; }
    [[nodiscard]] ScalarField& operator[](int i) { return c_[i]; }
    [[nodiscard]] const ScalarField& operator[](Axis a) const { return c_[index_of(a)]; }
    [[nodiscard]] const std::array<ScalarField, 3>& components() const& { return c_; }
    [[nodiscard]] std::array<ScalarField, 3> components() && { return std::move(c_); }

    friend Components3 operator+(const Components3& a, const Components3& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]};
    }
    friend Components3 operator-(const Components3& a, const Components3& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]};
    }
    friend Components3 operator-(const Components3& a) { return {-a.c_[0], -a.c_[1], -a.c_[2]}; }
    friend Components3 operator*(const ScalarField& s, const Components3& a) {
        return {s * a.c_[0], s * a.c_[1], s * a.c_[2]};
    }

  private:
    std::array<ScalarField, 3> c_{};
};

struct OneFormTag {};
struct VectorFieldTag {};

} // namespace detail

/// Coefficients on dx, dy, dz.
using OneForm = detail::Components3<detail::OneFormTag>;
/// Coefficients on d/dx, d/dy, d/dz.
using VectorField = detail::Components3<detail::VectorFieldTag>;

/// p12 dx^dy + p13 dx^dz + p23 dy^dz (as a contravariant tensor).
struct Bivector {
    ScalarField p12;
    ScalarField p13;
    ScalarField p23;

    /// pi(dx_i, dx_j) for 0-based coordinate indices, skew-symmetric.
    [[nodiscard]] ScalarField component(int i, int j) const {
        if (i == j) {
            return ScalarField(0);
        }
        if (i > j) {
            return -component(j, i);
        }
        if (i == 0) {
            return j == 1 ? p12 : p13;
        }
        return p23;
    }

    [[nodiscard]] std::array<ScalarField, 3> components() const { return {p12, p13, p23}; }

    friend Bivector operator*(const ScalarField& s, const Bivector& b) { return {s * b.p12, s * b.p13, s * b.p23}; }
    friend Bivector operator+(const Bivector& a, const Bivector& b) {
        return {a.p12 + b.p12, a.p13 + b.p13, a.p23 + b.p23};
    }
    friend Bivector operator-(const Bivector& a, const Bivector& b) {
        return {a.p12 - b.p12, a.p13 - b.p13, a.p23 - b.p23};
    }
};

/// Coefficient on dx^dy^dz.
struct Trivector {
    ScalarField c;
};

/// Constant inner products <dx_i, dx_j> of the coordinate coframe.
class MetricGram {
  public:
    using Matrix = std::array<std::array<Rational, 3>, 3>;

    static MetricGram identity() {
        Matrix m{};
        for (int i = 0; i < 3; ++i) {
            m[i][i] = 1;
        }
        return MetricGram(m);
    }

    explicit MetricGram(const Matrix& m) : g_(m) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (g_[i][j] != g_[j][i]) {
                    throw std::invalid_argument("Gram matrix must be symmetric");
                }
            }
        }
        const Rational det = determinant();
        if (det == 0) {
            throw std::invalid_argument("Gram matrix must be nonsingular");
        }
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                inv_[j][i] = cofactor(i, j) / det;
            }
        }
    }

    [[nodiscard]] const Rational& operator()(int i, int j) const { return g_[i][j]; }

    [[nodiscard]] bool is_identity() const { return g_ == identity().g_; }

    /// <alpha, beta>.
    [[nodiscard]] ScalarField inner(const OneForm& a, const OneForm& b) const {
        ScalarField sum;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                sum += a[i] * ScalarField(g_[i][j]) * b[j];
            }
        }
        return sum;
    }

    /// The one-form omega with <omega, dx_k> = values[k].
    [[nodiscard]] OneForm solve(const std::array<ScalarField, 3>& values) const {
        OneForm out;
        for (int j = 0; j < 3; ++j) {
            ScalarField sum;
            for (int k = 0; k < 3; ++k) {
                sum += ScalarField(inv_[j][k]) * values[k];
            }
            out[j] = sum;
        }
        return out;
    }

  private:
    [[nodiscard]] Rational determinant() const {
        return g_[0][0] * (g_[1][1] * g_[2][2] - g_[1][2] * g_[2][1]) -
               g_[0][1] * (g_[1][0] * g_[2][2] - g_[1][2] * g_[2][0]) +
               g_[0][2] * (g_[1][0] * g_[2][1] - g_[1][1] * g_[2][0]);
    }
    [[nodiscard]] Rational cofactor(int i, int j) const {
        const int r0 = i == 0 ? 1 : 0;
        const int r1 = i == 2 ? 1 : 2;
        const int c0 = j == 0 ? 1 : 0;
        const int c1 = j == 2 ? 1 : 2;
        const Rational minor = g_[r0][c0] * g_[r1][c1] - g_[r0][c1] * g_[r1][c0];
        return (i + j) % 2 == 0 ? minor : Rational(-minor);
    }

    Matrix g_{};
    Matrix inv_{};
};

// ---------------------------------------------------------------------------

/// d h.
inline OneForm differential(const ScalarField& h) { return OneForm(gradient(h)); }

/// alpha(X).
inline ScalarField contract(const OneForm& alpha, const VectorField& v) {
    return alpha[0] * v[0] + alpha[1] * v[1] + alpha[2] * v[2];
}

/// X(h).
inline ScalarField directional(const VectorField& v, const ScalarField& h) {
    ScalarField sum;
    for (Axis a : kAxes) {
        if (!v[a].is_constant(0)) {
            sum += v[a] * partial(h, a);
        }
    }
    return sum;
}

/// (L_X beta)_k = X^j d_j beta_k + beta_j d_k X^j.
inline OneForm lie_derivative(const VectorField& v, const OneForm& beta) {
    OneForm out;
    for (Axis k : kAxes) {
        ScalarField sum = directional(v, beta[k]);
        for (int j = 0; j < 3; ++j) {
            if (!beta[j].is_constant(0)) {
                sum += beta[j] * partial(v[j], k);
            }
        }
        out[index_of(k)] = sum;
    }
    return out;
}

/// The anchor pi(alpha), fixed by beta(pi(alpha)) = pi(alpha, beta).
inline VectorField sharp(const Bivector& pi, const OneForm& alpha) {
    VectorField out;
    for (int j = 0; j < 3; ++j) {
        ScalarField sum;
        for (int i = 0; i < 3; ++i) {
            if (i != j && !alpha[i].is_constant(0)) {
                sum += alpha[i] * pi.component(i, j);
            }
        }
        out[j] = sum;
    }
    return out;
}

/// pi(alpha, beta).
inline ScalarField pairing(const Bivector& pi, const OneForm& alpha, const OneForm& beta) {
    return contract(beta, sharp(pi, alpha));
}

/// J with pi(alpha, beta) = <J alpha, beta>.
inline OneForm j_map(const Bivector& pi, const OneForm& alpha, const MetricGram& gram = MetricGram::identity()) {
    std::array<ScalarField, 3> values;
    for (int k = 0; k < 3; ++k) {
        values[k] = pairing(pi, alpha, OneForm::basis(k));
    }
    return gram.solve(values);
}

/// [alpha, beta]_pi = L_{pi(alpha)} beta - L_{pi(beta)} alpha - d(pi(alpha, beta)).
/// On the coframe this reduces to [dx_i, dx_j]_pi = d(pi_ij).
inline OneForm lie_bracket_pi(const Bivector& pi, const OneForm& alpha, const OneForm& beta) {
    return lie_derivative(sharp(pi, alpha), beta) - lie_derivative(sharp(pi, beta), alpha) -
           differential(pairing(pi, alpha, beta));
}

/// pi_12 = f_z, pi_13 = -f_y, pi_23 = f_x: the bivector whose dual one-form
/// pi_23 dx - pi_13 dy + pi_12 dz is df.
inline Bivector bivector_from_potential(const ScalarField& f) {
    return {partial(f, Axis::z), -partial(f, Axis::y), partial(f, Axis::x)};
}

} // namespace pcompat
