#pragma once

// The contravariant Levi-Civita connection of a bivector and a constant
// contravariant metric, and the tensors derived from it.

#include <array>
#include <string>
#include <utility>

#include "pcompat/forms.hpp"

namespace pcompat {

/// D_alpha beta from the six-term Koszul identity
///
///   2<D_a b, c> = pi(a).<b,c> + pi(b).<a,c> - pi(c).<a,b>
///               + <[a,b]_pi, c> + <[c,a]_pi, b> + <[c,b]_pi, a>
///
/// tested against c = dx_k and solved for D_a b with the Gram matrix.
inline OneForm koszul_connection(const Bivector& pi, const OneForm& alpha, const OneForm& beta,
                                 const MetricGram& gram = MetricGram::identity()) {
    const VectorField pi_alpha = sharp(pi, alpha);
    const VectorField pi_beta = sharp(pi, beta);
    const OneForm bracket_ab = lie_bracket_pi(pi, alpha, beta);
    const ScalarField inner_ab = gram.inner(alpha, beta);
    const ScalarField half(Rational(1, 2));

    std::array<ScalarField, 3> rhs;
    for (int k = 0; k < 3; ++k) {
        const OneForm dk = OneForm::basis(k);
        ScalarField sum = directional(pi_alpha, gram.inner(beta, dk)) + directional(pi_beta, gram.inner(alpha, dk)) -
                          directional(sharp(pi, dk), inner_ab);
        sum += gram.inner(bracket_ab, dk);
        sum += gram.inner(lie_bracket_pi(pi, dk, alpha), beta);
        sum += gram.inner(lie_bracket_pi(pi, dk, beta), alpha);
        rhs[k] = half * sum;
    }
    return gram.solve(rhs);
}

/// Gamma_ij^k with D_{dx_i} dx_j = sum_k Gamma_ij^k dx_k (0-based indices).
class ChristoffelTable {
  public:
    using Storage = std::array<std::array<std::array<ScalarField, 3>, 3>, 3>;

    explicit ChristoffelTable(Storage g) : g_(std::move(g)) {}

    [[nodiscard]] const ScalarField& operator()(int i, int j, int k) const { return g_[i][j][k]; }

  private:
    Storage g_;
};

/// Order in which the (i, j) index pairs of the table are conventionally
/// listed: 11, 12, 21, 13, 31, 22, 23, 32, 33 (1-based).
inline constexpr std::array<std::pair<int, int>, 9> kChristoffelPairOrder{
    {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}};

inline ChristoffelTable christoffel_table(const Bivector& pi, const MetricGram& gram = MetricGram::identity()) {
    ChristoffelTable::Storage g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const OneForm d = koszul_connection(pi, OneForm::basis(i), OneForm::basis(j), gram);
            for (int k = 0; k < 3; ++k) {
                g[i][j][k] = d[k];
            }
        }
    }
    return ChristoffelTable(std::move(g));
}

/// Table for the bivector of the potential f.
inline ChristoffelTable christoffel_table(const ScalarField& f) {
    return christoffel_table(bivector_from_potential(f));
}

/// phi(h) = sum_i <D_{alpha_i} dh, alpha_i> for an orthonormal coframe
/// alpha_1..3 of the identity metric (coordinate coframe by default).
inline ScalarField modular_derivation(const Bivector& pi, const ScalarField& h,
                                      const std::array<OneForm, 3>& orthonormal_coframe = {
                                          OneForm::basis(0), OneForm::basis(1), OneForm::basis(2)}) {
    const MetricGram gram = MetricGram::identity();
    const OneForm dh = differential(h);
    ScalarField sum;
    for (const OneForm& alpha : orthonormal_coframe) {
        sum += gram.inner(koszul_connection(pi, alpha, dh, gram), alpha);
    }
    return sum;
}

/// The modular vector field: component j is phi(x_j).
inline VectorField modular_field(const Bivector& pi) {
    return {modular_derivation(pi, ScalarField::x()), modular_derivation(pi, ScalarField::y()),
            modular_derivation(pi, ScalarField::z())};
}

/// D_{dx_i} pi for i = 0, 1, 2, expanded by the Leibniz rule over the
/// coordinate bivectors, with D_{dx_i} d/dx_j = sum_k Gamma_ij^k d/dx_k under
/// the identity-metric identification dx_k <-> d/dx_k:
///
///   (D_i pi)_ab = pi(dx_i)(pi_ab) + sum_m Gamma_im^a pi_mb + sum_m Gamma_im^b pi_am
inline std::array<Bivector, 3> dpi_components(const Bivector& pi) {
    const ChristoffelTable gamma = christoffel_table(pi);
    std::array<Bivector, 3> out;
    constexpr std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (int i = 0; i < 3; ++i) {
        const VectorField anchor = sharp(pi, OneForm::basis(i));
        std::array<ScalarField, 3> comp;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto [a, b] = pairs[p];
            ScalarField sum = directional(anchor, pi.component(a, b));
            for (int m = 0; m < 3; ++m) {
                sum += gamma(i, m, a) * pi.component(m, b);
                sum += gamma(i, m, b) * pi.component(a, m);
            }
            comp[p] = sum;
        }
        out[i] = Bivector{comp[0], comp[1], comp[2]};
    }
    return out;
}

inline std::array<Bivector, 3> dpi_components(const ScalarField& f) {
    return dpi_components(bivector_from_potential(f));
}

/// D pi(alpha, beta, gamma) = pi(alpha).pi(beta, gamma) - pi(D_alpha beta, gamma)
///                            - pi(beta, D_alpha gamma).
inline ScalarField compatibility_tensor(const Bivector& pi, const OneForm& alpha, const OneForm& beta,
                                        const OneForm& gamma) {
    return directional(sharp(pi, alpha), pairing(pi, beta, gamma)) -
           pairing(pi, koszul_connection(pi, alpha, beta), gamma) -
           pairing(pi, beta, koszul_connection(pi, alpha, gamma));
}

/// Connection of the rescaled bivector g*pi in closed form:
///
///   D^{g pi}_a b = g D^pi_a b + 1/2 pi(a,b) dg - 1/2 <dg,b> J a - 1/2 <dg,a> J b
inline OneForm scaled_koszul(const ScalarField& g, const Bivector& pi, const OneForm& alpha, const OneForm& beta,
                             const MetricGram& gram = MetricGram::identity()) {
    const ScalarField half(Rational(1, 2));
    const OneForm dg = differential(g);
    return g * koszul_connection(pi, alpha, beta, gram) + (half * pairing(pi, alpha, beta)) * dg -
           (half * gram.inner(dg, beta)) * j_map(pi, alpha, gram) -
           (half * gram.inner(dg, alpha)) * j_map(pi, beta, gram);
}

} // namespace pcompat
