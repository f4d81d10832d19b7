#pragma once

#include <string>
#include <vector>

#include "braidqm/invariants.hpp"
#include "braidqm/matrix.hpp"

namespace braidqm {

/// Homogenized classical signature on eta_{i,n}: i if i is even, i-1 if odd.
inline long eta_sign_tilde(int i) {
    if (i < 2) throw InvalidInput("eta_sign_tilde needs i >= 2");
    return i % 2 == 0 ? i : i - 1;
}

/// Affine piece value = offset + slope * theta on [lo, hi].
struct AffinePiece {
    Rational lo;
    Rational hi;
    Rational offset;
    Rational slope;

    Rational at(const Rational& theta) const { return offset + slope * theta; }
    bool contains(const Rational& theta) const { return lo <= theta && theta <= hi; }
};

/// The pieces of the homogenized omega-signature on eta_{i,n}, in
/// increasing theta order. The value does not depend on n.
inline std::vector<AffinePiece> eta_omega_pieces(int i) {
    if (i < 2) throw InvalidInput("eta_omega_tilde needs i >= 2");
    std::vector<AffinePiece> pieces;
    // 4(i-1) theta on [0, 1/i]
    pieces.push_back({Rational(0), Rational(1, i), Rational(0), Rational(4 * (i - 1))});
    for (int l = 2; l <= i - 1; ++l) {
        // 4(l-1)(1 - theta) on [(l-1)/i, (l-1)/(i-1)]
        pieces.push_back({Rational(l - 1, i), Rational(l - 1, i - 1), Rational(4 * (l - 1)),
                          Rational(-4 * (l - 1))});
        // 4(i-l) theta on [(l-1)/(i-1), l/i]
        pieces.push_back({Rational(l - 1, i - 1), Rational(l, i), Rational(0), Rational(4 * (i - l))});
    }
    // 4(i-1)(1 - theta) on [(i-1)/i, 1]
    pieces.push_back({Rational(i - 1, i), Rational(1), Rational(4 * (i - 1)), Rational(-4 * (i - 1))});
    return pieces;
}

inline Rational eta_omega_tilde(int i, const Rational& theta) {
    if (theta < 0 || theta > 1) throw InvalidInput("theta must lie in [0, 1]");
    for (const AffinePiece& p : eta_omega_pieces(i))
        if (p.contains(theta)) return p.at(theta);
    throw InvalidInput("theta not covered");  // unreachable for i >= 2
}

/// Homogenized omega-signature of the full twist K(n,n) = Delta_n^2:
/// 2n(n-2l+1) theta + 2l(l-1) for (l-1)/n <= theta <= l/n.
inline Rational torus_omega_tilde(int n, const Rational& theta) {
    if (n < 1) throw InvalidInput("torus_omega_tilde needs n >= 1");
    if (theta < 0 || theta > 1) throw InvalidInput("theta must lie in [0, 1]");
    int l = 1;
    while (l < n && theta > Rational(l, n)) ++l;
    return Rational(2 * n * (n - 2 * l + 1)) * theta + Rational(2 * l * (l - 1));
}

/// Homogenized omega-signature of one cycle sigma_1 ... sigma_{n-1}:
/// 2(n-2l+1) theta + 2l(l-1)/n.
inline Rational cycle_omega_tilde(int n, const Rational& theta) {
    return torus_omega_tilde(n, theta) / Rational(n);
}

/// Evaluation matrix of the omega-signature family on the commuting pure
/// braids. Row r is eta_{r+2,n}; column 0 is sign~_{w(1/2)}, column k >= 1
/// is (k+1) sign~_{w(1/(k+1))} - (k+2) sign~_{w(1/(k+2))}. The matrix is
/// lower triangular with diagonal (2, -4, -4, ...).
inline Matrix<Rational> basis_matrix(int n) {
    if (n < 2) throw InvalidInput("basis_matrix needs n >= 2");
    const auto dim = static_cast<std::size_t>(n - 1);
    Matrix<Rational> m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const int i = static_cast<int>(r) + 2;
        m(r, 0) = eta_omega_tilde(i, Rational(1, 2));
        for (std::size_t c = 1; c < dim; ++c) {
            const int k = static_cast<int>(c) + 1;
            m(r, c) = Rational(k) * eta_omega_tilde(i, Rational(1, k)) -
                      Rational(k + 1) * eta_omega_tilde(i, Rational(1, k + 1));
        }
    }
    return m;
}

/// Human-readable name of basis column c.
inline std::string basis_element_name(std::size_t c) {
    if (c == 0) return "sign~_w(1/2)";
    const std::size_t k = c + 1;
    return std::to_string(k) + " sign~_w(1/" + std::to_string(k) + ") - " + std::to_string(k + 1) +
           " sign~_w(1/" + std::to_string(k + 1) + ")";
}

} // namespace braidqm
