#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <boost/rational.hpp>

#include "braidqm/braid.hpp"
#include "braidqm/link_diagram.hpp"
#include "braidqm/signature.hpp"

namespace braidqm {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

/// Parses "p/q" or an integer.
inline Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const long long v = std::stoll(s, &used);
            if (used != s.size()) throw InvalidInput("bad rational '" + s + "'");
            return Rational(v);
        }
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        const long long p = std::stoll(num, &used);
        if (used != num.size()) throw InvalidInput("bad rational '" + s + "'");
        const long long q = std::stoll(den, &used);
        if (used != den.size() || q == 0) throw InvalidInput("bad rational '" + s + "'");
        return Rational(p, q);
    } catch (const std::logic_error&) {
        throw InvalidInput("bad rational '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// theta in (0, 1), omega = exp(2 pi i theta).
class Angle {
public:
    explicit Angle(Rational theta) : theta_(theta) {
        if (theta_ <= 0 || theta_ >= 1) throw InvalidInput("angle theta must lie in (0, 1)");
    }
    Angle(long long num, long long den) : Angle(Rational(num, den)) {}

    const Rational& theta() const { return theta_; }
    bool is_half() const { return theta_ == Rational(1, 2); }
    std::complex<double> omega() const {
        return std::polar(1.0, 2.0 * std::numbers::pi * to_double(theta_));
    }

private:
    Rational theta_;
};

/// Global orientation convention: raw Seifert-form signatures of positive
/// braids are negative (positive trefoil -> -2); multiplying by kappa makes
/// the homogenized omega-signatures of positive braids positive.
inline constexpr int kappa = -1;

/// Signature of the Hermitian form (1 - w) V + (1 - conj w) V^T. At
/// theta = 1/2 this is 2 (V + V^T) and the exact integer path is used.
inline SignatureResult omega_signature(const SeifertData& s, const Angle& theta,
                                       double pivot_tol = 1e-9) {
    if (theta.is_half()) return signature_symmetric(s.symmetrized());
    const std::complex<double> w = theta.omega();
    const std::complex<double> c1 = 1.0 - w, c2 = 1.0 - std::conj(w);
    const std::size_t m = s.dim();
    ComplexMatrix h(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            h(i, j) = c1 * static_cast<double>(s.matrix(i, j)) + c2 * static_cast<double>(s.matrix(j, i));
    return signature_hermitian(h, pivot_tol);
}

/// kappa * sign(closure of b).
inline int sign_link(const BraidWord& b) {
    return kappa * signature_symmetric(seifert_matrix(b).symmetrized()).signature;
}

/// kappa * sign_omega(closure of b); nullity and degeneracy pass through.
inline SignatureResult sign_omega_link(const BraidWord& b, const Angle& theta, double pivot_tol = 1e-9) {
    SignatureResult r = omega_signature(seifert_matrix(b), theta, pivot_tol);
    r.signature *= kappa;
    return r;
}

/// |det(V + V^T)| = |Delta(-1)|; a diagram with an unused column is split
/// and has determinant 0.
inline boost::multiprecision::cpp_int link_determinant(const BraidWord& b) {
    const SeifertData s = seifert_matrix(b);
    if (s.blocks.size() > 1) return 0;
    return abs(determinant_exact(s.symmetrized()));
}

template <class T>
struct Interval {
    T lo;
    T hi;
    bool contains(const T& v) const { return lo <= v && v <= hi; }
    T width() const { return hi - lo; }
};

namespace detail {

inline void require_knot(const BraidWord& b, const char* what) {
    const int c = cycle_count(b);
    if (c != 1) {
        throw InvalidInput(std::string(what) + ": closure has " + std::to_string(c) +
                           " components, a knot is required");
    }
}

inline void require_positive_knot(const BraidWord& b, const char* what) {
    if (!is_positive(b)) throw InvalidInput(std::string(what) + ": braid has a negative letter");
    require_knot(b, what);
}

} // namespace detail

/// Rasmussen s of a positive braid knot: w - o + 1 = lk - n + 1.
inline long s_positive(const BraidWord& b) {
    detail::require_positive_knot(b, "s_positive");
    return lk(b) - b.strands() + 1;
}

/// Ozsvath-Szabo tau of a positive braid knot: (lk - n + 1) / 2.
inline Rational tau_positive(const BraidWord& b) {
    detail::require_positive_knot(b, "tau_positive");
    return Rational(lk(b) - b.strands() + 1, 2);
}

/// 1 + w - o <= s <= -1 + w + o with o = n Seifert circles.
inline Interval<long> s_bounds(const BraidWord& b) {
    const long w = lk(b), n = b.strands();
    return {1 + w - n, -1 + w + n};
}

/// lk - n + 1 <= 2 tau <= lk + n - 1, returned as bounds on tau.
inline Interval<Rational> tau_bounds(const BraidWord& b) {
    detail::require_knot(b, "tau_bounds");
    const long w = lk(b), n = b.strands();
    return {Rational(w - n + 1, 2), Rational(w + n - 1, 2)};
}

} // namespace braidqm
