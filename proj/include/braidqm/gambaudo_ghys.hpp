#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "braidqm/formulas.hpp"
#include "braidqm/reeb_tree.hpp"

namespace braidqm {

/// Values of a homogenized quasi-morphism on eta_{i,n}, i = 2..n.
struct MeasureSpec {
    int n = 2;
    std::vector<double> eta_values;

    MeasureSpec(int n_, std::vector<double> values) : n(n_), eta_values(std::move(values)) {
        if (n < 2) throw InvalidInput("measure needs n >= 2");
        if (eta_values.size() != static_cast<std::size_t>(n - 1)) {
            throw InvalidInput("measure needs n - 1 eta values, got " + std::to_string(eta_values.size()));
        }
    }
};

inline MeasureSpec sign_measure(int n) {
    std::vector<double> v;
    for (int i = 2; i <= n; ++i) v.push_back(static_cast<double>(eta_sign_tilde(i)));
    return {n, v};
}

inline MeasureSpec omega_measure(int n, const Rational& theta) {
    std::vector<double> v;
    for (int i = 2; i <= n; ++i) v.push_back(to_double(eta_omega_tilde(i, theta)));
    return {n, v};
}

/// lk(eta_{i,n}) = 2(i-1); also the homogenized Rasmussen invariant.
inline MeasureSpec lk_measure(int n) {
    std::vector<double> v;
    for (int i = 2; i <= n; ++i) v.push_back(2.0 * (i - 1));
    return {n, v};
}

/// Homogenized tau is lk / 2.
inline MeasureSpec tau_measure(int n) {
    std::vector<double> v;
    for (int i = 2; i <= n; ++i) v.push_back(static_cast<double>(i - 1));
    return {n, v};
}

/// (2 pi)^n sum_i phi~(eta_{i,n}) i C(n,i) J^{i-1} (1/2 - J)^{n-i}
inline double measure_density(const MeasureSpec& m, double J) {
    if (!(J >= -1e-15 && J <= 0.5 + 1e-15)) throw InvalidInput("measure density needs 0 <= J <= 1/2");
    const double u = 0.5 - J;
    double s = 0.0;
    for (int i = 2; i <= m.n; ++i) {
        const double c = boost::math::binomial_coefficient<double>(static_cast<unsigned>(m.n), static_cast<unsigned>(i));
        s += m.eta_values[static_cast<std::size_t>(i - 2)] * i * c * std::pow(J, i - 1) * std::pow(u, m.n - i);
    }
    return std::pow(2.0 * std::numbers::pi, m.n) * s;
}

/// sum over edges of the integral of hbar'(J) * density(J) dJ.
inline double gg_integral(const ReebTree& t, const MeasureSpec& m) {
    double s = 0.0;
    for (const auto& e : t.edges)
        s += e.hbar.integrate_against_prime([&](double J) { return measure_density(m, J); }, m.n - 1, e.lo, e.hi);
    return s;
}

/// -4 pi sum over edges of the integral of hbar dJ.
inline double calabi(const ReebTree& t) {
    double s = 0.0;
    for (const auto& e : t.edges) s += e.hbar.integral(e.lo, e.hi);
    return -4.0 * std::numbers::pi * s;
}

namespace detail {

// sum over edges of the integral of (1 + 4(n-1)J - (1-4J)^{n-1}) hbar'(J) dJ
inline double signature_kernel_integral(const ReebTree& t, int n) {
    if (n < 2) throw InvalidInput("signature formula needs n >= 2");
    double s = 0.0;
    for (const auto& e : t.edges)
        s += e.hbar.integrate_against_prime(
            [n](double J) { return 1.0 + 4.0 * (n - 1) * J - std::pow(1.0 - 4.0 * J, n - 1); }, n - 1, e.lo, e.hi);
    return s;
}

} // namespace detail

/// n pi^n times the signature kernel integral.
inline double sign_gg_closed(const ReebTree& t, int n) {
    return n * std::pow(std::numbers::pi, n) * detail::signature_kernel_integral(t, n);
}

/// sign_gg_closed / (pi^{n-1} n (n-1)), computed without the large prefactor.
inline double asym_ratio(const ReebTree& t, int n) {
    return std::numbers::pi / (n - 1) * detail::signature_kernel_integral(t, n);
}

/// sum over edges of the integral of |hbar'| dJ.
inline double total_variation(const ReebTree& t) {
    using boost::math::quadrature::gauss_kronrod;
    double s = 0.0;
    for (const auto& e : t.edges) {
        const auto cuts = e.hbar.pieces(e.lo, e.hi);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            s += gauss_kronrod<double, 31>::integrate([&](double J) { return std::abs(e.hbar.prime(J)); }, cuts[k],
                                                      cuts[k + 1], 15, 1e-12);
    }
    return s;
}

/// Bound on |asym_ratio(n) - calabi|: 2 pi (integral of |hbar'|) / (n - 1).
inline double asym_bound(const ReebTree& t, int n) {
    if (n < 2) throw InvalidInput("asymptotic bound needs n >= 2");
    return 2.0 * std::numbers::pi * total_variation(t) / (n - 1);
}

/// Both sides of the area identity for a radial Hamiltonian and its tree:
/// (integral of H over the disc, 2 pi sum of integrals of hbar dJ).
inline std::pair<double, double> disc_consistency(const RadialProfile& h, const ReebTree& t, double tol = 1e-9) {
    double scale = 0.0;
    for (int k = 0; k <= 64; ++k) scale = std::max(scale, std::abs(h.value(h.cutoff * k / 64.0)));
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& e = t.edges[k];
        for (double w : {0.25, 0.5, 0.75}) {
            const double J = e.lo + w * (e.hi - e.lo);
            if (std::abs(e.hbar(J) - h.value(2.0 * J)) > tol * (1.0 + scale)) {
                throw InvalidInput("radial profile does not match edge " + std::to_string(k));
            }
        }
    }
    const double lhs = std::numbers::pi * h.f.integral(0.0, h.cutoff);
    double rhs = 0.0;
    for (const auto& e : t.edges) rhs += e.hbar.integral(e.lo, e.hi);
    return {lhs, 2.0 * std::numbers::pi * rhs};
}

} // namespace braidqm
