#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "braidqm/error.hpp"
#include "braidqm/matrix.hpp"

namespace braidqm {

struct SignatureResult {
    int signature = 0;
    int nullity = 0;
    bool degenerate = false;  // a floating-point pivot fell below tolerance
};

namespace detail {

template <class Int>
int sign_of(const Int& v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

} // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline boost::multiprecision::cpp_int determinant_exact(const IntMatrix& input) {
    using Int = boost::multiprecision::cpp_int;
    if (input.rows() != input.cols()) throw InvalidInput("determinant_exact needs a square matrix");
    const std::size_t m = input.rows();
    std::vector<std::vector<Int>> a(m, std::vector<Int>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i][j] = input(i, j);
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t piv = k;
        while (piv < m && a[piv][k] == 0) ++piv;
        if (piv == m) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return m == 0 ? Int(1) : Int(sign * prev);
}

/// Exact signature of a symmetric integer matrix.
///
/// Fraction-free symmetric elimination: after k steps every remaining entry
/// is a bordered (k+1)-minor, the k-th pivot is the leading minor D_k and the
/// LDL^T diagonal is D_k / D_{k-1}. When every remaining diagonal entry is
/// zero, a unimodular congruence (row/col i += row/col j) produces the
/// nonzero diagonal 2 a_ij, which plays the role of a hyperbolic 2x2 block.
inline SignatureResult signature_symmetric(const IntMatrix& input) {
    using Int = boost::multiprecision::cpp_int;
    if (!input.is_symmetric()) throw InvalidInput("signature_symmetric needs a symmetric matrix");
    const std::size_t m = input.rows();
    std::vector<std::vector<Int>> a(m, std::vector<Int>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i][j] = input(i, j);

    SignatureResult res;
    Int prev = 1;
    std::size_t k = 0;
    for (; k < m; ++k) {
        std::size_t piv = m;
        for (std::size_t i = k; i < m; ++i) {
            if (a[i][i] == 0) continue;
            if (piv == m || abs(a[i][i]) < abs(a[piv][piv])) piv = i;
        }
        if (piv == m) {
            std::size_t pi = m, pj = m;
            for (std::size_t i = k; i < m && pi == m; ++i)
                for (std::size_t j = i + 1; j < m; ++j)
                    if (a[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == m) break;  // remaining block is zero
            for (std::size_t c = k; c < m; ++c) a[pi][c] += a[pj][c];
            for (std::size_t r = k; r < m; ++r) a[r][pi] += a[r][pj];
            piv = pi;
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            for (std::size_t r = 0; r < m; ++r) std::swap(a[r][piv], a[r][k]);
        }
        const Int p = a[k][k];
        res.signature += detail::sign_of(p) * detail::sign_of(prev);
        for (std::size_t r = k + 1; r < m; ++r) {
            const Int ark = a[r][k];
            for (std::size_t c = r; c < m; ++c) {
                Int v = p * a[r][c];
                v -= ark * a[k][c];
                v /= prev;  // exact
                a[r][c] = v;
                a[c][r] = v;
            }
        }
        prev = p;
    }
    res.nullity = static_cast<int>(m - k);
    return res;
}

using ComplexMatrix = Matrix<std::complex<double>>;

/// Signature of a Hermitian matrix by Bunch-Kaufman congruence
/// (1x1 and 2x2 pivots). Pivots below rel_tol * max|entry| count towards
/// the nullity and mark the result degenerate.
inline SignatureResult signature_hermitian(const ComplexMatrix& input, double rel_tol = 1e-9) {
    using C = std::complex<double>;
    const std::size_t m = input.rows();
    if (!input.is_square()) throw InvalidInput("signature_hermitian needs a square matrix");
    std::vector<std::vector<C>> a(m, std::vector<C>(m));
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            a[i][j] = input(i, j);
            scale = std::max(scale, std::abs(a[i][j]));
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(a[i][j] - std::conj(a[j][i])) > 1e-12 * std::max(1.0, scale))
                throw InvalidInput("signature_hermitian needs a Hermitian matrix");

    SignatureResult res;
    const double tol = rel_tol * std::max(scale, 1e-300);
    const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;

    auto swap_index = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        for (auto& row : a) std::swap(row[i], row[j]);
    };

    std::size_t k = 0;
    while (k < m) {
        double lambda = 0.0;
        std::size_t r = k;
        for (std::size_t i = k + 1; i < m; ++i)
            if (std::abs(a[i][k]) > lambda) {
                lambda = std::abs(a[i][k]);
                r = i;
            }
        const double akk = std::abs(a[k][k].real());
        if (std::max(akk, lambda) <= tol) {
            // column k is numerically zero
            res.nullity += 1;
            res.degenerate = true;
            ++k;
            continue;
        }

        int block = 1;
        if (akk < alpha * lambda) {
            double sigma = 0.0;
            for (std::size_t j = k; j < m; ++j)
                if (j != r) sigma = std::max(sigma, std::abs(a[r][j]));
            if (akk * sigma >= alpha * lambda * lambda) {
                block = 1;
            } else if (std::abs(a[r][r].real()) >= alpha * sigma) {
                swap_index(k, r);
                block = 1;
            } else {
                swap_index(k + 1, r);
                block = 2;
            }
        }

        if (block == 1) {
            const double d = a[k][k].real();
            if (std::abs(d) <= tol) {
                res.nullity += 1;
                res.degenerate = true;
            } else {
                res.signature += d > 0 ? 1 : -1;
                for (std::size_t i = k + 1; i < m; ++i) {
                    const C f = a[i][k] / d;
                    if (f == C{}) continue;
                    for (std::size_t j = k + 1; j < m; ++j) a[i][j] -= f * std::conj(a[j][k]);
                }
            }
            k += 1;
        } else {
            const double e11 = a[k][k].real();
            const double e22 = a[k + 1][k + 1].real();
            const C e12 = a[k][k + 1];
            const double det = e11 * e22 - std::norm(e12);
            if (std::abs(det) <= tol * tol) {
                res.nullity += 1;
                res.degenerate = true;
            }
            if (det < 0) {
                // one positive and one negative direction
            } else if (det > 0) {
                res.signature += e11 + e22 > 0 ? 2 : -2;
            }
            if (det != 0.0) {
                // E^{-1} = [[e22, -e12], [-conj(e12), e11]] / det
                for (std::size_t i = k + 2; i < m; ++i) {
                    const C ci1 = a[i][k];
                    const C ci2 = a[i][k + 1];
                    const C w1 = (ci1 * e22 - ci2 * std::conj(e12)) / det;
                    const C w2 = (-ci1 * e12 + ci2 * e11) / det;
                    for (std::size_t j = k + 2; j < m; ++j)
                        a[i][j] -= w1 * std::conj(a[j][k]) + w2 * std::conj(a[j][k + 1]);
                }
            }
            k += 2;
        }
    }
    return res;
}

} // namespace braidqm
