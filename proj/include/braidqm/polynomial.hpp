#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

// pchip.hpp calls isnan unqualified
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>

#include "braidqm/error.hpp"

namespace braidqm {

/// Real polynomial c0 + c1 x + c2 x^2 + ...
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    double operator()(double x) const {
        double v = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    Polynomial derivative() const {
        std::vector<double> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
        return Polynomial(std::move(d));
    }

    Polynomial antiderivative() const {
        std::vector<double> a(c_.size() + 1, 0.0);
        for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
        return Polynomial(std::move(a));
    }

    double integral(double lo, double hi) const {
        const Polynomial a = antiderivative();
        return a(hi) - a(lo);
    }

    /// p(s * x + t)
    Polynomial compose_affine(double s, double t) const {
        Polynomial out;
        const Polynomial lin({t, s});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * lin + Polynomial({*it});
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<double> r(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

    friend Polynomial operator*(double s, const Polynomial& a) { return Polynomial({s}) * a; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    std::vector<double> c_;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; exact for degree 2m - 1.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int m) {
        if (m < 1) throw InvalidInput("Gauss-Legendre rule needs at least one node");
        nodes.resize(static_cast<std::size_t>(m));
        weights.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < (m + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(m - 1 - i);
            nodes[a] = -x;
            nodes[b] = x;
            weights[a] = weights[b] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <class F>
    double integrate(F&& f, double lo, double hi) const {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        double s = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) s += weights[k] * f(mid + half * nodes[k]);
        return half * s;
    }
};

/// Node count making the rule exact for polynomials of the given degree.
inline int gauss_nodes_for_degree(int degree) { return std::max(1, degree / 2 + 1); }

/// A profile known by samples: monotone piecewise cubic (pchip) for four or
/// more points, piecewise linear below that.
class SampledProfile {
public:
    SampledProfile(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
        if (x_.size() != y_.size() || x_.size() < 2) throw InvalidInput("sampled profile needs at least two samples");
        for (std::size_t k = 0; k < x_.size(); ++k) {
            if (!std::isfinite(x_[k]) || !std::isfinite(y_[k])) throw InvalidInput("sampled profile has a non-finite value");
            if (k > 0 && !(x_[k] > x_[k - 1])) throw InvalidInput("sample abscissae must be strictly increasing");
        }
        if (x_.size() >= 4) {
            auto xs = x_;
            auto ys = y_;
            spline_ = std::make_shared<Pchip>(std::move(xs), std::move(ys));
        }
    }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }
    double front() const { return x_.front(); }
    double back() const { return x_.back(); }

    double operator()(double t) const {
        t = std::clamp(t, x_.front(), x_.back());
        if (spline_) return (*spline_)(t);
        const std::size_t k = segment(t);
        const double w = (t - x_[k]) / (x_[k + 1] - x_[k]);
        return (1.0 - w) * y_[k] + w * y_[k + 1];
    }

    double prime(double t) const {
        t = std::clamp(t, x_.front(), x_.back());
        if (spline_) return spline_->prime(t);
        const std::size_t k = segment(t);
        return (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]);
    }

    /// Polynomial degree of the interpolant on each knot interval.
    int piece_degree() const { return spline_ ? 3 : 1; }

private:
    using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

    std::size_t segment(double t) const {
        const auto it = std::upper_bound(x_.begin(), x_.end(), t);
        const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - x_.begin() - 1));
        return std::min(k, x_.size() - 2);
    }

    std::vector<double> x_;
    std::vector<double> y_;
    std::shared_ptr<Pchip> spline_;
};

/// A profile on an interval: a polynomial or a sampled table.
class Profile {
public:
    Profile() : rep_(Polynomial{}) {}
    Profile(Polynomial p) : rep_(p), dpoly_(p.derivative()) {}
    Profile(SampledProfile s) : rep_(std::move(s)) {}

    bool is_polynomial() const { return std::holds_alternative<Polynomial>(rep_); }
    const Polynomial& polynomial() const { return std::get<Polynomial>(rep_); }
    const SampledProfile& samples() const { return std::get<SampledProfile>(rep_); }

    double operator()(double t) const {
        return std::visit([t](const auto& r) { return r(t); }, rep_);
    }

    double prime(double t) const {
        if (is_polynomial()) return dpoly_(t);
        return samples().prime(t);
    }

    /// Breakpoints of [lo, hi] between which the profile is a single polynomial.
    std::vector<double> pieces(double lo, double hi) const {
        std::vector<double> cuts{lo};
        if (!is_polynomial())
            for (double k : samples().x())
                if (k > lo && k < hi) cuts.push_back(k);
        cuts.push_back(hi);
        return cuts;
    }

    int piece_degree() const { return is_polynomial() ? std::max(0, polynomial().degree()) : samples().piece_degree(); }

    /// Integral of f(t) * prime(t) over [lo, hi] where f is a polynomial of
    /// degree at most f_degree; exact up to rounding.
    template <class F>
    double integrate_against_prime(F&& f, int f_degree, double lo, double hi) const {
        const GaussLegendre rule(gauss_nodes_for_degree(f_degree + std::max(0, piece_degree() - 1)));
        const auto cuts = pieces(lo, hi);
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            s += rule.integrate([&](double t) { return f(t) * prime(t); }, cuts[k], cuts[k + 1]);
        return s;
    }

    double integral(double lo, double hi) const {
        if (is_polynomial()) return polynomial().integral(lo, hi);
        const GaussLegendre rule(gauss_nodes_for_degree(piece_degree()));
        const auto cuts = pieces(lo, hi);
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) s += rule.integrate(*this, cuts[k], cuts[k + 1]);
        return s;
    }

private:
    std::variant<Polynomial, SampledProfile> rep_;
    Polynomial dpoly_;
};

} // namespace braidqm
