#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "braidqm/reeb_extract.hpp"
#include "braidqm/reeb_tree.hpp"

namespace braidqm {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Autonomous Hamiltonian on the disc with its gradient.
struct Hamiltonian {
    std::function<double(Point)> value;
    std::function<Point(Point)> gradient;
};

inline Hamiltonian zero_hamiltonian() {
    return {[](Point) { return 0.0; }, [](Point) { return Point{}; }};
}

inline Hamiltonian radial_hamiltonian(const RadialProfile& h) {
    const Polynomial f = h.f, df = h.f.derivative();
    const double cut = h.cutoff;
    return {[f, cut](Point p) {
                const double s = p.x * p.x + p.y * p.y;
                return s < cut ? f(s) : 0.0;
            },
            [df, cut](Point p) {
                const double s = p.x * p.x + p.y * p.y;
                if (s >= cut) return Point{};
                const double d = 2.0 * df(s);
                return Point{d * p.x, d * p.y};
            }};
}

/// Bilinear interpolation of grid samples; zero outside the grid.
inline Hamiltonian grid_hamiltonian(const Grid& g) {
    auto locate = [g](Point p, int& i, int& j, double& u, double& v) {
        const double h = g.spacing();
        const double fx = (p.x + g.extent) / h, fy = (p.y + g.extent) / h;
        if (fx < 0.0 || fy < 0.0 || fx >= g.size - 1 || fy >= g.size - 1) return false;
        j = static_cast<int>(fx);
        i = static_cast<int>(fy);
        u = fx - j;
        v = fy - i;
        return true;
    };
    return {[g, locate](Point p) {
                int i, j;
                double u, v;
                if (!locate(p, i, j, u, v)) return 0.0;
                return (1 - u) * (1 - v) * g.at(i, j) + u * (1 - v) * g.at(i, j + 1) + (1 - u) * v * g.at(i + 1, j) +
                       u * v * g.at(i + 1, j + 1);
            },
            [g, locate](Point p) {
                int i, j;
                double u, v;
                if (!locate(p, i, j, u, v)) return Point{};
                const double h = g.spacing();
                const double dx = ((1 - v) * (g.at(i, j + 1) - g.at(i, j)) + v * (g.at(i + 1, j + 1) - g.at(i + 1, j))) / h;
                const double dy = ((1 - u) * (g.at(i + 1, j) - g.at(i, j)) + u * (g.at(i + 1, j + 1) - g.at(i, j + 1))) / h;
                return Point{dx, dy};
            }};
}

/// Time is measured in turns: the flow is dx/dt = -2 pi dH/dy,
/// dy/dt = 2 pi dH/dx, so on a radial level with action J a point makes
/// hbar'(J) counterclockwise turns per unit time.
inline constexpr double time_scale = 2.0 * std::numbers::pi;

inline const std::string& sign_convention() {
    static const std::string s =
        "dx/dt = -2pi dH/dy, dy/dt = 2pi dH/dx; a crossing is positive when the strand moving right passes "
        "below (smaller y); counterclockwise full twist = s1^2";
    return s;
}

inline Point velocity(const Hamiltonian& h, Point p) {
    const Point g = h.gradient(p);
    return {-time_scale * g.y, time_scale * g.x};
}

struct FlowSpec {
    Hamiltonian hamiltonian = zero_hamiltonian();
    double dt = 1e-3;
    long p = 1;  // flow for time p, i.e. the p-th power of the time-one map
};

/// Positions of n points at times 0, dt, ..., p.
struct TrajectoryBundle {
    int n = 0;
    double dt = 0.0;
    std::vector<std::vector<Point>> frames;  // frames[step][point]
};

inline void rk4_step(const Hamiltonian& h, std::vector<Point>& pts, double dt) {
    for (auto& x : pts) {
        const Point k1 = velocity(h, x);
        const Point k2 = velocity(h, {x.x + 0.5 * dt * k1.x, x.y + 0.5 * dt * k1.y});
        const Point k3 = velocity(h, {x.x + 0.5 * dt * k2.x, x.y + 0.5 * dt * k2.y});
        const Point k4 = velocity(h, {x.x + dt * k3.x, x.y + dt * k3.y});
        x.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        x.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    }
}

inline TrajectoryBundle integrate_flow(const FlowSpec& spec, const std::vector<Point>& start) {
    if (!(spec.dt > 0.0)) throw InvalidInput("flow step dt must be positive");
    if (spec.p < 1) throw InvalidInput("flow needs p >= 1");
    for (const auto& q : start)
        if (!(q.x * q.x + q.y * q.y < 1.0)) throw InvalidInput("flow start points must lie in the open unit disc");
    const auto steps = static_cast<long>(std::ceil(static_cast<double>(spec.p) / spec.dt - 1e-9));
    TrajectoryBundle b;
    b.n = static_cast<int>(start.size());
    b.dt = static_cast<double>(spec.p) / static_cast<double>(steps);
    b.frames.reserve(static_cast<std::size_t>(steps) + 1);
    std::vector<Point> pts = start;
    b.frames.push_back(pts);
    for (long s = 0; s < steps; ++s) {
        rk4_step(spec.hamiltonian, pts, b.dt);
        for (const auto& q : pts)
            if (!(q.x * q.x + q.y * q.y < 1.0)) {
                throw NumericalFault("flow: a point left the disc at t = " + std::to_string((s + 1) * b.dt));
            }
        b.frames.push_back(pts);
    }
    return b;
}

/// max over time and points of |H(x(t)) - H(x(0))|
inline double energy_drift(const TrajectoryBundle& b, const Hamiltonian& h) {
    double worst = 0.0;
    for (const auto& f : b.frames)
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(h.value(f[i]) - h.value(b.frames.front()[i])));
    return worst;
}

} // namespace braidqm
