#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "braidqm/braid.hpp"
#include "braidqm/flow.hpp"

namespace braidqm {

/// Crossing order could not be resolved (simultaneous or tangential events).
struct CrossingAmbiguity : NumericalFault {
    using NumericalFault::NumericalFault;
};

/// n fixed base points on the horizontal diameter.
inline std::vector<Point> lattice_basepoints(int n) {
    std::vector<Point> z;
    for (int k = 0; k < n; ++k) z.push_back({-0.8 + 1.6 * (k + 0.5) / n, 0.0});
    return z;
}

/// Reads a braid word off a piecewise-linear motion of points in the plane,
/// projecting to the x-axis.
class BraidRecorder {
public:
    explicit BraidRecorder(const std::vector<Point>& start) : n_(static_cast<int>(start.size())), pos_(start.size()) {
        std::vector<int> ids(start.size());
        std::iota(ids.begin(), ids.end(), 0);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) { return start[static_cast<std::size_t>(a)].x < start[static_cast<std::size_t>(b)].x; });
        for (std::size_t r = 0; r < ids.size(); ++r) pos_[static_cast<std::size_t>(ids[r])] = static_cast<int>(r);
    }

    /// Straight motion from a to b.
    void segment(const std::vector<Point>& a, const std::vector<Point>& b) {
        events_.clear();
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
                const double d0 = a[ui].x - a[uj].x, d1 = b[ui].x - b[uj].x;
                if (d0 == 0.0) throw CrossingAmbiguity("two points share an x coordinate");
                if ((d0 < 0.0) == (d1 < 0.0) && d1 != 0.0) continue;
                if (d1 == 0.0) throw CrossingAmbiguity("two points share an x coordinate");
                const double s = d0 / (d0 - d1);
                const double yi = a[ui].y + s * (b[ui].y - a[ui].y), yj = a[uj].y + s * (b[uj].y - a[uj].y);
                if (std::abs(yi - yj) < 1e-12) throw CrossingAmbiguity("tangential crossing");
                events_.push_back({s, i, j, yi, yj});
            }
        std::sort(events_.begin(), events_.end(), [](const Event& x, const Event& y) { return x.s < y.s; });
        for (std::size_t k = 0; k < events_.size(); ++k) {
            const Event& e = events_[k];
            if (k + 1 < events_.size()) {
                const Event& f = events_[k + 1];
                const bool share = e.i == f.i || e.i == f.j || e.j == f.i || e.j == f.j;
                if (share && f.s - e.s < 1e-12) throw CrossingAmbiguity("simultaneous crossings");
            }
            int& pi = pos_[static_cast<std::size_t>(e.i)];
            int& pj = pos_[static_cast<std::size_t>(e.j)];
            if (std::abs(pi - pj) != 1) throw CrossingAmbiguity("crossing between non-adjacent strands");
            const bool i_left = pi < pj;
            const double y_left = i_left ? e.yi : e.yj, y_right = i_left ? e.yj : e.yi;
            const int gen = std::min(pi, pj) + 1;
            letters_.push_back(y_left < y_right ? gen : -gen);
            std::swap(pi, pj);
        }
    }

    BraidWord word() const { return BraidWord(std::max(1, n_), letters_); }

private:
    struct Event {
        double s;
        int i, j;
        double yi, yj;
    };

    int n_;
    std::vector<int> pos_;
    std::vector<int> letters_;
    std::vector<Event> events_;
};

struct LoopBraid {
    BraidWord word;
    std::vector<std::vector<double>> turns;  // L_ij: total angular variation of x_j - x_i, in turns
    double length_bound = 0.0;                // sum over i < j of 2 (L_ij + 4)
};

/// Braid of the loop z -> x (straight), the flow x -> h(x), h(x) -> z (straight).
inline LoopBraid gg_loop_braid(const TrajectoryBundle& traj, const std::vector<Point>& basepoints) {
    if (traj.frames.empty()) throw InvalidInput("empty trajectory");
    if (basepoints.size() != static_cast<std::size_t>(traj.n)) throw InvalidInput("basepoint count differs from point count");
    BraidRecorder rec(basepoints);
    rec.segment(basepoints, traj.frames.front());
    for (std::size_t k = 1; k < traj.frames.size(); ++k) rec.segment(traj.frames[k - 1], traj.frames[k]);
    rec.segment(traj.frames.back(), basepoints);

    LoopBraid out;
    out.word = rec.word();
    const auto n = static_cast<std::size_t>(traj.n);
    out.turns.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double total = 0.0;
            for (std::size_t k = 1; k < traj.frames.size(); ++k) {
                const auto& a = traj.frames[k - 1];
                const auto& b = traj.frames[k];
                const double t0 = std::atan2(a[j].y - a[i].y, a[j].x - a[i].x);
                const double t1 = std::atan2(b[j].y - b[i].y, b[j].x - b[i].x);
                total += std::abs(std::remainder(t1 - t0, 2.0 * std::numbers::pi));
            }
            out.turns[i][j] = out.turns[j][i] = total / (2.0 * std::numbers::pi);
            out.length_bound += 2.0 * (out.turns[i][j] + 4.0);
        }
    return out;
}

} // namespace braidqm
