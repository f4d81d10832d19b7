#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "braidqm/reeb_tree.hpp"

namespace braidqm {

/// Samples of H on an N x N grid covering [-extent, extent]^2. Row i holds
/// y = -extent + i h, column j holds x = -extent + j h, h = 2 extent / (N-1).
struct Grid {
    int size = 0;
    double extent = 1.0;
    std::vector<double> values;

    double spacing() const { return 2.0 * extent / (size - 1); }
    double x(int j) const { return -extent + j * spacing(); }
    double y(int i) const { return -extent + i * spacing(); }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) + static_cast<std::size_t>(j)]; }

    static Grid sample(const std::function<double(double, double)>& h, int size, double extent) {
        if (size < 3) throw InvalidInput("grid needs at least 3 samples per side");
        Grid g{size, extent, {}};
        g.values.reserve(static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) g.values.push_back(h(g.x(j), g.y(i)));
        return g;
    }
};

/// Grid file: a header line "N extent" followed by N rows of N reals.
inline Grid parse_grid(std::istream& in) {
    Grid g;
    if (!(in >> g.size >> g.extent)) throw InvalidInput("grid file: missing header \"N extent\"");
    if (g.size < 3) throw InvalidInput("grid file: N must be at least 3");
    if (!(g.extent > 0.0)) throw InvalidInput("grid file: extent must be positive");
    const auto count = static_cast<std::size_t>(g.size) * static_cast<std::size_t>(g.size);
    g.values.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        if (!(in >> g.values[k])) {
            throw InvalidInput("grid file: expected " + std::to_string(count) + " values, read " + std::to_string(k));
        }
        if (!std::isfinite(g.values[k])) throw InvalidInput("grid file: non-finite value");
    }
    std::string extra;
    if (in >> extra) throw InvalidInput("grid file: trailing data after " + std::to_string(count) + " values");
    return g;
}

inline Grid load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    return parse_grid(in);
}

struct ReebExtractOptions {
    double zero_tol = 0.0;             // |H| <= zero_tol counts as zero
    std::size_t max_interior_zero = 4; // larger interior zero plateaus are rejected
};

namespace detail {

// Neighbours in the triangulation of the grid by the diagonals (i,j)-(i+1,j+1).
inline constexpr std::array<std::array<int, 2>, 6> grid_neighbours{
    {{{1, 0}}, {{-1, 0}}, {{0, 1}}, {{0, -1}}, {{1, 1}}, {{-1, -1}}}};

// Contour tree of a piecewise-linear function on a simply connected complex
// given by adjacency lists; vertices are compared by (value, index).
inline std::vector<std::pair<int, int>> contour_tree(const std::vector<double>& value,
                                                     const std::vector<std::vector<int>>& adj) {
    const int m = static_cast<int>(value.size());
    auto below = [&](int a, int b) { return value[static_cast<std::size_t>(a)] < value[static_cast<std::size_t>(b)] ||
                                            (value[static_cast<std::size_t>(a)] == value[static_cast<std::size_t>(b)] && a < b); };
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), below);
    std::vector<int> rank(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

    std::vector<int> uf(static_cast<std::size_t>(m)), extreme(static_cast<std::size_t>(m));
    auto find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) {
            uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
            x = uf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    // sweep: arcs from each component's extreme vertex to v
    auto sweep = [&](bool descending, std::vector<std::vector<int>>& toward, std::vector<int>& away) {
        toward.assign(static_cast<std::size_t>(m), {});
        away.assign(static_cast<std::size_t>(m), -1);
        std::iota(uf.begin(), uf.end(), 0);
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        for (int k = 0; k < m; ++k) {
            const int v = order[static_cast<std::size_t>(descending ? m - 1 - k : k)];
            extreme[static_cast<std::size_t>(v)] = v;
            seen[static_cast<std::size_t>(v)] = true;
            for (int u : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(u)]) continue;
                const int cu = find(u), cv = find(v);
                if (cu == cv) continue;
                const int e = extreme[static_cast<std::size_t>(cu)];
                toward[static_cast<std::size_t>(v)].push_back(e);
                away[static_cast<std::size_t>(e)] = v;
                uf[static_cast<std::size_t>(cu)] = cv;
                extreme[static_cast<std::size_t>(cv)] = v;
            }
        }
    };
    // join tree: up-neighbours and the single down-neighbour
    std::vector<std::vector<int>> jt_up, st_down;
    std::vector<int> jt_down, st_up;
    sweep(true, jt_up, jt_down);
    sweep(false, st_down, st_up);

    auto erase = [](std::vector<int>& v, int x) { v.erase(std::find(v.begin(), v.end(), x)); };
    auto replace = [](std::vector<int>& v, int from, int to) { *std::find(v.begin(), v.end(), from) = to; };
    auto is_leaf = [&](int v) { return jt_up[static_cast<std::size_t>(v)].size() + st_down[static_cast<std::size_t>(v)].size() == 1; };

    std::vector<std::pair<int, int>> arcs;
    std::vector<bool> removed(static_cast<std::size_t>(m), false);
    std::deque<int> queue;
    for (int v = 0; v < m; ++v)
        if (is_leaf(v)) queue.push_back(v);
    int remaining = m;
    while (remaining > 1 && !queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        const auto uv = static_cast<std::size_t>(v);
        if (removed[uv] || !is_leaf(v)) continue;
        int w;
        if (jt_up[uv].empty()) {
            w = jt_down[uv];
            erase(jt_up[static_cast<std::size_t>(w)], v);
            const int d = st_down[uv][0], u = st_up[uv];
            st_up[static_cast<std::size_t>(d)] = u;
            if (u >= 0) replace(st_down[static_cast<std::size_t>(u)], v, d);
        } else {
            w = st_up[uv];
            erase(st_down[static_cast<std::size_t>(w)], v);
            const int u = jt_up[uv][0], d = jt_down[uv];
            jt_down[static_cast<std::size_t>(u)] = d;
            if (d >= 0) replace(jt_up[static_cast<std::size_t>(d)], v, u);
        }
        arcs.emplace_back(v, w);
        removed[uv] = true;
        --remaining;
        if (is_leaf(w)) queue.push_back(w);
    }
    if (remaining != 1) throw NumericalFault("contour tree merge did not terminate; the complex is not simply connected");
    return arcs;
}

} // namespace detail

/// Reeb tree of a grid Hamiltonian. The zero region reachable from the grid
/// boundary becomes the root; ties are broken by vertex index. Edges carry
/// sampled hbar profiles with J = (vertices strictly enclosed) * h^2 / 2 pi.
inline ReebTree reeb_from_grid(const Grid& g, const ReebExtractOptions& opt = {}) {
    const int n = g.size;
    if (n < 3 || g.values.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw InvalidInput("grid dimensions do not match its values");
    }
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j); };
    auto is_zero = [&](int i, int j) { return std::abs(g.at(i, j)) <= opt.zero_tol; };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (is_zero(i, j)) continue;
            if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
                throw InvalidInput("grid: H must vanish on the grid boundary");
            }
            if (std::hypot(g.x(j), g.y(i)) >= 1.0) {
                throw InvalidInput("grid: H must be supported inside the unit disc");
            }
        }

    // zero region connected to the boundary
    std::vector<char> outer(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::deque<std::pair<int, int>> bfs;
    for (int k = 0; k < n; ++k)
        for (auto [i, j] : {std::pair{0, k}, std::pair{n - 1, k}, std::pair{k, 0}, std::pair{k, n - 1}})
            if (!outer[idx(i, j)]) {
                outer[idx(i, j)] = 1;
                bfs.emplace_back(i, j);
            }
    while (!bfs.empty()) {
        const auto [i, j] = bfs.front();
        bfs.pop_front();
        for (const auto& d : detail::grid_neighbours) {
            const int a = i + d[0], b = j + d[1];
            if (a < 0 || b < 0 || a >= n || b >= n || outer[idx(a, b)] || !is_zero(a, b)) continue;
            outer[idx(a, b)] = 1;
            bfs.emplace_back(a, b);
        }
    }

    // interior zero plateaus
    {
        std::vector<char> seen(outer);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (seen[idx(i, j)] || !is_zero(i, j)) continue;
                std::size_t count = 0;
                seen[idx(i, j)] = 1;
                bfs.emplace_back(i, j);
                while (!bfs.empty()) {
                    const auto [a, b] = bfs.front();
                    bfs.pop_front();
                    ++count;
                    for (const auto& d : detail::grid_neighbours) {
                        const int c = a + d[0], e = b + d[1];
                        if (seen[idx(c, e)] || !is_zero(c, e)) continue;
                        seen[idx(c, e)] = 1;
                        bfs.emplace_back(c, e);
                    }
                }
                if (count > opt.max_interior_zero) {
                    throw InvalidInput("grid: interior plateau of " + std::to_string(count) +
                                       " zero samples; H is too degenerate for the perturbation");
                }
            }
    }

    // node 0 is the root; nodes 1.. are the remaining samples
    std::vector<int> node(outer.size(), 0);
    std::vector<double> value{0.0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!outer[idx(i, j)]) {
                node[idx(i, j)] = static_cast<int>(value.size());
                value.push_back(g.at(i, j));
            }
    const std::size_t m = value.size();
    ReebTree tree;
    if (m == 1) return tree;

    std::vector<std::vector<int>> adj(m);
    for (int i = 1; i < n - 1; ++i)
        for (int j = 1; j < n - 1; ++j) {
            if (outer[idx(i, j)]) continue;
            const int v = node[idx(i, j)];
            for (const auto& d : detail::grid_neighbours) {
                const int u = node[idx(i + d[0], j + d[1])];
                auto& a = adj[static_cast<std::size_t>(v)];
                if (std::find(a.begin(), a.end(), u) == a.end()) a.push_back(u);
                if (u == 0) {
                    auto& r = adj[0];
                    if (r.empty() || r.back() != v) r.push_back(v);
                }
            }
        }

    const auto arcs = detail::contour_tree(value, adj);
    std::vector<std::vector<int>> nbr(m);
    for (auto [a, b] : arcs) {
        nbr[static_cast<std::size_t>(a)].push_back(b);
        nbr[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> parent(m, -1), order{0};
    std::vector<char> visited(m, 0);
    visited[0] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int v = order[k];
        for (int u : nbr[static_cast<std::size_t>(v)])
            if (!visited[static_cast<std::size_t>(u)]) {
                visited[static_cast<std::size_t>(u)] = 1;
                parent[static_cast<std::size_t>(u)] = v;
                order.push_back(u);
            }
    }
    std::vector<long> subtree(m, 1), kids(m, 0);
    for (std::size_t k = order.size(); k-- > 1;) {
        const auto v = static_cast<std::size_t>(order[k]);
        subtree[static_cast<std::size_t>(parent[v])] += subtree[v];
        ++kids[static_cast<std::size_t>(parent[v])];
    }

    const double w = g.spacing() * g.spacing() / (2.0 * std::numbers::pi);
    // critical nodes in reverse breadth-first order, so children precede parents
    std::vector<int> edge_of(m, -1);
    std::vector<int> crit;
    for (std::size_t k = order.size(); k-- > 1;) {
        const int v = order[k];
        if (kids[static_cast<std::size_t>(v)] != 1) {
            edge_of[static_cast<std::size_t>(v)] = static_cast<int>(crit.size());
            crit.push_back(v);
        }
    }
    std::vector<int> top_of(crit.size());
    for (std::size_t e = 0; e < crit.size(); ++e) {
        std::vector<double> js, hs;
        int x = crit[e], last = x;
        while (x != 0 && (x == crit[e] || kids[static_cast<std::size_t>(x)] == 1)) {
            js.push_back(static_cast<double>(subtree[static_cast<std::size_t>(x)] - 1) * w);
            hs.push_back(value[static_cast<std::size_t>(x)]);
            last = x;
            x = parent[static_cast<std::size_t>(x)];
        }
        js.push_back(static_cast<double>(subtree[static_cast<std::size_t>(last)]) * w);
        hs.push_back(value[static_cast<std::size_t>(x)]);
        top_of[e] = x;
        tree.edges.push_back({js.front(), js.back(), Profile(SampledProfile(std::move(js), std::move(hs)))});
    }
    for (std::size_t e = 0; e < crit.size(); ++e) {
        const int top = top_of[e];
        tree.parent.push_back(top == 0 ? static_cast<int>(crit.size()) : edge_of[static_cast<std::size_t>(top)]);
    }
    validate(tree, 1e-9);
    return tree;
}

} // namespace braidqm
