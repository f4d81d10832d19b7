#pragma once

#include <random>
#include <vector>

#include "braidqm/reeb_tree.hpp"

namespace fixture {

// Random Reeb tree with polynomial profiles. Leaves start at J = 0, vertex
// actions add up, hbar is continuous and vanishes at the root.
template <class Rng>
braidqm::ReebTree random_polynomial_tree(Rng& rng, int edges, int degree) {
    using braidqm::Polynomial;
    std::uniform_real_distribution<double> unit(0.0, 1.0), coef(-1.0, 1.0);
    // parent[k] > k, so children come first; last edge hangs off the root
    std::vector<int> parent(static_cast<std::size_t>(edges));
    for (int k = 0; k < edges; ++k) {
        if (k == edges - 1) {
            parent[static_cast<std::size_t>(k)] = edges;
        } else {
            std::uniform_int_distribution<int> up(k + 1, edges - 1);
            parent[static_cast<std::size_t>(k)] = up(rng);
        }
    }
    std::vector<double> lo(static_cast<std::size_t>(edges), 0.0), hi(lo);
    std::vector<std::vector<int>> kids(static_cast<std::size_t>(edges) + 1);
    for (int k = 0; k < edges; ++k) kids[static_cast<std::size_t>(parent[static_cast<std::size_t>(k)])].push_back(k);
    for (int k = 0; k < edges; ++k) {
        double s = 0.0;
        for (int c : kids[static_cast<std::size_t>(k)]) s += hi[static_cast<std::size_t>(c)];
        lo[static_cast<std::size_t>(k)] = s;
        hi[static_cast<std::size_t>(k)] = s + 0.05 + unit(rng);
    }
    // scale total root action to at most 1/2
    const double scale = 0.5 * (0.5 + 0.5 * unit(rng)) / hi[static_cast<std::size_t>(edges - 1)];
    for (int k = 0; k < edges; ++k) {
        lo[static_cast<std::size_t>(k)] *= scale;
        hi[static_cast<std::size_t>(k)] *= scale;
    }

    // vertex values; root value 0
    std::vector<double> value(static_cast<std::size_t>(edges) + 1, 0.0);
    for (int k = edges - 1; k >= 0; --k) value[static_cast<std::size_t>(k)] = 2.0 * coef(rng);

    braidqm::ReebTree t;
    for (int k = 0; k < edges; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const double a = lo[uk], b = hi[uk];
        const double va = value[uk], vb = value[static_cast<std::size_t>(parent[uk])];
        // linear interpolation plus (J - a)(J - b) q(J)
        Polynomial lin({va - (vb - va) / (b - a) * a, (vb - va) / (b - a)});
        std::vector<double> qc;
        for (int d = 0; d <= std::max(0, degree - 2); ++d) qc.push_back(coef(rng) * 4.0);
        const Polynomial bubble = Polynomial({a * b, -(a + b), 1.0}) * Polynomial(qc);
        t.edges.push_back({a, b, braidqm::Profile(degree >= 2 ? lin + bubble : lin)});
    }
    t.parent = parent;
    return t;
}

// Single edge [0, 1/2] with hbar = a (1/2 - J).
inline braidqm::ReebTree single_edge(double a) {
    braidqm::ReebTree t;
    t.edges.push_back({0.0, 0.5, braidqm::Profile(braidqm::Polynomial({0.5 * a, -a}))});
    t.parent.push_back(1);
    return t;
}

} // namespace fixture
