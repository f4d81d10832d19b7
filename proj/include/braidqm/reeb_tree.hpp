#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidqm/error.hpp"
#include "braidqm/polynomial.hpp"

namespace braidqm {

/// One edge of a Reeb tree: the action coordinate J runs over [lo, hi], lo
/// at the end away from the root, and hbar(J) is the value of H on the
/// level component with action J.
struct ReebEdge {
    double lo = 0.0;
    double hi = 0.0;
    Profile hbar;
};

/// Rooted Reeb tree. Vertex k < edges.size() is the far endpoint of edge k;
/// vertex edges.size() is the root (the neighbourhood of the boundary where
/// H vanishes). parent[k] is the vertex at the root-side end of edge k.
struct ReebTree {
    std::vector<ReebEdge> edges;
    std::vector<int> parent;

    int root() const { return static_cast<int>(edges.size()); }
    std::size_t size() const { return edges.size(); }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> ch(edges.size() + 1);
        for (std::size_t k = 0; k < parent.size(); ++k) ch[static_cast<std::size_t>(parent[k])].push_back(static_cast<int>(k));
        return ch;
    }
};

/// Throws InvalidInput unless the tree is well formed: J_hi > J_lo >= 0,
/// total action at most 1/2, parents form a tree rooted at root(), and hbar
/// vanishes at the root-side end of every root edge.
inline void validate(const ReebTree& t, double tol = 1e-9) {
    const std::size_t m = t.edges.size();
    if (t.parent.size() != m) throw InvalidInput("reeb tree: parent list and edge list differ in length");
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const auto& e = t.edges[k];
        if (!(e.lo >= 0.0) || !(e.hi > e.lo)) {
            throw InvalidInput("reeb tree: edge " + std::to_string(k) + " needs 0 <= lo < hi");
        }
        total += e.hi - e.lo;
        const int p = t.parent[k];
        if (p < 0 || p > t.root() || p == static_cast<int>(k)) {
            throw InvalidInput("reeb tree: edge " + std::to_string(k) + " has an invalid parent");
        }
        if (p == t.root() && std::abs(e.hbar(e.hi)) > tol * (1.0 + std::abs(e.hbar(e.lo)))) {
            throw InvalidInput("reeb tree: hbar must vanish at the root end of edge " + std::to_string(k));
        }
    }
    if (total > 0.5 + tol) throw InvalidInput("reeb tree: total action exceeds 1/2");
    for (std::size_t k = 0; k < m; ++k) {
        int v = static_cast<int>(k);
        std::size_t steps = 0;
        while (v != t.root()) {
            v = t.parent[static_cast<std::size_t>(v)];
            if (++steps > m) throw InvalidInput("reeb tree: parent links contain a cycle");
        }
    }
}

/// Whether the edges fit together as the Reeb tree of a function: leaves
/// start at J = 0, the action of a vertex is the sum of the actions of its
/// children and hbar is continuous at vertices.
inline bool is_glued(const ReebTree& t, double tol = 1e-9) {
    const auto ch = t.children();
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& e = t.edges[k];
        const auto& kids = ch[k];
        if (kids.empty()) {
            if (std::abs(e.lo) > tol) return false;
            continue;
        }
        double sum = 0.0;
        for (int c : kids) {
            const auto& ce = t.edges[static_cast<std::size_t>(c)];
            sum += ce.hi;
            if (std::abs(ce.hbar(ce.hi) - e.hbar(e.lo)) > tol * (1.0 + std::abs(e.hbar(e.lo)))) return false;
        }
        if (std::abs(sum - e.lo) > tol) return false;
    }
    return true;
}

/// Radial Hamiltonian H = f(r^2) for r^2 < cutoff and 0 outside, f a
/// polynomial with f(cutoff) = 0.
struct RadialProfile {
    Polynomial f;
    double cutoff = 1.0;

    double value(double r2) const { return r2 < cutoff ? f(r2) : 0.0; }
    double slope(double r2) const { return r2 < cutoff ? f.derivative()(r2) : 0.0; }

    /// a (R^2 - r^2)^2 inside radius R.
    static RadialProfile bump(double a, double radius) {
        const double s = radius * radius;
        return {Polynomial({a * s * s, -2.0 * a * s, a}), s};
    }
};

/// Reeb tree of a monotone radial profile: a single edge with J = r^2 / 2.
inline ReebTree radial_tree(const RadialProfile& h, int checks = 256) {
    if (!(h.cutoff > 0.0) || h.cutoff > 1.0) throw InvalidInput("radial profile cutoff must lie in (0, 1]");
    ReebTree t;
    if (h.f.is_zero()) return t;
    const Polynomial d = h.f.derivative();
    int sign = 0;
    for (int k = 0; k <= checks; ++k) {
        const double v = d(h.cutoff * k / checks);
        const int s = v > 1e-14 ? 1 : (v < -1e-14 ? -1 : 0);
        if (s != 0 && sign != 0 && s != sign) throw InvalidInput("radial profile must be monotone in r");
        if (s != 0) sign = s;
    }
    t.edges.push_back({0.0, 0.5 * h.cutoff, Profile(h.f.compose_affine(2.0, 0.0))});
    t.parent.push_back(1);
    return t;
}

// JSON form: {"edges": [{"lo", "hi", "poly": [c0, ...]} or {"lo", "hi",
// "samples": [[J, h], ...]}], "parent": [...], "root": <vertex id>}

inline nlohmann::json to_json(const ReebTree& t) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : t.edges) {
        nlohmann::json je{{"lo", e.lo}, {"hi", e.hi}};
        if (e.hbar.is_polynomial()) {
            je["poly"] = e.hbar.polynomial().coeffs();
        } else {
            nlohmann::json s = nlohmann::json::array();
            const auto& sp = e.hbar.samples();
            for (std::size_t k = 0; k < sp.x().size(); ++k) s.push_back({sp.x()[k], sp.y()[k]});
            je["samples"] = s;
        }
        edges.push_back(je);
    }
    return {{"edges", edges}, {"parent", t.parent}, {"root", t.root()}};
}

inline ReebTree reeb_tree_from_json(const nlohmann::json& j) {
    try {
        ReebTree t;
        for (const auto& je : j.at("edges")) {
            ReebEdge e;
            e.lo = je.at("lo").get<double>();
            e.hi = je.at("hi").get<double>();
            if (je.contains("poly")) {
                e.hbar = Profile(Polynomial(je.at("poly").get<std::vector<double>>()));
            } else if (je.contains("samples")) {
                std::vector<double> x, y;
                for (const auto& s : je.at("samples")) {
                    x.push_back(s.at(0).get<double>());
                    y.push_back(s.at(1).get<double>());
                }
                e.hbar = Profile(SampledProfile(std::move(x), std::move(y)));
            } else {
                throw InvalidInput("reeb tree edge needs \"poly\" or \"samples\"");
            }
            t.edges.push_back(std::move(e));
        }
        t.parent = j.at("parent").get<std::vector<int>>();
        if (j.contains("root") && j.at("root").get<int>() != t.root()) {
            throw InvalidInput("reeb tree: root must be the vertex after the last edge");
        }
        validate(t);
        return t;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(std::string("reeb tree json: ") + ex.what());
    }
}

inline ReebTree load_reeb_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(path + ": " + ex.what());
    }
    return reeb_tree_from_json(j);
}

} // namespace braidqm
