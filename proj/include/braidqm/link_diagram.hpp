#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "braidqm/braid.hpp"
#include "braidqm/matrix.hpp"

namespace braidqm {

struct Crossing {
    int column;  // 1-based, the crossing exchanges positions column and column+1
    int sign;    // +1 or -1
};

/// Closed-braid diagram. Strands run bottom to top; crossing k sits at
/// height k. At a positive crossing the strand moving to the right passes over.
struct ClosureDiagram {
    int strands = 1;
    std::vector<Crossing> crossings;
    int components = 1;
    long writhe = 0;
    int seifert_circles = 1;
};

inline ClosureDiagram close(const BraidWord& b) {
    ClosureDiagram d;
    d.strands = b.strands();
    d.crossings.reserve(b.length());
    for (int l : b.letters()) d.crossings.push_back({std::abs(l), l > 0 ? 1 : -1});
    d.components = cycle_count(b);
    d.writhe = lk(b);
    d.seifert_circles = b.strands();
    return d;
}

/// Walks each component of the closed diagram and checks that over- and
/// under-passes strictly alternate (cyclically).
inline bool is_alternating(const ClosureDiagram& d) {
    const int n = d.strands;
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    for (int start = 0; start < n; ++start) {
        if (visited[static_cast<std::size_t>(start)]) continue;
        std::vector<bool> passes;  // true = over
        int pos = start;
        do {
            visited[static_cast<std::size_t>(pos)] = true;
            for (const Crossing& c : d.crossings) {
                const int left = c.column - 1;
                if (pos == left) {
                    passes.push_back(c.sign > 0);
                    pos = left + 1;
                } else if (pos == left + 1) {
                    passes.push_back(c.sign < 0);
                    pos = left;
                }
            }
        } while (pos != start);
        for (std::size_t k = 0; k < passes.size(); ++k) {
            if (passes[k] == passes[(k + 1) % passes.size()]) return false;
        }
    }
    return true;
}

inline bool is_alternating(const BraidWord& b) { return is_alternating(close(b)); }

/// One connected piece of the Bennequin surface: strands
/// [first_strand, last_strand] (1-based) and the generators it owns.
struct SeifertBlock {
    int first_strand;
    int last_strand;
    std::size_t first_generator;
    std::size_t generator_count;
};

struct SeifertData {
    IntMatrix matrix;  // V(a, b) = lk(a, b^+)
    std::vector<SeifertBlock> blocks;

    std::size_t dim() const { return matrix.rows(); }
    IntMatrix symmetrized() const { return matrix + matrix.transpose(); }
};

/// Seifert matrix of the Bennequin surface of the closure: one disc per
/// strand, one half-twisted band per crossing, and one H_1 generator per
/// pair of consecutive crossings in the same column. Generators are ordered
/// by column, then by height.
inline SeifertData seifert_matrix(const BraidWord& b) {
    const int n = b.strands();
    struct Gen {
        int column;
        std::size_t lo, hi;  // heights of the two crossings
        int sign_lo, sign_hi;
    };
    std::vector<std::vector<std::pair<std::size_t, int>>> cols(static_cast<std::size_t>(n));
    for (std::size_t h = 0; h < b.length(); ++h) {
        const int l = b.letters()[h];
        cols[static_cast<std::size_t>(std::abs(l))].push_back({h, l > 0 ? 1 : -1});
    }

    std::vector<Gen> gens;
    std::vector<std::size_t> col_start(static_cast<std::size_t>(n) + 1, 0);
    for (int c = 1; c < n; ++c) {
        col_start[static_cast<std::size_t>(c)] = gens.size();
        const auto& cr = cols[static_cast<std::size_t>(c)];
        for (std::size_t k = 0; k + 1 < cr.size(); ++k)
            gens.push_back({c, cr[k].first, cr[k + 1].first, cr[k].second, cr[k + 1].second});
    }
    col_start[static_cast<std::size_t>(n)] = gens.size();

    const std::size_t m = gens.size();
    SeifertData out;
    out.matrix = IntMatrix(m, m);
    IntMatrix& V = out.matrix;
    for (std::size_t a = 0; a < m; ++a) {
        const Gen& ga = gens[a];
        V(a, a) = -(ga.sign_lo + ga.sign_hi) / 2;
        // next generator in the same column shares crossing ga.hi
        if (a + 1 < m && gens[a + 1].column == ga.column) {
            const int e = ga.sign_hi;
            V(a, a + 1) = (e + 1) / 2;
            V(a + 1, a) = (e - 1) / 2;
        }
        // generators in the column to the right that interleave with ga
        if (ga.column + 1 < n) {
            const std::size_t s = col_start[static_cast<std::size_t>(ga.column + 1)];
            const std::size_t e = col_start[static_cast<std::size_t>(ga.column + 2)];
            for (std::size_t bi = s; bi < e; ++bi) {
                const Gen& gb = gens[bi];
                if (ga.lo < gb.lo && gb.lo < ga.hi && ga.hi < gb.hi)
                    V(a, bi) = 1;
                else if (gb.lo < ga.lo && ga.lo < gb.hi && gb.hi < ga.hi)
                    V(a, bi) = -1;
            }
        }
    }

    // connected blocks: maximal runs of strands joined by non-empty columns
    int first = 1;
    std::size_t gen_first = 0;
    for (int s = 1; s <= n; ++s) {
        const bool joined_right = s < n && !cols[static_cast<std::size_t>(s)].empty();
        if (!joined_right) {
            const std::size_t gen_end = col_start[static_cast<std::size_t>(s)];
            out.blocks.push_back({first, s, gen_first, gen_end - gen_first});
            first = s + 1;
            gen_first = gen_end;
        }
    }
    return out;
}

/// b in B_n  ->  b sigma_n in B_{n+1}; the closure is unchanged.
inline BraidWord markov_stabilize(const BraidWord& b, int sign = +1) {
    std::vector<int> letters = b.letters();
    letters.push_back(sign > 0 ? b.strands() : -b.strands());
    return BraidWord(b.strands() + 1, std::move(letters));
}

} // namespace braidqm
