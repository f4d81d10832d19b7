#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "braidqm/braid.hpp"
#include "braidqm/invariants.hpp"

namespace braidqm {

using BraidFunction = std::function<double(const BraidWord&)>;

/// A real function on B_n with an optional known defect bound
/// sup |phi(ab) - phi(a) - phi(b)|.
struct QuasiMorphism {
    std::string name;
    BraidFunction eval;
    std::optional<double> defect_bound;

    double operator()(const BraidWord& b) const { return eval(b); }
};

enum class CompletionOrder { ascending, descending };

/// A completing braid for beta: a product of distinct positive generators
/// whose closure is an unlink and for which alpha * beta closes to a knot.
/// Generators are added whenever positions i and i+1 lie in different
/// (merged) cycles of the permutation of beta.
inline BraidWord completing_braid(const BraidWord& beta, CompletionOrder order = CompletionOrder::ascending) {
    const int n = beta.strands();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& cyc : permutation_of(beta).cycles())
        for (int x : cyc) parent[static_cast<std::size_t>(find(x))] = find(cyc.front());

    std::vector<int> letters;
    auto consider = [&](int i) {  // sigma_i joins positions i-1 and i (0-based)
        const int a = find(i - 1), b = find(i);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            letters.push_back(i);
        }
    };
    if (order == CompletionOrder::ascending) {
        for (int i = 1; i <= n - 1; ++i) consider(i);
    } else {
        for (int i = n - 1; i >= 1; --i) consider(i);
    }
    return BraidWord(n, std::move(letters));
}

/// I-hat(beta) = I(closure of alpha_beta * beta) for a knot invariant I
/// given as a function of a braid whose closure is a knot.
inline double hat_invariant(const BraidFunction& knot_invariant, const BraidWord& beta,
                            CompletionOrder order = CompletionOrder::ascending) {
    return knot_invariant(concat(completing_braid(beta, order), beta));
}

struct HomogenizationEstimate {
    double value = 0.0;
    long p_used = 1;
    double bracket = 0.0;    // half-width: |phi~(beta) - value| <= bracket
    bool heuristic = false;  // bracket from an observed defect, not a proven bound
};

/// phi(beta^p) / p together with the bracket D / p.
inline HomogenizationEstimate homogenize(const QuasiMorphism& phi, const BraidWord& beta, long p,
                                         std::optional<double> defect_proxy = std::nullopt) {
    if (p < 1) throw InvalidInput("homogenize needs p >= 1");
    HomogenizationEstimate e;
    e.p_used = p;
    e.value = phi(power(beta, p)) / static_cast<double>(p);
    if (phi.defect_bound) {
        e.bracket = *phi.defect_bound / static_cast<double>(p);
    } else if (defect_proxy) {
        e.bracket = *defect_proxy / static_cast<double>(p);
        e.heuristic = true;
    } else {
        e.bracket = std::numeric_limits<double>::infinity();
        e.heuristic = true;
    }
    return e;
}

/// Random braid generator: length uniform in [min_length, max_length].
struct BraidSampler {
    int strands = 3;
    std::size_t min_length = 1;
    std::size_t max_length = 12;
    bool positive_only = false;

    template <class Rng>
    BraidWord operator()(Rng& rng) const {
        std::uniform_int_distribution<std::size_t> len(min_length, max_length);
        return random_braid(rng, strands, len(rng), positive_only);
    }
};

/// Independent per-index random stream, so results do not depend on how
/// work is split across threads.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

struct DefectReport {
    double max_defect = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    BraidWord worst_a;
    BraidWord worst_b;
};

/// Maximum of |phi(ab) - phi(a) - phi(b)| over sampled pairs.
inline DefectReport defect_scan(const QuasiMorphism& phi, const BraidSampler& sampler, std::size_t trials,
                                std::uint64_t seed, unsigned threads = 1) {
    if (trials < 1) throw InvalidInput("defect_scan needs trials >= 1");
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    std::vector<double> defects(trials, 0.0);
    std::vector<std::pair<BraidWord, BraidWord>> pairs(trials);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            auto rng = substream(seed, t);
            BraidWord a = sampler(rng);
            BraidWord b = sampler(rng);
            defects[t] = std::abs(phi(concat(a, b)) - phi(a) - phi(b));
            pairs[t] = {std::move(a), std::move(b)};
        }
    };
    if (threads == 1) {
        work(0, trials);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (trials + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            const std::size_t b = k * chunk, e = std::min(trials, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }

    DefectReport r;
    r.trials = trials;
    r.seed = seed;
    const auto worst = static_cast<std::size_t>(
        std::distance(defects.begin(), std::max_element(defects.begin(), defects.end())));
    r.max_defect = defects[worst];
    r.worst_a = pairs[worst].first;
    r.worst_b = pairs[worst].second;
    return r;
}

// Named quasi-morphisms.

inline QuasiMorphism lk_quasimorphism() {
    return {"lk", [](const BraidWord& b) { return static_cast<double>(lk(b)); }, 0.0};
}

/// Signature hat on B_n; |sign| <= 2 g_4 gives the defect bound 3 * 2 * n.
inline QuasiMorphism sign_hat(int n, CompletionOrder order = CompletionOrder::ascending) {
    return {"sign_hat",
            [order](const BraidWord& b) {
                return hat_invariant([](const BraidWord& k) { return static_cast<double>(sign_link(k)); }, b,
                                     order);
            },
            6.0 * n};
}

inline QuasiMorphism omega_sign_hat(int n, const Angle& theta, CompletionOrder order = CompletionOrder::ascending) {
    return {"omega_sign_hat(" + to_string(theta.theta()) + ")",
            [theta, order](const BraidWord& b) {
                return hat_invariant(
                    [&theta](const BraidWord& k) { return static_cast<double>(sign_omega_link(k, theta).signature); },
                    b, order);
            },
            6.0 * n};
}

/// Rasmussen s on the completed knot: exact on positive braids, the midpoint
/// of the slice-Bennequin interval otherwise.
inline double s_estimate(const BraidWord& knot_braid) {
    if (is_positive(knot_braid)) return static_cast<double>(s_positive(knot_braid));
    const auto iv = s_bounds(knot_braid);
    return 0.5 * static_cast<double>(iv.lo + iv.hi);
}

inline double tau_estimate(const BraidWord& knot_braid) {
    if (is_positive(knot_braid)) return to_double(tau_positive(knot_braid));
    const auto iv = tau_bounds(knot_braid);
    return 0.5 * to_double(iv.lo + iv.hi);
}

inline QuasiMorphism s_hat(int n, CompletionOrder order = CompletionOrder::ascending) {
    return {"s_hat", [order](const BraidWord& b) { return hat_invariant(s_estimate, b, order); }, 6.0 * n};
}

inline QuasiMorphism tau_hat(int n, CompletionOrder order = CompletionOrder::ascending) {
    return {"tau_hat", [order](const BraidWord& b) { return hat_invariant(tau_estimate, b, order); }, 3.0 * n};
}

} // namespace braidqm
