#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "braidqm/error.hpp"

namespace braidqm {

/// A word in the Artin generators of B_n.
///
/// Letters are stored as signed integers: `k` is sigma_k and `-k` is its
/// inverse, with 1 <= k <= strands-1. The word is not reduced on
/// construction; word length is used wherever a length bound is needed.
class BraidWord {
public:
    BraidWord() = default;

    explicit BraidWord(int strands, std::vector<int> letters = {})
        : strands_(strands), letters_(std::move(letters)) {
        if (strands_ < 1) throw InvalidInput("braid needs at least one strand");
        for (int l : letters_) check_letter(l);
    }

    int strands() const { return strands_; }
    const std::vector<int>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    void push_back(int letter) {
        check_letter(letter);
        letters_.push_back(letter);
    }

    friend bool operator==(const BraidWord&, const BraidWord&) = default;

private:
    void check_letter(int l) const {
        if (l == 0 || std::abs(l) > strands_ - 1) {
            throw InvalidInput("generator index " + std::to_string(l) + " out of range for B_" +
                               std::to_string(strands_));
        }
    }

    int strands_ = 1;
    std::vector<int> letters_;
};

/// Underlying permutation of a braid, 0-based: images[start] = end position.
struct Permutation {
    std::vector<int> images;

    static Permutation identity(int n) {
        Permutation p;
        p.images.resize(static_cast<std::size_t>(n));
        std::iota(p.images.begin(), p.images.end(), 0);
        return p;
    }

    int size() const { return static_cast<int>(images.size()); }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (images[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }

    // Cycles as lists of positions, each starting at its smallest element.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(images.size(), false);
        for (int s = 0; s < size(); ++s) {
            if (seen[static_cast<std::size_t>(s)]) continue;
            std::vector<int> cyc;
            for (int i = s; !seen[static_cast<std::size_t>(i)]; i = images[static_cast<std::size_t>(i)]) {
                seen[static_cast<std::size_t>(i)] = true;
                cyc.push_back(i);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

// (after o before)(x) = after(before(x))
inline Permutation compose(const Permutation& after, const Permutation& before) {
    if (after.size() != before.size()) throw InvalidInput("permutation size mismatch");
    Permutation r;
    r.images.resize(before.images.size());
    for (std::size_t i = 0; i < before.images.size(); ++i)
        r.images[i] = after.images[static_cast<std::size_t>(before.images[i])];
    return r;
}

inline BraidWord concat(const BraidWord& a, const BraidWord& b) {
    if (a.strands() != b.strands()) {
        throw InvalidInput("strand-count mismatch: " + std::to_string(a.strands()) + " vs " +
                           std::to_string(b.strands()));
    }
    std::vector<int> letters = a.letters();
    letters.insert(letters.end(), b.letters().begin(), b.letters().end());
    return BraidWord(a.strands(), std::move(letters));
}

inline BraidWord inverse(const BraidWord& b) {
    std::vector<int> letters(b.letters().rbegin(), b.letters().rend());
    for (int& l : letters) l = -l;
    return BraidWord(b.strands(), std::move(letters));
}

inline BraidWord power(const BraidWord& b, long p) {
    const BraidWord base = p < 0 ? inverse(b) : b;
    const long reps = p < 0 ? -p : p;
    std::vector<int> letters;
    letters.reserve(base.length() * static_cast<std::size_t>(reps));
    for (long k = 0; k < reps; ++k)
        letters.insert(letters.end(), base.letters().begin(), base.letters().end());
    return BraidWord(b.strands(), std::move(letters));
}

namespace detail {

// Cancels adjacent x x^{-1} pairs in a signed-letter word.
inline void append_reduced(std::vector<int>& out, std::span<const int> word) {
    for (int l : word) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
}

inline std::vector<int> reduce_letters(std::span<const int> word) {
    std::vector<int> out;
    out.reserve(word.size());
    append_reduced(out, word);
    return out;
}

} // namespace detail

inline BraidWord free_reduce(const BraidWord& b) {
    return BraidWord(b.strands(), detail::reduce_letters(b.letters()));
}

inline Permutation permutation_of(const BraidWord& b) {
    // strand_at[pos] = starting position of the strand currently at pos
    std::vector<int> strand_at(static_cast<std::size_t>(b.strands()));
    std::iota(strand_at.begin(), strand_at.end(), 0);
    for (int l : b.letters()) {
        const auto k = static_cast<std::size_t>(std::abs(l) - 1);
        std::swap(strand_at[k], strand_at[k + 1]);
    }
    Permutation p;
    p.images.resize(strand_at.size());
    for (std::size_t pos = 0; pos < strand_at.size(); ++pos)
        p.images[static_cast<std::size_t>(strand_at[pos])] = static_cast<int>(pos);
    return p;
}

inline int cycle_count(const BraidWord& b) {
    return static_cast<int>(permutation_of(b).cycles().size());
}

inline bool is_pure(const BraidWord& b) { return permutation_of(b).is_identity(); }

inline long lk(const BraidWord& b) {
    long s = 0;
    for (int l : b.letters()) s += l > 0 ? 1 : -1;
    return s;
}

inline bool is_positive(const BraidWord& b) {
    return std::all_of(b.letters().begin(), b.letters().end(), [](int l) { return l > 0; });
}

/// (sigma_1 ... sigma_{p-1})^q in B_p.
inline BraidWord torus_braid(int p, long q) {
    if (p < 1) throw InvalidInput("torus_braid needs p >= 1");
    std::vector<int> cycle(static_cast<std::size_t>(p - 1));
    std::iota(cycle.begin(), cycle.end(), 1);
    return power(BraidWord(p, std::move(cycle)), q);
}

inline BraidWord delta_sq(int n) { return torus_braid(n, n); }

/// Pure braid in which strand i encircles strands 1..i-1:
/// (sigma_{i-1} ... sigma_1)(sigma_1 ... sigma_{i-1}).
inline BraidWord eta(int i, int n) {
    if (n < 2 || i < 2 || i > n) {
        throw InvalidInput("eta(i, n) needs 2 <= i <= n, got i=" + std::to_string(i) +
                           ", n=" + std::to_string(n));
    }
    std::vector<int> letters;
    for (int k = i - 1; k >= 1; --k) letters.push_back(k);
    for (int k = 1; k <= i - 1; ++k) letters.push_back(k);
    return BraidWord(n, std::move(letters));
}

/// Artin action of a braid on the free group F_n, as the images of the
/// free generators x_1..x_n (signed 1-based letters, freely reduced).
inline std::vector<std::vector<int>> artin_action(const BraidWord& b) {
    const auto n = static_cast<std::size_t>(b.strands());
    std::vector<std::vector<int>> img(n);
    for (std::size_t j = 0; j < n; ++j) img[j] = {static_cast<int>(j) + 1};

    auto inv = [](const std::vector<int>& w) {
        std::vector<int> r(w.rbegin(), w.rend());
        for (int& x : r) x = -x;
        return r;
    };
    auto product = [](std::initializer_list<const std::vector<int>*> parts) {
        std::vector<int> out;
        for (const auto* w : parts) detail::append_reduced(out, *w);
        return out;
    };

    // The image map is updated as psi <- psi o phi_letter, so the result is
    // a homomorphism B_n -> Aut(F_n).
    for (int l : b.letters()) {
        const auto i = static_cast<std::size_t>(std::abs(l) - 1);
        const std::vector<int> a = img[i];
        const std::vector<int> c = img[i + 1];
        if (l > 0) {
            // x_i -> x_i x_{i+1} x_i^{-1},  x_{i+1} -> x_i
            const auto ai = inv(a);
            img[i] = product({&a, &c, &ai});
            img[i + 1] = a;
        } else {
            // x_i -> x_{i+1},  x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}
            const auto ci = inv(c);
            img[i] = c;
            img[i + 1] = product({&ci, &a, &c});
        }
    }
    return img;
}

/// Word problem in B_n through the faithful Artin representation.
inline bool braid_equal(const BraidWord& a, const BraidWord& b) {
    if (a.strands() != b.strands()) throw InvalidInput("braid_equal needs equal strand counts");
    return artin_action(concat(a, inverse(b))) == artin_action(BraidWord(a.strands()));
}

/// Parses "1 2 -1". With strands <= 0 the count is inferred as max|index|+1.
inline BraidWord parse_braid(std::string_view text, int strands = 0) {
    std::vector<int> letters;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw InvalidInput("bad braid letter '" + tok + "'");
        }
        if (used != tok.size() || v == 0) throw InvalidInput("bad braid letter '" + tok + "'");
        letters.push_back(v);
    }
    if (strands <= 0) {
        int m = 0;
        for (int l : letters) m = std::max(m, std::abs(l));
        strands = m + 1;
    }
    return BraidWord(strands, std::move(letters));
}

inline std::string to_string(const BraidWord& b) {
    std::string s;
    for (int l : b.letters()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(l);
    }
    return s;
}

/// Uniform random word: each letter picks an index in [1, n-1] and a sign.
template <class Rng>
BraidWord random_braid(Rng& rng, int strands, std::size_t length, bool positive_only = false) {
    if (strands < 2) return BraidWord(strands);
    std::uniform_int_distribution<int> idx(1, strands - 1);
    std::bernoulli_distribution flip(0.5);
    std::vector<int> letters(length);
    for (auto& l : letters) {
        l = idx(rng);
        if (!positive_only && flip(rng)) l = -l;
    }
    return BraidWord(strands, std::move(letters));
}

} // namespace braidqm
