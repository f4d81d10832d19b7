#include <random>

#include <gtest/gtest.h>

#include "braidqm/braid.hpp"

using namespace braidqm;

namespace {

// Relation-preserving rewrite at a random place: inserts a braid relator or
// a far commutator, or a cancelling pair.
BraidWord insert_relator(const BraidWord& b, std::mt19937_64& rng) {
    const int n = b.strands();
    std::vector<int> w = b.letters();
    std::uniform_int_distribution<std::size_t> at(0, w.size());
    std::uniform_int_distribution<int> idx(1, n - 1);
    std::vector<int> ins;
    const int kind = static_cast<int>(rng() % 3);
    const int i = idx(rng);
    if (kind == 0 && i + 1 <= n - 1) {
        // s_i s_{i+1} s_i (s_{i+1} s_i s_{i+1})^{-1}
        ins = {i, i + 1, i, -(i + 1), -i, -(i + 1)};
    } else if (kind == 1 && n >= 4) {
        int j = idx(rng);
        if (std::abs(i - j) >= 2) ins = {i, j, -i, -j};
    } else {
        ins = {i, -i};
    }
    w.insert(w.begin() + static_cast<long>(at(rng)), ins.begin(), ins.end());
    return BraidWord(n, w);
}

} // namespace

TEST(BraidWord, RejectsOutOfRangeLetters) {
    EXPECT_THROW(BraidWord(2, {2}), InvalidInput);
    EXPECT_THROW(BraidWord(3, {0}), InvalidInput);
    EXPECT_THROW(BraidWord(0), InvalidInput);
    EXPECT_NO_THROW(BraidWord(3, {2, -1}));
}

TEST(BraidWord, Concat) {
    EXPECT_EQ(concat(BraidWord(2, {1}), BraidWord(2, {1})), BraidWord(2, {1, 1}));
    const BraidWord b(3, {1, -2, 2});
    EXPECT_EQ(concat(BraidWord(3), b), b);
    EXPECT_EQ(concat(BraidWord(2, {1}), BraidWord(2, {-1})).letters(), (std::vector<int>{1, -1}));
    EXPECT_THROW(concat(BraidWord(2), BraidWord(3)), InvalidInput);
}

TEST(BraidWord, InverseAndPower) {
    EXPECT_EQ(inverse(BraidWord(3, {1, 2})), BraidWord(3, {-2, -1}));
    EXPECT_EQ(power(BraidWord(2, {1}), 3), BraidWord(2, {1, 1, 1}));
    EXPECT_TRUE(power(BraidWord(3, {1, 2}), 0).empty());
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const BraidWord b = random_braid(rng, 4, 7);
        EXPECT_EQ(power(b, -1), inverse(b));
        EXPECT_EQ(power(b, -3), power(inverse(b), 3));
    }
}

TEST(BraidWord, FreeReduce) {
    EXPECT_TRUE(free_reduce(BraidWord(2, {1, -1})).empty());
    EXPECT_EQ(free_reduce(BraidWord(3, {1, 2, -2, 1})), BraidWord(3, {1, 1}));
    const BraidWord r(3, {1, 2, 1, -2});
    EXPECT_EQ(free_reduce(r), r);
    EXPECT_TRUE(free_reduce(BraidWord(3, {1, 2, -2, -1})).empty());
}

TEST(BraidWord, Permutations) {
    const Permutation p = permutation_of(BraidWord(2, {1}));
    EXPECT_EQ(p.images, (std::vector<int>{1, 0}));
    EXPECT_EQ(cycle_count(BraidWord(2, {1})), 1);
    EXPECT_EQ(cycle_count(BraidWord(3)), 3);
    EXPECT_TRUE(is_pure(BraidWord(3)));

    // eta(2,3) = s1 s1: two applications of the transposition (0 1)
    Permutation t = Permutation::identity(3);
    std::swap(t.images[0], t.images[1]);
    EXPECT_TRUE(compose(t, t).is_identity());
    EXPECT_TRUE(is_pure(eta(2, 3)));
    for (int n = 2; n <= 6; ++n)
        for (int i = 2; i <= n; ++i) EXPECT_TRUE(is_pure(eta(i, n))) << i << "," << n;
}

TEST(BraidWord, PermutationOfConcatComposes) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        const BraidWord a = random_braid(rng, 5, 6), b = random_braid(rng, 5, 9);
        EXPECT_EQ(permutation_of(concat(a, b)), compose(permutation_of(b), permutation_of(a)));
    }
}

TEST(BraidWord, LinkingNumber) {
    EXPECT_EQ(lk(BraidWord(2, {1})), 1);
    EXPECT_EQ(lk(BraidWord(3)), 0);
    EXPECT_EQ(lk(power(BraidWord(3, {1, 2}), 3)), 6);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const BraidWord a = random_braid(rng, 4, 10), b = random_braid(rng, 4, 5);
        EXPECT_EQ(lk(concat(a, b)), lk(a) + lk(b));
    }
}

TEST(BraidWord, NamedBraids) {
    EXPECT_EQ(eta(2, 2), BraidWord(2, {1, 1}));
    EXPECT_EQ(eta(3, 4), BraidWord(4, {2, 1, 1, 2}));
    for (int n = 2; n <= 7; ++n)
        for (int i = 2; i <= n; ++i) EXPECT_EQ(lk(eta(i, n)), 2 * (i - 1));
    EXPECT_EQ(torus_braid(3, 2), BraidWord(3, {1, 2, 1, 2}));
    EXPECT_EQ(delta_sq(3), torus_braid(3, 3));
    EXPECT_THROW(eta(1, 3), InvalidInput);
    EXPECT_THROW(eta(4, 3), InvalidInput);
}

TEST(BraidEqual, Relations) {
    EXPECT_TRUE(braid_equal(BraidWord(3, {1, 2, 1}), BraidWord(3, {2, 1, 2})));
    EXPECT_FALSE(braid_equal(BraidWord(2, {1}), BraidWord(2, {-1})));
    EXPECT_TRUE(braid_equal(BraidWord(4, {1, 3}), BraidWord(4, {3, 1})));
    EXPECT_FALSE(braid_equal(BraidWord(3, {1, 2}), BraidWord(3, {2, 1})));
}

TEST(BraidEqual, EtaProductIsFullTwist) {
    for (int n = 2; n <= 6; ++n) {
        BraidWord prod(n);
        for (int i = 2; i <= n; ++i) prod = concat(prod, eta(i, n));
        EXPECT_TRUE(braid_equal(prod, delta_sq(n))) << n;
    }
}

TEST(BraidEqual, EtasCommute) {
    for (int n = 3; n <= 6; ++n)
        for (int i = 2; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                EXPECT_TRUE(braid_equal(concat(eta(i, n), eta(j, n)), concat(eta(j, n), eta(i, n))));
}

TEST(BraidEqual, InvariantUnderRelatorsAndReduction) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 60; ++k) {
        const int n = 2 + static_cast<int>(k % 4);
        const BraidWord b = random_braid(rng, n, 8);
        BraidWord c = b;
        for (int r = 0; r < 3; ++r) c = insert_relator(c, rng);
        EXPECT_TRUE(braid_equal(b, c));
        EXPECT_TRUE(braid_equal(c, b));
        EXPECT_TRUE(braid_equal(free_reduce(c), b));
        const BraidWord other = random_braid(rng, n, 8);
        // transitivity through c
        EXPECT_EQ(braid_equal(b, other), braid_equal(c, other));
    }
}

TEST(BraidText, ParseAndPrint) {
    const BraidWord b = parse_braid("1 2 -1");
    EXPECT_EQ(b.strands(), 3);
    EXPECT_EQ(b.letters(), (std::vector<int>{1, 2, -1}));
    EXPECT_EQ(to_string(b), "1 2 -1");
    EXPECT_EQ(parse_braid("1 1 1", 4).strands(), 4);
    EXPECT_EQ(parse_braid("").strands(), 1);
    EXPECT_THROW(parse_braid("1 x"), InvalidInput);
    EXPECT_THROW(parse_braid("0"), InvalidInput);
    EXPECT_THROW(parse_braid("3", 2), InvalidInput);
}
