#include <random>

#include <gtest/gtest.h>

#include "braidqm/invariants.hpp"
#include "oracles.hpp"

using namespace braidqm;

namespace {

IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t m, int range, double density) {
    std::uniform_int_distribution<int> val(-range, range);
    std::bernoulli_distribution keep(density);
    IntMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const long long v = keep(rng) ? val(rng) : 0;
            a(i, j) = v;
            a(j, i) = v;
        }
    return a;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t m) {
    IntMatrix p(m, m);
    for (std::size_t i = 0; i < m; ++i) p(i, i) = 1;
    std::uniform_int_distribution<std::size_t> idx(0, m - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int k = 0; k < 3 * static_cast<int>(m); ++k) {
        const std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        const int c = coef(rng);
        for (std::size_t r = 0; r < m; ++r) p(r, i) += c * p(r, j);
    }
    return p;
}

} // namespace

TEST(SignatureSymmetric, Examples) {
    IntMatrix a(2, 2);
    a(0, 0) = -2;
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = -2;
    const auto r = signature_symmetric(a);
    EXPECT_EQ(r.signature, -2);
    EXPECT_EQ(r.nullity, 0);
    EXPECT_FALSE(r.degenerate);

    EXPECT_EQ(signature_symmetric(IntMatrix(0, 0)).signature, 0);

    IntMatrix d(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -1;
    EXPECT_EQ(signature_symmetric(d).signature, 0);
    EXPECT_EQ(signature_symmetric(d).nullity, 0);
}

TEST(SignatureSymmetric, ZeroDiagonalUsesHyperbolicPivot) {
    IntMatrix h(2, 2);
    h(0, 1) = 3;
    h(1, 0) = 3;
    const auto r = signature_symmetric(h);
    EXPECT_EQ(r.signature, 0);
    EXPECT_EQ(r.nullity, 0);

    IntMatrix z(3, 3);
    EXPECT_EQ(signature_symmetric(z).nullity, 3);
}

TEST(SignatureSymmetric, RejectsNonSymmetric) {
    IntMatrix a(2, 2);
    a(0, 1) = 1;
    EXPECT_THROW(signature_symmetric(a), InvalidInput);
}

TEST(SignatureSymmetric, MatchesEigenvalueCount) {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 300; ++k) {
        const std::size_t m = 1 + rng() % 12;
        const IntMatrix a = random_symmetric(rng, m, 3, 0.3 + 0.1 * (k % 7));
        const auto exact = signature_symmetric(a);
        const auto ref = oracle::eigen_signature(a);
        EXPECT_EQ(exact.signature, ref.signature);
        EXPECT_EQ(exact.nullity, ref.nullity);
    }
}

TEST(SignatureSymmetric, CongruenceInvariance) {
    std::mt19937_64 rng(43);
    for (int k = 0; k < 100; ++k) {
        const std::size_t m = 2 + rng() % 8;
        const IntMatrix a = random_symmetric(rng, m, 2, 0.5);
        const IntMatrix p = random_unimodular(rng, m);
        const IntMatrix b = p.transpose() * a * p;
        EXPECT_EQ(signature_symmetric(b).signature, signature_symmetric(a).signature);
        EXPECT_EQ(signature_symmetric(b).nullity, signature_symmetric(a).nullity);
    }
}

TEST(SignatureHermitian, MatchesEigenvalueCount) {
    std::mt19937_64 rng(47);
    std::normal_distribution<double> g;
    for (int k = 0; k < 200; ++k) {
        const std::size_t m = 1 + rng() % 15;
        ComplexMatrix h(m, m);
        Eigen::MatrixXcd e(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) {
                std::complex<double> v(g(rng), i == j ? 0.0 : g(rng));
                if (rng() % 3 == 0) v = 0.0;
                h(i, j) = v;
                h(j, i) = std::conj(v);
            }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h(i, j);
        EXPECT_EQ(signature_hermitian(h).signature, oracle::eigen_signature(e).signature);
    }
}

TEST(OmegaSignature, HalfIsClassicalSignature) {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 60; ++k) {
        const int n = 2 + static_cast<int>(k % 4);
        const SeifertData s = seifert_matrix(random_braid(rng, n, 1 + rng() % 14));
        const auto exact = signature_symmetric(s.symmetrized());
        EXPECT_EQ(omega_signature(s, Angle(1, 2)).signature, exact.signature);
        // the floating Hermitian path at a rational just off 1/2 agrees away from roots
        const auto h = oracle::tristram_levine(s.matrix, 0.5);
        EXPECT_EQ(oracle::eigen_signature(h).signature, exact.signature);
    }
}

TEST(OmegaSignature, MatchesEigenOracleOnBraids) {
    std::mt19937_64 rng(59);
    for (int k = 0; k < 80; ++k) {
        const int n = 2 + static_cast<int>(k % 4);
        const SeifertData s = seifert_matrix(random_braid(rng, n, 1 + rng() % 16));
        for (const Angle th : {Angle(1, 5), Angle(3, 10), Angle(7, 10), Angle(2, 7)}) {
            const auto r = omega_signature(s, th);
            const auto ref = oracle::eigen_signature(oracle::tristram_levine(s.matrix, to_double(th.theta())));
            EXPECT_EQ(r.signature, ref.signature);
            EXPECT_EQ(r.nullity, ref.nullity);
        }
    }
}

TEST(OmegaSignature, UnknotIsZero) {
    const SeifertData s = seifert_matrix(BraidWord(2, {1}));
    EXPECT_EQ(omega_signature(s, Angle(1, 3)).signature, 0);
    EXPECT_EQ(omega_signature(s, Angle(1, 2)).signature, 0);
}

TEST(OmegaSignature, TrefoilJumpsAtAlexanderRoot) {
    // Delta = t^2 - t + 1 has roots exp(+-2 pi i / 6)
    const SeifertData s = seifert_matrix(BraidWord(2, {1, 1, 1}));
    std::vector<int> scan;
    for (int k = 1; k < 60; ++k) scan.push_back(omega_signature(s, Angle(k, 120)).signature);
    // theta in (0, 1/6): 0; theta in (1/6, 5/6): -2
    EXPECT_EQ(omega_signature(s, Angle(19, 120)).signature, 0);
    EXPECT_EQ(omega_signature(s, Angle(21, 120)).signature, -2);
    const auto at_root = omega_signature(s, Angle(1, 6));
    EXPECT_TRUE(at_root.degenerate);
    EXPECT_EQ(at_root.nullity, 1);
    int jumps = 0;
    for (std::size_t k = 1; k < scan.size(); ++k) jumps += scan[k] != scan[k - 1];
    EXPECT_GE(jumps, 1);
}
