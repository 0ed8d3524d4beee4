#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace lcoh;

namespace {

Matrix random_matrix(std::mt19937& rng, int p, int r, int c) {
    Matrix m(p, r, c);
    std::uniform_int_distribution<int> u(0, p - 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(i, j, u(rng));
    return m;
}

}  // namespace

TEST(Fplin, RankMatchesMinorsAndEnumeration) {
    std::mt19937 rng(7);
    for (int p : {2, 3, 5}) {
        for (int trial = 0; trial < 40; ++trial) {
            int r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
            Matrix m = random_matrix(rng, p, r, c);
            int rk = rank(m);
            EXPECT_EQ(rk, oracle::rank_by_minors(m));
            if (p < 5) { EXPECT_EQ(rk, oracle::rank_by_enumeration(m)); }
        }
    }
}

TEST(Fplin, KernelMatchesEnumeration) {
    std::mt19937 rng(11);
    for (int p : {2, 3}) {
        for (int trial = 0; trial < 30; ++trial) {
            Matrix m = random_matrix(rng, p, 1 + trial % 3, 2 + trial % 4);
            Subspace k = kernel_basis(m);
            auto all = oracle::kernel_by_enumeration(m);
            std::size_t expect = 1;
            for (int i = 0; i < k.dim(); ++i) expect *= p;
            EXPECT_EQ(all.size(), expect);
            for (const auto& v : all) EXPECT_TRUE(k.contains(v));
        }
    }
}

TEST(Fplin, Gf2FastPathAgreesWithGeneric) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix a = random_matrix(rng, 2, 5, 6), b = random_matrix(rng, 2, 6, 4);
        Matrix ab = a * b;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 4; ++j) {
                int s = 0;
                for (int k = 0; k < 6; ++k) s += a.at(i, k) * b.at(k, j);
                EXPECT_EQ(ab.at(i, j), s % 2);
            }
    }
}

TEST(Fplin, SolveAndInconsistency) {
    Matrix m = Matrix::from_rows(3, {{1, 2}, {2, 1}});
    auto x = solve(m, Vec{0, 0});
    ASSERT_TRUE(x);
    Matrix s = Matrix::from_rows(2, {{1, 1}, {1, 1}});
    EXPECT_FALSE(solve(s, Vec{1, 0}));
    EXPECT_THROW(solve(s, Vec{1}), std::invalid_argument);
}

TEST(Fplin, SubspaceOperations) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix a = random_matrix(rng, 3, 2, 4), b = random_matrix(rng, 3, 2, 4);
        Subspace U = Subspace::row_space(a), V = Subspace::row_space(b);
        Subspace S = U.sum(V), I = U.intersect(V);
        EXPECT_EQ(S.dim() + I.dim(), U.dim() + V.dim());
        EXPECT_TRUE(U.contains(I) && V.contains(I) && S.contains(U) && S.contains(V));
        for (const auto& v : oracle::all_vectors(3, 4)) EXPECT_EQ(I.contains(v), U.contains(v) && V.contains(v));
    }
}

TEST(Fplin, QuotientMapKillsExactlyTheSubspace) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        Subspace U = Subspace::row_space(random_matrix(rng, 2, 2, 5));
        Matrix q = quotient_map(5, U);
        EXPECT_EQ(q.rows(), 5 - U.dim());
        for (const auto& v : oracle::all_vectors(2, 5)) EXPECT_EQ(is_zero_vec(q.apply(v)), U.contains(v));
    }
}

TEST(Fplin, MixedPrimesRejected) {
    Matrix a(2, 2, 2), b(3, 2, 2);
    EXPECT_THROW(a * b, std::invalid_argument);
    EXPECT_THROW(Matrix(4, 1, 1), std::invalid_argument);
}

TEST(Fplin, TriLogic) {
    EXPECT_EQ(tri_and(Tri::True, Tri::Unknown), Tri::Unknown);
    EXPECT_EQ(tri_and(Tri::False, Tri::Unknown), Tri::False);
    EXPECT_EQ(tri_and(Tri::True, Tri::True), Tri::True);
}
