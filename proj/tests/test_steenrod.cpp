#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace lcoh;

TEST(Steenrod, BasisEnumeration) {
    EXPECT_EQ(milnor_basis(0), (std::vector<Milnor>{{}}));
    EXPECT_EQ(milnor_basis(3), (std::vector<Milnor>{{3}, {0, 1}}));
    auto t1 = build_truncated_A(1);
    EXPECT_EQ(t1->size(), 2);
    auto t3 = build_truncated_A(3);
    EXPECT_EQ(t3->size(), 5);
    std::vector<int> dims;
    for (int d = 0; d <= 3; ++d) dims.push_back(t3->dim(d));
    EXPECT_EQ(dims, (std::vector<int>{1, 1, 1, 2}));
}

TEST(Steenrod, SmallProducts) {
    EXPECT_TRUE(milnor_product(Milnor{1}, Milnor{1}).is_zero());
    // two allowable matrices: one gives Sq(3), the other Sq(0,1)
    MilnorElement expect;
    expect.terms = {{3}, {0, 1}};
    EXPECT_EQ(milnor_product(Milnor{2}, Milnor{1}), expect);
    for (int d = 0; d <= 12; ++d)
        for (const auto& x : milnor_basis(d)) {
            MilnorElement just;
            just.terms = {x};
            EXPECT_EQ(milnor_product(Milnor{}, x), just);
            EXPECT_EQ(milnor_product(x, Milnor{}), just);
        }
}

TEST(Steenrod, ProductMatchesPolynomialAction) {
    for (int d1 = 1; d1 <= 5; ++d1)
        for (int d2 = 1; d1 + d2 <= 9; ++d2)
            for (const auto& r : milnor_basis(d1))
                for (const auto& s : milnor_basis(d2))
                    EXPECT_EQ(milnor_product(r, s), oracle::product_by_action(r, s)) << milnor_label(r) << " " << milnor_label(s);
}

TEST(Steenrod, AdemRelations) {
    for (int b = 1; b <= 7; ++b)
        for (int a = 1; a < 2 * b && a + b <= 14; ++a) {
            MilnorElement rhs;
            for (auto [x, y] : oracle::adem(a, b))
                for (const auto& m : sq_word({x, y}).terms) rhs.toggle(m);
            EXPECT_EQ(sq_word({a, b}), rhs) << a << "," << b;
        }
}

TEST(Steenrod, AssociativeOnTruncation) {
    auto A = build_truncated_A(10);
    EXPECT_FALSE(A->check_associativity());
}

TEST(Steenrod, SubalgebrasAn) {
    auto a0 = build_A_n(0);
    EXPECT_EQ(a0->size(), 2);
    EXPECT_EQ(a0->top(), 1);
    auto a1 = build_A_n(1);
    EXPECT_EQ(a1->size(), 8);
    std::vector<int> dims;
    for (int d = 0; d <= a1->top(); ++d) dims.push_back(a1->dim(d));
    EXPECT_EQ(dims, (std::vector<int>{1, 1, 1, 2, 1, 1, 1}));
    auto a2 = build_A_n(2);
    EXPECT_EQ(a2->size(), 64);
    EXPECT_EQ(a2->top(), 23);
    EXPECT_EQ(a2->dim(23), 1);
    EXPECT_EQ(a1->dim(6), 1);
    EXPECT_FALSE(a1->check_associativity());
    EXPECT_EQ(omega(1).degree, -6);
    EXPECT_EQ(omega(2).degree, -23);
}

TEST(Steenrod, ChainOfSubalgebrasAgrees) {
    auto a1 = build_A_n(1), a2 = build_A_n(2), t = build_truncated_A(6);
    for (const auto* pair : {&a2, &t}) {
        const auto& big = **pair;
        for (int x = 0; x < a1->size(); ++x)
            for (int y = 0; y < a1->size(); ++y) {
                int d = a1->degree(x) + a1->degree(y);
                if (d > a1->top()) continue;
                int bx = milnor_index(big, milnor_of(*a1, x)), by = milnor_index(big, milnor_of(*a1, y));
                ASSERT_GE(bx, 0);
                const Vec& small = a1->product(x, y);
                const Vec& large = big.product(bx, by);
                for (int i = 0; i < big.dim(d); ++i) {
                    int si = milnor_index(*a1, milnor_of(big, big.global(d, i)));
                    EXPECT_EQ(large[i], si < 0 ? 0 : small[a1->local(si)]);
                }
            }
    }
}

TEST(Steenrod, PoincareDualityPairing) {
    // a ⊗ b -> coefficient of the top class in ab is nonsingular
    for (int n : {0, 1}) {
        auto A = build_A_n(n);
        int top = A->top();
        for (int d = 0; d <= top; ++d) {
            Matrix pair(2, A->dim(d), A->dim(top - d));
            for (int i = 0; i < A->dim(d); ++i)
                for (int j = 0; j < A->dim(top - d); ++j) pair.set(i, j, A->product(A->global(d, i), A->global(top - d, j))[0]);
            EXPECT_EQ(rank(pair), A->dim(d));
        }
    }
}

TEST(Steenrod, MitchellIdeals) {
    auto T = build_truncated_A(6);
    Ideal a0 = mitchell_ideal(T, 0);
    EXPECT_TRUE(a0.deg[0]->is_zero());
    EXPECT_TRUE(a0.deg[1]->is_zero());  // Sq(1) acts nontrivially on ω_0
    for (int d = 2; d <= 6; ++d) EXPECT_TRUE(a0.deg[d]->is_full());
    Ideal a1 = mitchell_ideal(T, 1);
    EXPECT_EQ(a1.proper(), Tri::True);
    // nothing in A(1) kills ω_1
    auto A1 = build_A_n(1);
    for (int g = 1; g < A1->size(); ++g) {
        int tg = milnor_index(*T, milnor_of(*A1, g));
        Vec v = T->unit_vec(tg);
        EXPECT_EQ(a1.contains(T->degree(tg), v), Tri::False) << A1->label(g);
    }
    // and no nonzero combination of A(1) elements either
    for (int d = 1; d <= 6; ++d) {
        std::vector<Vec> cols;
        for (int i = 0; i < A1->dim(d); ++i) cols.push_back(T->unit_vec(milnor_index(*T, milnor_of(*A1, A1->global(d, i)))));
        Subspace s = Subspace::span(2, T->dim(d), cols);
        EXPECT_TRUE(s.intersect(*a1.deg[d]).is_zero());
    }
    EXPECT_THROW(mitchell_ideal(T, 2), std::invalid_argument);
}
