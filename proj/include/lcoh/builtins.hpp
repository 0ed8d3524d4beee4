#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "homalg.hpp"
#include "steenrod.hpp"
#include "towers.hpp"

namespace lcoh {

struct NamedModule {
    AlgebraPtr alg;
    GradedModule module;
    std::string description;
};

// the submodule of a module on everything in degrees >= lo, with its inclusion
inline GradedModule upper_part(const GradedModule& m, int lo, ModuleMap* inclusion) {
    Degreewise sub;
    for (int d = m.lo(); d <= m.hi(); ++d) sub.push_back(d >= lo ? Subspace::full(m.prime(), m.dim(d)) : Subspace(m.prime(), m.dim(d)));
    return restrict_to(m, sub, inclusion);
}

inline std::vector<std::string> builtin_names() {
    return {"k-a1", "a1", "a1-section3-example", "a1-section3-sub", "steenrod-self", "dual-steenrod", "k-steenrod", "a0-k", "dual-a1"};
}

// top is the truncation degree for the Steenrod builtins
inline NamedModule builtin_module(const std::string& name, int top = 8) {
    if (name == "k-a1") {
        auto a = build_A_n(1);
        return {a, trivial_module(a), "ground field over A(1)"};
    }
    if (name == "a1") {
        auto a = build_A_n(1);
        return {a, regular_module(a), "A(1) acting on itself"};
    }
    if (name == "a1-section3-example" || name == "a1-section3-sub") {
        auto a = build_A_n(1);
        GradedModule self = regular_module(a);
        GradedModule m = submodule_generated(self, {{1, milnor_vec(*a, sq_word({1}), 1)}});
        m.name = "<Sq1>";
        if (name == "a1-section3-example") return {a, m, "submodule of A(1) generated by Sq1"};
        GradedModule sub = submodule_generated(self, {{3, milnor_vec(*a, sq_word({2, 1}), 3)}});
        sub.name = "<Sq2Sq1>";
        return {a, sub, "submodule generated by Sq2 x, x = Sq1"};
    }
    if (name == "steenrod-self") {
        auto a = build_truncated_A(top);
        return {a, regular_module(a), "truncated Steenrod algebra acting on itself"};
    }
    if (name == "dual-steenrod") {
        auto a = build_truncated_A(top);
        return {a, dual_module(a, top), "dual Steenrod algebra in degrees [-top, 0]"};
    }
    if (name == "k-steenrod") {
        auto a = build_truncated_A(top);
        return {a, trivial_module(a), "ground field over the truncated Steenrod algebra"};
    }
    if (name == "a0-k") {
        auto a = build_A_n(0);
        return {a, trivial_module(a), "ground field over A(0)"};
    }
    if (name == "dual-a1") {
        auto a = build_A_n(1);
        return {a, dual_module(a, a->top()), "dual of A(1)"};
    }
    throw std::invalid_argument("unknown builtin '" + name + "'");
}

inline IdealSet a1_sq1_set(const AlgebraPtr& a) {
    Ideal I = left_ideal_generated(a, {{1, milnor_vec(*a, sq_word({1}), 1)}}, "(Sq1)");
    return IdealSet::explicit_set(a, {I}, "{(Sq1)}");
}

// Mitchell set on a truncated Steenrod algebra: every ω_n fitting in the window
inline IdealSet mitchell_set(const AlgebraPtr& a) {
    std::vector<Ideal> anns;
    for (int n = 0; a_n_top_degree(n) <= a->top(); ++n) anns.push_back(mitchell_ideal(a, n));
    return IdealSet::mitchell(a, anns);
}

inline IdealSet named_ideal_set(const std::string& name, const AlgebraPtr& a) {
    if (name == "trivial") return IdealSet::trivial(a);
    if (name == "grad") return IdealSet::grad(a);
    if (name == "dist") return IdealSet::dist(a, std::make_shared<GradedModule>(dual_module(a, a->top())));
    if (name == "mit") return mitchell_set(a);
    if (name == "a1-sq1") return a1_sq1_set(a);
    throw std::invalid_argument("unknown ideal set '" + name + "'");
}

// ---- the two worked families ----------------------------------------------------

struct FamilySetup {
    AlgebraPtr alg;
    ModuleFamily family;
    ResolvedChain chain;
    int t = 0;
    std::vector<int> indices;  // the family index i of each member
};

namespace detail {

struct Connecting {
    std::vector<GradedModule> big, sub;
    std::vector<ModuleMap> incl;
    std::vector<Vec> y;
    int t = 0;
};

inline ClassFn connecting_class(std::shared_ptr<Connecting> data) {
    return [data](int i, const Resolution& r, int t) {
        if (t != data->t) throw std::invalid_argument("distinguished class lives in degree " + std::to_string(data->t));
        return connecting_cocycle(r, data->big[i], data->incl[i], data->sub[i], t, {data->y[i]});
    };
}

}  // namespace detail

// k[x], |x| = 2, seen through degree top; member i is k[x]/x^{i+1} = Σ^{2i} dual(k[x], 2i), i = 0..N.
// The distinguished class at t = -2 is the boundary of the bottom class of Σ^{2i} dual(k[x], 2i+2).
// The chain is x-adic: stage m is (x^m) = I_{2m-1}.
inline FamilySetup example1(int N = 20, int top = 44, int stages = 23, int max_s = 4) {
    if (2 * N + 2 > top) throw std::invalid_argument("example 1 needs top >= 2N + 2");
    FamilySetup s;
    s.alg = polynomial_algebra(2, 2, top, false);
    s.t = -2;
    auto data = std::make_shared<detail::Connecting>();
    data->t = -2;
    for (int i = 0; i <= N; ++i) {
        GradedModule big = suspension(dual_module(s.alg, 2 * i + 2), 2 * i);
        ModuleMap inc;
        GradedModule m = upper_part(big, 0, &inc);
        m.name = "k[x]/x^" + std::to_string(i + 1);
        data->big.push_back(big);
        data->sub.push_back(m);
        data->incl.push_back(inc);
        data->y.push_back(Vec{1});
        s.family.members.push_back(m);
        s.indices.push_back(i);
    }
    s.family.name = "example1";
    TailDescriptor tail;
    tail.kind = TailDescriptor::Kind::ShiftedTruncation;
    tail.from = N + 1;
    tail.growth = TailDescriptor::Growth::Affine;
    tail.d_a = 2;
    tail.c_a = 2;
    s.family.tail = tail;
    s.family.witness = detail::connecting_class(data);
    std::vector<Ideal> ideals;
    std::vector<int> index;
    for (int m = 1; m <= stages; ++m) {
        ideals.push_back(grad_ideal(s.alg, 2 * m - 1));
        ideals.back().name = "(x^" + std::to_string(m) + ")";
        index.push_back(m);
    }
    s.chain = resolve_chain(s.alg, ideals, index, max_s, std::min(top, 2 * N + 2));
    return s;
}

// the dual Steenrod algebra seen through degree top; member i is Σ^{c} ιΓ^{>= -c} with c = 2^i - 2, i = 1..imax.
// ξ_i, dual to Sq(0,...,0,1), sits one degree below in Σ^{c} ιΓ^{>= -(c+1)}; its boundary is the class at t = -1.
inline FamilySetup example2(int imax = 4, int top = 16, int max_s = 2) {
    if ((1 << imax) - 1 > top) throw std::invalid_argument("example 2 needs top >= 2^imax - 1");
    FamilySetup s;
    s.alg = build_truncated_A(top);
    s.t = -1;
    auto data = std::make_shared<detail::Connecting>();
    data->t = -1;
    for (int i = 1; i <= imax; ++i) {
        int c = (1 << i) - 2;
        GradedModule big = suspension(dual_module(s.alg, c + 1), c);
        ModuleMap inc;
        GradedModule m = upper_part(big, 0, &inc);
        m.name = "S^" + std::to_string(c) + "Gamma>=-" + std::to_string(c);
        Milnor xi(i, 0);
        xi[i - 1] = 1;
        int g = milnor_index(*s.alg, xi);
        Vec y(big.dim(-1), 0);
        y[s.alg->local(g)] = 1;
        data->big.push_back(big);
        data->sub.push_back(m);
        data->incl.push_back(inc);
        data->y.push_back(y);
        s.family.members.push_back(m);
        s.indices.push_back(i);
    }
    s.family.name = "example2";
    TailDescriptor tail;
    tail.kind = TailDescriptor::Kind::ShiftedTruncation;
    tail.from = imax + 1;
    tail.growth = TailDescriptor::Growth::Exponential;
    tail.d_a = 1;
    tail.d_b = -2;
    tail.c_a = 1;
    tail.c_b = -2;
    s.family.tail = tail;
    s.family.witness = detail::connecting_class(data);
    int J = std::min(top + 1, (1 << imax) + 1);
    s.chain = resolve_grad_chain(s.alg, J, max_s, (1 << imax) - 1);
    return s;
}

// ---- towers ---------------------------------------------------------------------

inline Tower constant_tower(const std::string& name, const GradedModule& m, int K = 3) {
    Tower T;
    T.name = name;
    for (int i = 0; i < K; ++i) T.modules.push_back(m);
    for (int i = 0; i + 1 < K; ++i) T.maps.push_back(identity_map(m));
    T.tail = Tower::Tail::Constant;
    return T;
}

// Γ*/I_{i+1} with the projections; past the horizon the quotients are all of the window
inline Tower quotient_tower(const std::string& name, const AlgebraPtr& a, int K) {
    Tower T;
    T.name = name;
    const auto& A = *a;
    for (int i = 0; i < K; ++i) T.modules.push_back(quotient_algebra_module(grad_ideal(a, i + 1)));
    for (int i = 0; i + 1 < K; ++i) {
        ModuleMap f{0, 0, A.top(), {}};
        for (int d = 0; d <= A.top(); ++d)
            f.m.push_back(quotient_map(A.dim(d), *grad_ideal(a, i + 1).deg[d]) * quotient_section(A.dim(d), *grad_ideal(a, i + 2).deg[d]));
        T.maps.push_back(f);
    }
    T.tail = K > A.top() ? Tower::Tail::Constant : Tower::Tail::Unspecified;
    return T;
}

inline ModuleMap scalar_block_map(const GradedModule& m, const Matrix& mat, int degree) {
    ModuleMap f = zero_map(m, m);
    f.m[degree - m.lo()] = mat;
    return f;
}

inline Tower endo_tower(const std::string& name, const GradedModule& m, const ModuleMap& e, int K = 3) {
    Tower T;
    T.name = name;
    for (int i = 0; i < K; ++i) T.modules.push_back(m);
    for (int i = 0; i + 1 < K; ++i) T.maps.push_back(e);
    T.tail = Tower::Tail::RepeatLast;
    T.endo = e;
    return T;
}

// conn_{n0}(m) ⊃ conn_{n0+1}(m) ⊃ ... with the inclusions
inline Tower conn_tower(const std::string& name, const GradedModule& m, int n0, int K) {
    Tower T;
    T.name = name;
    std::vector<ModuleMap> inc(K);
    for (int i = 0; i < K; ++i) T.modules.push_back(conn_n(m, n0 + i, &inc[i]));
    for (int i = 0; i + 1 < K; ++i) {
        ModuleMap f{0, m.lo(), m.hi(), {}};
        for (int d = m.lo(); d <= m.hi(); ++d) {
            std::vector<Vec> cols;
            for (int c = 0; c < inc[i + 1].at(d).cols(); ++c) cols.push_back(*solve(inc[i].at(d), inc[i + 1].at(d).col_vec(c)));
            f.m.push_back(Matrix::from_columns(m.prime(), T.modules[i].dim(d), cols));
        }
        T.maps.push_back(f);
    }
    bool last_zero = T.modules.back().total_dim() == 0;
    T.tail = last_zero ? Tower::Tail::Constant : Tower::Tail::Unspecified;
    return T;
}

inline ModuleMap block_diagonal(const std::vector<ModuleMap>& fs, const std::vector<GradedModule>& src, const std::vector<GradedModule>& tgt, const GradedModule& S,
                                const GradedModule& Tg) {
    ModuleMap out{0, S.lo(), S.hi(), {}};
    for (int d = S.lo(); d <= S.hi(); ++d) {
        Matrix m(S.prime(), Tg.dim(d), S.dim(d));
        int ro = 0, co = 0;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            int r = tgt[k].known(d) ? tgt[k].dim(d) : 0, c = src[k].known(d) ? src[k].dim(d) : 0;
            if (r && c) {
                const Matrix& b = fs[k].at(d);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < c; ++j) m.set(ro + i, co + j, b.at(i, j));
            }
            ro += r;
            co += c;
        }
        out.m.push_back(m);
    }
    return out;
}

// termwise direct sum of towers with the same length and tail kind
inline Tower sum_tower(const std::string& name, const Tower& a, const Tower& b) {
    if (a.modules.size() != b.modules.size()) throw std::invalid_argument("sum_tower: lengths differ");
    Tower T;
    T.name = name;
    for (std::size_t i = 0; i < a.modules.size(); ++i) T.modules.push_back(direct_sum({a.modules[i], b.modules[i]}));
    for (std::size_t i = 0; i < a.maps.size(); ++i)
        T.maps.push_back(block_diagonal({a.maps[i], b.maps[i]}, {a.modules[i + 1], b.modules[i + 1]}, {a.modules[i], b.modules[i]}, T.modules[i + 1], T.modules[i]));
    auto endo = [](const Tower& x) { return x.tail == Tower::Tail::RepeatLast ? x.endo : identity_map(x.modules.back()); };
    T.tail = (a.tail == Tower::Tail::Constant && b.tail == Tower::Tail::Constant) ? Tower::Tail::Constant : Tower::Tail::RepeatLast;
    if (T.tail == Tower::Tail::RepeatLast)
        T.endo = block_diagonal({endo(a), endo(b)}, {a.modules.back(), b.modules.back()}, {a.modules.back(), b.modules.back()}, T.modules.back(), T.modules.back());
    return T;
}

// ten towers exercising every tail kind that admits a finite model
inline std::vector<Tower> tower_corpus() {
    std::vector<Tower> out;
    auto a1 = build_A_n(1);
    auto T8 = build_truncated_A(8);
    auto T6 = build_truncated_A(6);
    auto kx = polynomial_algebra(2, 2, 10, false);
    GradedModule k1 = trivial_module(a1);
    out.push_back(constant_tower("constant-k", k1));
    out.push_back(constant_tower("constant-dual", dual_module(T8, 4)));
    out.push_back(endo_tower("zero-maps", k1, zero_map(k1, k1)));
    out.push_back(quotient_tower("steenrod-quotients", T6, 8));
    out.push_back(quotient_tower("a1-quotients", a1, 8));
    out.push_back(quotient_tower("kx-truncations", kx, 12));
    GradedModule kk = direct_sum({k1, k1});
    out.push_back(endo_tower("idempotent", kk, scalar_block_map(kk, Matrix::from_rows(2, {{1, 0}, {0, 0}}), 0)));
    out.push_back(conn_tower("conn-inclusions", dual_module(T8, 6), -6, 8));
    out.push_back(endo_tower("nilpotent", kk, scalar_block_map(kk, Matrix::from_rows(2, {{0, 1}, {0, 0}}), 0)));
    out.push_back(sum_tower("sum", constant_tower("", k1), endo_tower("", kk, scalar_block_map(kk, Matrix::from_rows(2, {{1, 0}, {0, 0}}), 0))));
    return out;
}

// M_i = span(e_i, e_{i+1}, ...) in degree 0 with the inclusions, cut at the horizon: the images in M_0
// shrink at every step of the window and the tail continues the pattern, so Mittag-Leffler fails
inline Tower non_mittag_leffler_tower(int K = 6) {
    auto a1 = build_A_n(1);
    Tower T;
    T.name = "shrinking-images";
    for (int i = 0; i < K; ++i) {
        GradedModule m(a1, 0, 0, {K - i}, true, true);
        m.name = "k^" + std::to_string(K - i);
        T.modules.push_back(m);
    }
    for (int i = 0; i + 1 < K; ++i) {
        Matrix inc(2, K - i, K - i - 1);
        for (int c = 0; c < K - i - 1; ++c) inc.set(c + 1, c, 1);
        T.maps.push_back(ModuleMap{0, 0, 0, {inc}});
    }
    T.tail = Tower::Tail::NonMittagLeffler;
    return T;
}

}  // namespace lcoh
