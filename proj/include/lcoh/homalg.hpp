#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "graded.hpp"
#include "idealsets.hpp"

namespace lcoh {

// Free module on generators of nondecreasing degree. Degree-t basis: pairs (k, b) with
// b running over the algebra basis in degree t - deg(k), ordered by k then b.
class FreeModule {
public:
    FreeModule() = default;
    explicit FreeModule(AlgebraPtr a) : alg_(std::move(a)) {}

    const AlgebraPtr& algebra() const { return alg_; }
    int num_gens() const { return int(deg_.size()); }
    int gen_degree(int k) const { return deg_[k]; }
    const std::vector<int>& gen_degrees() const { return deg_; }
    void add_generator(int d) {
        if (!deg_.empty() && d < deg_.back()) throw std::logic_error("generators must be added in nondecreasing degree");
        deg_.push_back(d);
    }

    int block_dim(int t, int k) const {
        int r = t - deg_[k];
        if (r < 0) return 0;
        if (r > alg_->top()) {
            if (alg_->complete()) return 0;
            throw UnknownDegree("free module degree " + std::to_string(t) + " beyond algebra truncation");
        }
        return alg_->dim(r);
    }
    int offset(int t, int k) const {
        int o = 0;
        for (int i = 0; i < k; ++i) o += block_dim(t, i);
        return o;
    }
    int dim(int t) const { return offset(t, num_gens()); }

    // visit the nonzero coordinates of x in degree t as (generator, algebra basis element, coefficient)
    template <class F>
    void for_each_term(int t, const Vec& x, F&& f) const {
        int o = 0;
        for (int k = 0; k < num_gens(); ++k) {
            int bd = block_dim(t, k);
            for (int i = 0; i < bd; ++i)
                if (x[o + i]) f(k, alg_->global(t - deg_[k], i), int(x[o + i]));
            o += bd;
        }
    }

    // a·x for an algebra basis element a
    Vec act(int a, int t, const Vec& x) const {
        const auto& A = *alg_;
        int e = t + A.degree(a);
        Vec out(dim(e), 0);
        for_each_term(t, x, [&](int k, int b, int c) {
            if (!A.product_known(a, b)) {
                if (A.complete()) return;
                throw UnknownDegree("free module action beyond algebra truncation");
            }
            int o = offset(e, k);
            const Vec& ab = A.product(a, b);
            for (std::size_t i = 0; i < ab.size(); ++i)
                if (ab[i]) out[o + i] = std::uint8_t((out[o + i] + c * ab[i]) % A.prime());
        });
        return out;
    }
    Vec gen_vec(int k) const {
        Vec v(dim(deg_[k]), 0);
        v[offset(deg_[k], k)] = 1;
        return v;
    }

private:
    AlgebraPtr alg_;
    std::vector<int> deg_;
};

struct Resolution {
    GradedModule module;
    int max_s = 0, max_t = 0, lo = 0;
    std::vector<FreeModule> F;                // stages 0..max_s
    std::vector<std::vector<Vec>> dgen;       // d of generator k of F_s, in F_{s-1} (the module for s = 0)
    std::vector<std::map<int, Matrix>> dmat;  // d_s in internal degree t
    std::vector<bool> gens_complete;          // all generators of F_s lie in degrees <= max_t

    const Matrix& d(int s, int t) const {
        auto it = dmat[s].find(t);
        if (it == dmat[s].end()) throw UnknownDegree("differential d_" + std::to_string(s) + " not computed in degree " + std::to_string(t));
        return it->second;
    }
    int gens_in_degree(int s, int t) const {
        int c = 0;
        for (int x : F[s].gen_degrees()) c += x == t;
        return c;
    }
    // generators of F_s are known through degree e
    bool gens_known_through(int s, int e) const { return gens_complete[s] || e <= max_t; }
};

inline int top_nonzero_degree(const GradedModule& m) {
    for (int d = m.hi(); d >= m.lo(); --d)
        if (m.dim(d)) return d;
    return m.lo() - 1;
}

namespace detail {

inline Matrix build_d(const Resolution& r, int s, int t) {
    const FreeModule& Fs = r.F[s];
    int rows = s == 0 ? r.module.dim(t) : r.F[s - 1].dim(t);
    std::vector<Vec> cols;
    const auto& A = *r.module.algebra();
    for (int k = 0; k < Fs.num_gens(); ++k) {
        int e = Fs.gen_degree(k);
        if (e > t) break;
        int rd = t - e;
        if (rd > A.top()) {
            if (A.complete()) continue;
            throw UnknownDegree("degree beyond truncation");
        }
        for (int i = 0; i < A.dim(rd); ++i) {
            int b = A.global(rd, i);
            if (s == 0)
                cols.push_back(r.module.act(b, e, r.dgen[0][k]));
            else
                cols.push_back(r.F[s - 1].act(b, e, r.dgen[s][k]));
        }
    }
    return Matrix::from_columns(A.prime(), rows, cols);
}

}  // namespace detail

// minimal free resolution, lowest internal degree first
inline Resolution minimal_resolution(const GradedModule& n, int max_s, int max_t) {
    const auto& A = *n.algebra();
    if (!n.zero_below()) throw std::invalid_argument("resolution needs a module that is bounded below");
    Resolution r;
    r.module = n;
    r.max_s = max_s;
    r.max_t = max_t;
    r.lo = n.lo();
    if (!A.complete() && max_t - n.lo() > A.top())
        throw UnknownDegree("window exhausted: resolving through degree " + std::to_string(max_t) + " needs the algebra through degree " +
                            std::to_string(max_t - n.lo()));
    for (int t = n.lo(); t <= max_t; ++t)
        if (!n.known(t)) throw UnknownDegree("window exhausted: module unknown in degree " + std::to_string(t));
    r.F.assign(max_s + 1, FreeModule(n.algebra()));
    r.dgen.assign(max_s + 1, {});
    r.dmat.assign(max_s + 1, {});
    for (int t = n.lo(); t <= max_t; ++t) {
        for (int s = 0; s <= max_s; ++s) {
            Matrix D = detail::build_d(r, s, t);
            Subspace K = s == 0 ? Subspace::full(A.prime(), n.dim(t)) : kernel_basis(r.dmat[s - 1].at(t));
            Subspace im = image(D);
            std::vector<Vec> cols;
            for (int c = 0; c < D.cols(); ++c) cols.push_back(D.col_vec(c));
            for (const auto& v : K.vectors()) {
                if (im.contains(v)) continue;
                r.F[s].add_generator(t);
                r.dgen[s].push_back(v);
                im = im.sum(Subspace::span(A.prime(), D.rows(), {v}));
                cols.push_back(v);
            }
            r.dmat[s][t] = Matrix::from_columns(A.prime(), D.rows(), cols);
        }
    }
    r.gens_complete.assign(max_s + 1, false);
    if (n.zero_above()) {
        int b = top_nonzero_degree(n);
        for (int s = 0; s <= max_s; ++s) {
            if (s == 0)
                r.gens_complete[s] = max_t >= b;
            else
                r.gens_complete[s] = A.complete() && max_t >= b + s * A.top();
        }
    }
    return r;
}

// ---- Hom complexes ----------------------------------------------------------

// Hom^t(F, M) = ⊕_k M^{deg k + t}
struct HomLayout {
    std::vector<int> off;  // size num_gens + 1
    bool known = true;
    int total() const { return off.back(); }
};

inline HomLayout hom_layout(const FreeModule& F, const GradedModule& m, int t) {
    HomLayout h;
    h.off.push_back(0);
    for (int k = 0; k < F.num_gens(); ++k) {
        int e = F.gen_degree(k) + t;
        int dd = 0;
        if (m.known(e))
            dd = m.dim(e);
        else
            h.known = false;
        h.off.push_back(h.off.back() + dd);
    }
    return h;
}

// the value of the cochain c on an element x of F in degree e
inline Vec evaluate_cochain(const FreeModule& F, const HomLayout& L, const GradedModule& m, int t, const Vec& c, int e, const Vec& x) {
    Vec out(m.known(e + t) ? m.dim(e + t) : 0, 0);
    if (out.empty()) return out;
    F.for_each_term(e, x, [&](int k, int b, int coef) {
        int src = F.gen_degree(k) + t;
        if (!m.known(src) || m.dim(src) == 0) return;
        Vec val(c.begin() + L.off[k], c.begin() + L.off[k + 1]);
        add_scaled(out, m.act(b, src, val), coef, m.prime());
    });
    return out;
}

// δ: Hom^t(F_s, M) -> Hom^t(F_{s+1}, M)
inline Matrix coboundary(const Resolution& r, int s, const GradedModule& m, int t) {
    const FreeModule& Fs = r.F[s];
    const FreeModule& Fn = r.F[s + 1];
    HomLayout Ls = hom_layout(Fs, m, t), Ln = hom_layout(Fn, m, t);
    Matrix D(m.prime(), Ln.total(), Ls.total());
    for (int c = 0; c < Ls.total(); ++c) {
        Vec unit(Ls.total(), 0);
        unit[c] = 1;
        for (int g = 0; g < Fn.num_gens(); ++g) {
            int e = Fn.gen_degree(g);
            if (Ln.off[g + 1] == Ln.off[g]) continue;
            Vec v = evaluate_cochain(Fs, Ls, m, t, unit, e, r.dgen[s + 1][g]);
            for (std::size_t i = 0; i < v.size(); ++i) D.set(Ln.off[g] + int(i), c, v[i]);
        }
    }
    return D;
}

struct ExtGroup {
    int s = 0, t = 0;
    int cochain_dim = 0;
    Subspace cocycles, coboundaries;
    std::vector<Vec> reps;  // cocycles whose classes form a basis
    Matrix q;               // C^s -> C^s / B
    Matrix rep_image;       // columns q·rep
    bool certified = false;
    int dim() const { return int(reps.size()); }
    Vec coords(const Vec& cocycle) const {
        if (!cocycles.contains(cocycle)) throw std::invalid_argument("not a cocycle");
        if (reps.empty()) return {};
        auto x = solve(rep_image, q.apply(cocycle));
        if (!x) throw std::logic_error("cocycle outside the span of representatives");
        return *x;
    }
    bool is_zero_class(const Vec& cocycle) const { return coboundaries.contains(cocycle); }
};

inline bool cell_certified(const Resolution& r, const GradedModule& m, int s, int t) {
    if (!m.zero_above()) return false;
    int need = top_nonzero_degree(m) - t;
    for (int x = std::max(0, s - 1); x <= s + 1; ++x) {
        if (x > r.max_s) return false;
        if (!r.gens_known_through(x, need)) return false;
        if (!hom_layout(r.F[x], m, t).known) return false;
    }
    return true;
}

inline ExtGroup ext_group(const Resolution& r, const GradedModule& m, int s, int t) {
    if (s + 1 > r.max_s) throw std::invalid_argument("Ext^" + std::to_string(s) + " needs the resolution through stage " + std::to_string(s + 1));
    ExtGroup g;
    g.s = s;
    g.t = t;
    HomLayout L = hom_layout(r.F[s], m, t);
    g.cochain_dim = L.total();
    g.cocycles = kernel_basis(coboundary(r, s, m, t));
    g.coboundaries = s == 0 ? Subspace(m.prime(), L.total()) : image(coboundary(r, s - 1, m, t));
    g.q = quotient_map(L.total(), g.coboundaries);
    std::vector<Vec> imgs;
    Subspace seen(m.prime(), g.q.rows());
    for (const auto& z : g.cocycles.vectors()) {
        Vec qz = g.q.apply(z);
        if (seen.contains(qz)) continue;
        seen = seen.sum(Subspace::span(m.prime(), g.q.rows(), {qz}));
        g.reps.push_back(z);
        imgs.push_back(qz);
    }
    g.rep_image = Matrix::from_columns(m.prime(), g.q.rows(), imgs);
    g.certified = cell_certified(r, m, s, t) || (s == 0 && g.dim() == 0 && L.known);
    return g;
}

struct ExtTable {
    int max_s = 0, t_lo = 0, t_hi = -1;
    std::vector<std::vector<int>> dim;         // [s][t - t_lo]
    std::vector<std::vector<bool>> certified;  // same shape
    int at(int s, int t) const { return dim[s][t - t_lo]; }
};

// Ext^{s,t}(source, target) for 0 <= s <= max_s and t in [t_lo, t_hi]
inline ExtTable ext(const GradedModule& source, const GradedModule& target, int max_s, int max_t, int t_lo, int t_hi) {
    Resolution r = minimal_resolution(source, max_s + 1, max_t);
    ExtTable tab{max_s, t_lo, t_hi, {}, {}};
    for (int s = 0; s <= max_s; ++s) {
        std::vector<int> d;
        std::vector<bool> c;
        for (int t = t_lo; t <= t_hi; ++t) {
            ExtGroup g = ext_group(r, target, s, t);
            d.push_back(g.dim());
            c.push_back(g.certified);
        }
        tab.dim.push_back(d);
        tab.certified.push_back(c);
    }
    return tab;
}

// ---- chain maps -------------------------------------------------------------

struct ChainMap {
    std::vector<std::vector<Vec>> img;  // img[s][k]: image of generator k of the source F_s
};

// φ applied to an element of the source F_s in degree e
inline Vec apply_chain_map(const ChainMap& phi, const Resolution& src, const Resolution& tgt, int s, int e, const Vec& x) {
    Vec out(tgt.F[s].dim(e), 0);
    src.F[s].for_each_term(e, x, [&](int k, int b, int c) {
        add_scaled(out, tgt.F[s].act(b, src.F[s].gen_degree(k), phi.img[s][k]), c, tgt.module.prime());
    });
    return out;
}

// lift f: src.module -> tgt.module to the resolutions
inline ChainMap lift_chain_map(const Resolution& src, const Resolution& tgt, const ModuleMap& f, int max_s) {
    ChainMap phi;
    phi.img.assign(max_s + 1, {});
    for (int s = 0; s <= max_s; ++s)
        for (int k = 0; k < src.F[s].num_gens(); ++k) {
            int e = src.F[s].gen_degree(k);
            if (e > tgt.max_t) throw UnknownDegree("chain map lift beyond target resolution");
            Vec rhs = s == 0 ? f.at(e).apply(src.dgen[0][k]) : apply_chain_map(phi, src, tgt, s - 1, e, src.dgen[s][k]);
            auto x = solve(tgt.d(s, e), rhs);
            if (!x) throw std::logic_error("chain map does not lift: target resolution not exact");
            phi.img[s].push_back(*x);
        }
    return phi;
}

// c ↦ c∘φ_s : Hom^t(tgt F_s, M) -> Hom^t(src F_s, M)
inline Vec pullback_cochain(const ChainMap& phi, const Resolution& src, const Resolution& tgt, int s, const GradedModule& m, int t, const Vec& c) {
    HomLayout Lt = hom_layout(tgt.F[s], m, t), Ls = hom_layout(src.F[s], m, t);
    Vec out(Ls.total(), 0);
    for (int k = 0; k < src.F[s].num_gens(); ++k) {
        if (Ls.off[k + 1] == Ls.off[k]) continue;
        Vec v = evaluate_cochain(tgt.F[s], Lt, m, t, c, src.F[s].gen_degree(k), phi.img[s][k]);
        std::copy(v.begin(), v.end(), out.begin() + Ls.off[k]);
    }
    return out;
}

// ---- local cohomology towers ----------------------------------------------------

// Resolutions of Γ*/J for a decreasing chain of ideals, with lifts of the projections
struct ResolvedChain {
    AlgebraPtr alg;
    std::vector<Ideal> ideals;
    std::vector<int> index;  // stage labels
    std::vector<GradedModule> quotients;
    std::vector<Resolution> res;
    std::vector<ChainMap> phi;  // phi[p]: resolution of stage p+1 -> resolution of stage p
    int max_s = 0, max_t = 0;
    int stages() const { return int(ideals.size()); }
};

inline ResolvedChain resolve_chain(const AlgebraPtr& alg, const std::vector<Ideal>& ideals, const std::vector<int>& index, int max_s, int max_t) {
    ResolvedChain c;
    c.alg = alg;
    c.ideals = ideals;
    c.index = index;
    c.max_s = max_s;
    c.max_t = max_t;
    const auto& A = *alg;
    for (const auto& I : ideals) {
        c.quotients.push_back(quotient_algebra_module(I));
        c.res.push_back(minimal_resolution(c.quotients.back(), max_s, max_t));
    }
    for (int p = 0; p + 1 < c.stages(); ++p) {
        if (ideal_leq(ideals[p + 1], ideals[p]) != Tri::True) throw std::invalid_argument("ideal chain is not decreasing at stage " + std::to_string(p));
        ModuleMap f{0, 0, A.top(), {}};
        for (int d = 0; d <= A.top(); ++d) {
            Matrix qd = quotient_map(A.dim(d), *ideals[p].deg[d]);
            Matrix sd = quotient_section(A.dim(d), *ideals[p + 1].deg[d]);
            f.m.push_back(qd * sd);
        }
        c.phi.push_back(lift_chain_map(c.res[p + 1], c.res[p], f, max_s));
    }
    return c;
}

inline ResolvedChain resolve_grad_chain(const AlgebraPtr& alg, int j_max, int max_s, int max_t) {
    std::vector<Ideal> ideals;
    std::vector<int> index;
    for (int j = 1; j <= j_max; ++j) {
        ideals.push_back(grad_ideal(alg, j));
        index.push_back(j);
    }
    return resolve_chain(alg, ideals, index, max_s, max_t);
}

inline ResolvedChain resolve_ideal_set(const IdealSet& s, int j_max, int max_s, int max_t) {
    auto ideals = s.chain(j_max);
    // grad stages are labelled by j, distinguished and Mitchell stages by N
    std::vector<int> index;
    int first = s.kind == IdealSet::Kind::Grad ? 1 : 0;
    for (int p = 0; p < int(ideals.size()); ++p) index.push_back(first + p);
    return resolve_chain(s.alg, ideals, index, max_s, max_t);
}

struct Stabilization {
    bool stabilized = false;
    int from_stage = -1;  // position in the chain
    int value = -1;
    std::string certificate;  // "vanishing-range", "free-stage", "run-length"
    bool horizon_bounded = true;
};

struct LocalCohomologyCell {
    int t = 0;
    std::vector<ExtGroup> stages;
    std::vector<Matrix> transitions;  // stage p -> stage p+1
    Stabilization stab;
};

struct LocalCohomology {
    int n = 0;
    std::vector<int> index;
    std::vector<LocalCohomologyCell> cells;
    const LocalCohomologyCell& at(int t) const {
        for (const auto& c : cells)
            if (c.t == t) return c;
        throw std::out_of_range("no local cohomology cell in degree " + std::to_string(t));
    }
};

inline Matrix transition_matrix(const ResolvedChain& c, int p, const GradedModule& m, int n, int t, const ExtGroup& from, const ExtGroup& to) {
    std::vector<Vec> cols;
    for (const auto& r : from.reps) cols.push_back(to.coords(pullback_cochain(c.phi[p], c.res[p + 1], c.res[p], n, m, t, r)));
    return Matrix::from_columns(m.prime(), to.dim(), cols);
}

// does the ideal at stage p see nothing of M in degree t onward? (then later stages agree)
inline bool vanishing_range(const ResolvedChain& c, int p, const GradedModule& m, int t) {
    if (!m.zero_above()) return false;
    int j = top_nonzero_degree(m) - t + 2;
    if (j <= 1) return true;
    if (j > c.alg->top() && !c.alg->complete()) return false;
    if (j > c.alg->top()) j = c.alg->top() + 1;
    return ideal_leq(c.ideals[p], grad_ideal(c.alg, j)) == Tri::True;
}

// the degrees that would make a bounded-above cell move lie past the truncation: later stages cannot change
inline bool beyond_truncation(const ResolvedChain& c, const GradedModule& m, int t) {
    return !c.alg->complete() && m.zero_above() && top_nonzero_degree(m) - t + 2 > c.alg->top();
}

inline bool is_free_stage(const ResolvedChain& c, int p) {
    return c.alg->complete() && ideal_leq(c.ideals[p], zero_ideal(c.alg)) == Tri::True;
}

inline LocalCohomology local_cohomology(const ResolvedChain& c, const GradedModule& m, int n, int t_lo, int t_hi, int W = 3) {
    if (n + 1 > c.max_s) throw std::invalid_argument("resolution chain too short for cohomological degree " + std::to_string(n));
    LocalCohomology lc;
    lc.n = n;
    lc.index = c.index;
    for (int t = t_lo; t <= t_hi; ++t) {
        LocalCohomologyCell cell;
        cell.t = t;
        for (int p = 0; p < c.stages(); ++p) cell.stages.push_back(ext_group(c.res[p], m, n, t));
        for (int p = 0; p + 1 < c.stages(); ++p) cell.transitions.push_back(transition_matrix(c, p, m, n, t, cell.stages[p], cell.stages[p + 1]));
        // earliest stage from which every later transition is an isomorphism
        int P = c.stages();
        std::vector<bool> iso(P, true);
        for (int p = P - 2; p >= 0; --p) {
            const Matrix& T = cell.transitions[p];
            bool ok = T.rows() == T.cols() && rank(T) == T.rows() && cell.stages[p].certified && cell.stages[p + 1].certified;
            iso[p] = ok && iso[p + 1];
        }
        for (int p = 0; p < P && !cell.stab.stabilized; ++p) {
            if (!iso[p] || !cell.stages[p].certified) continue;
            if (is_free_stage(c, p))
                cell.stab = {true, p, cell.stages[p].dim(), "free-stage", false};
            else if (vanishing_range(c, p, m, t))
                cell.stab = {true, p, cell.stages[p].dim(), "vanishing-range", false};
        }
        bool plateau_ok = !beyond_truncation(c, m, t);
        for (int p = 0; p + W < P && !cell.stab.stabilized && plateau_ok; ++p)
            if (iso[p] && cell.stages[p].certified) cell.stab = {true, p, cell.stages[p].dim(), "run-length", true};
        lc.cells.push_back(std::move(cell));
    }
    return lc;
}

// composite transition from stage p0 applied to coordinates v; returns the last stage where the class is nonzero
struct Survival {
    int order = -1;              // stage label of the last nonzero stage
    bool reached_horizon = false;
};

inline Survival survival_of(const LocalCohomologyCell& cell, const std::vector<int>& index, int p0, Vec v) {
    Survival s;
    if (is_zero_vec(v)) return s;
    int p = p0;
    s.order = index[p];
    while (p + 1 < int(cell.stages.size())) {
        v = cell.transitions[p].apply(v);
        ++p;
        if (is_zero_vec(v)) return s;
        s.order = index[p];
    }
    s.reached_horizon = true;
    return s;
}

// largest survival over the whole group at stage p0: the last stage where the composite map is nonzero
inline Survival group_survival(const LocalCohomologyCell& cell, const std::vector<int>& index, int p0) {
    Survival s;
    int d = cell.stages[p0].dim();
    if (d == 0) return s;
    Matrix comp = Matrix::identity(cell.stages[p0].cocycles.prime(), d);
    s.order = index[p0];
    for (int p = p0; p + 1 < int(cell.stages.size()); ++p) {
        comp = cell.transitions[p] * comp;
        if (comp.is_zero()) return s;
        s.order = index[p + 1];
    }
    s.reached_horizon = true;
    return s;
}

// Connecting class of y in a larger module N ⊇ M: the cocycle g ↦ (d g)·y on F_1, valued in M.
// y lists, for each generator of F_0, an element of N in degree deg + t.
inline Vec connecting_cocycle(const Resolution& r, const GradedModule& big, const ModuleMap& incl, const GradedModule& m, int t, const std::vector<Vec>& y) {
    HomLayout L0 = hom_layout(r.F[0], big, t), L1 = hom_layout(r.F[1], m, t);
    Vec c0;
    for (const auto& v : y) c0.insert(c0.end(), v.begin(), v.end());
    if (int(c0.size()) != L0.total()) throw std::invalid_argument("connecting_cocycle: wrong number of values");
    Vec out(L1.total(), 0);
    for (int g = 0; g < r.F[1].num_gens(); ++g) {
        int e = r.F[1].gen_degree(g);
        if (L1.off[g + 1] == L1.off[g]) continue;
        Vec v = evaluate_cochain(r.F[0], L0, big, t, c0, e, r.dgen[1][g]);
        auto x = solve(incl.at(e + t), v);
        if (!x) throw std::invalid_argument("boundary of y does not land in the submodule");
        std::copy(x->begin(), x->end(), out.begin() + L1.off[g]);
    }
    return out;
}

// ---- dimension shifting -----------------------------------------------------------

// free module on the given generators as a graded module on [lo, hi]
inline GradedModule free_graded_module(const AlgebraPtr& alg, const std::vector<int>& gens, int lo, int hi) {
    FreeModule F(alg);
    for (int g : gens) F.add_generator(g);
    std::vector<int> dims;
    for (int t = lo; t <= hi; ++t) dims.push_back(F.dim(t));
    bool za = alg->complete() && (gens.empty() || hi >= gens.back() + alg->top());
    GradedModule m(alg, lo, hi, dims, za, true);
    const auto& A = *alg;
    for (int a = 0; a < A.size(); ++a)
        for (int t = lo; t + A.degree(a) <= hi; ++t) {
            std::vector<Vec> cols;
            for (int i = 0; i < F.dim(t); ++i) {
                Vec x(F.dim(t), 0);
                x[i] = 1;
                cols.push_back(F.act(a, t, x));
            }
            m.set_action(a, t, Matrix::from_columns(A.prime(), F.dim(t + A.degree(a)), cols));
        }
    m.name = "free";
    return m;
}

struct DimensionShiftReport {
    int i = 0;
    std::vector<int> degrees;
    std::vector<int> lhs, rhs;  // stabilized dims of H^{i+1}(ker ε) and H^i(M), -1 when unstabilized
    std::vector<bool> compared;
    bool agree = true;
    int compared_cells = 0;
};

// H^{i+1}(ker ε) against H^i(M) for the free cover ε: F_0 -> M
inline DimensionShiftReport dimension_shift(const GradedModule& m, int i, const ResolvedChain& chain, int t_lo, int t_hi, int W = 3) {
    const auto& A = *m.algebra();
    Resolution r = minimal_resolution(m, 0, std::min(m.hi(), chain.max_t));
    int hi = m.hi();
    if (A.complete()) {
        int g = r.F[0].num_gens() ? r.F[0].gen_degrees().back() : m.lo();
        hi = std::max(hi, g + A.top());
    } else {
        hi = m.lo() + A.top();
    }
    GradedModule F = free_graded_module(m.algebra(), r.F[0].gen_degrees(), m.lo(), hi);
    // ε in each degree
    ModuleMap eps{0, m.lo(), hi, {}};
    for (int t = m.lo(); t <= hi; ++t) {
        std::vector<Vec> cols;
        for (int c = 0; c < F.dim(t); ++c) {
            Vec x(F.dim(t), 0);
            x[c] = 1;
            Vec img(m.known(t) ? m.dim(t) : 0, 0);
            r.F[0].for_each_term(t, x, [&](int k, int b, int coef) {
                if (img.empty()) return;
                add_scaled(img, m.act(b, r.F[0].gen_degree(k), r.dgen[0][k]), coef, A.prime());
            });
            cols.push_back(img);
        }
        eps.m.push_back(Matrix::from_columns(A.prime(), m.known(t) ? m.dim(t) : 0, cols));
    }
    Degreewise ker;
    for (int t = m.lo(); t <= hi; ++t) ker.push_back(kernel_basis(eps.at(t)));
    GradedModule K = restrict_to(F, ker);
    K.name = "ker(eps)";
    LocalCohomology L = local_cohomology(chain, K, i + 1, t_lo, t_hi, W);
    LocalCohomology R = local_cohomology(chain, m, i, t_lo, t_hi, W);
    DimensionShiftReport rep;
    rep.i = i;
    for (int t = t_lo; t <= t_hi; ++t) {
        const auto& a = L.at(t).stab;
        const auto& b = R.at(t).stab;
        rep.degrees.push_back(t);
        rep.lhs.push_back(a.stabilized ? a.value : -1);
        rep.rhs.push_back(b.stabilized ? b.value : -1);
        bool both = a.stabilized && b.stabilized;
        rep.compared.push_back(both);
        if (both) {
            ++rep.compared_cells;
            if (a.value != b.value) rep.agree = false;
        }
    }
    return rep;
}

}  // namespace lcoh
