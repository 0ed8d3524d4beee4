#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graded.hpp"

namespace lcoh {

// Degreewise subspaces of the algebra, each possibly unknown. Degrees above the
// algebra's truncation are summarized by the tail.
struct HomogeneousLeftIdeal {
    enum class Tail { Full, Zero, Unknown };

    AlgebraPtr alg;
    std::vector<std::optional<Subspace>> deg;  // 0..top
    Tail tail = Tail::Unknown;
    std::string name;

    int top() const { return alg->top(); }
    // highest degree d such that every degree <= d is known
    int certified_through() const {
        for (int d = 0; d <= top(); ++d)
            if (!deg[d]) return d - 1;
        if (alg->complete() || tail != Tail::Unknown) return std::numeric_limits<int>::max();
        return top();
    }
    bool fully_known() const { return certified_through() == std::numeric_limits<int>::max(); }
    Tri proper() const {
        if (!deg[0]) return Tri::Unknown;
        return deg[0]->is_zero() ? Tri::True : Tri::False;
    }
    Tri contains(int d, const Vec& v) const {
        if (d < 0) return Tri::False;
        if (d > top()) {
            if (alg->complete()) return Tri::True;
            return tail == Tail::Full ? Tri::True : (tail == Tail::Zero ? (is_zero_vec(v) ? Tri::True : Tri::False) : Tri::Unknown);
        }
        if (!deg[d]) return Tri::Unknown;
        return deg[d]->contains(v) ? Tri::True : Tri::False;
    }
    // lowest degree with a known nonzero element, or -1
    int lowest_nonzero_degree() const {
        for (int d = 0; d <= top(); ++d)
            if (deg[d] && !deg[d]->is_zero()) return d;
        return -1;
    }
    std::vector<int> dims() const {
        std::vector<int> v;
        for (const auto& s : deg) v.push_back(s ? s->dim() : -1);
        return v;
    }
};

using Ideal = HomogeneousLeftIdeal;

inline Ideal zero_ideal(const AlgebraPtr& a) {
    Ideal I{a, {}, Ideal::Tail::Zero, "(0)"};
    for (int d = 0; d <= a->top(); ++d) I.deg.emplace_back(Subspace(a->prime(), a->dim(d)));
    return I;
}

// I_j: everything in degrees >= j
inline Ideal grad_ideal(const AlgebraPtr& a, int j) {
    if (j < 1) throw std::invalid_argument("grad ideal index must be at least 1");
    Ideal I{a, {}, Ideal::Tail::Full, "I_" + std::to_string(j)};
    for (int d = 0; d <= a->top(); ++d)
        I.deg.emplace_back(d >= j ? Subspace::full(a->prime(), a->dim(d)) : Subspace(a->prime(), a->dim(d)));
    return I;
}

// left ideal generated by homogeneous elements; degrees above the truncation are unknown unless the algebra is complete
inline Ideal left_ideal_generated(const AlgebraPtr& a, const std::vector<std::pair<int, Vec>>& elems, const std::string& name = "") {
    const auto& A = *a;
    std::vector<std::vector<Vec>> span(A.top() + 1);
    for (const auto& [d, x] : elems)
        for (int g = 0; g < A.size(); ++g) {
            int e = d + A.degree(g);
            if (e > A.top()) continue;
            span[e].push_back(A.mul(A.degree(g), A.unit_vec(g), d, x));
        }
    Ideal I{a, {}, A.complete() ? Ideal::Tail::Zero : Ideal::Tail::Unknown, name};
    for (int d = 0; d <= A.top(); ++d) I.deg.emplace_back(Subspace::span(A.prime(), A.dim(d), span[d]));
    return I;
}

inline Ideal intersect(const Ideal& a, const Ideal& b) {
    Ideal I{a.alg, {}, Ideal::Tail::Unknown, a.name + "&" + b.name};
    for (int d = 0; d <= a.top(); ++d) {
        const auto &x = a.deg[d], &y = b.deg[d];
        if (x && y)
            I.deg.push_back(x->intersect(*y));
        else if ((x && x->is_zero()) || (y && y->is_zero()))
            I.deg.push_back(Subspace(a.alg->prime(), a.alg->dim(d)));
        else
            I.deg.push_back(std::nullopt);
    }
    using T = Ideal::Tail;
    if (a.tail == T::Zero || b.tail == T::Zero)
        I.tail = T::Zero;
    else if (a.tail == T::Full)
        I.tail = b.tail;
    else if (b.tail == T::Full)
        I.tail = a.tail;
    return I;
}

// is a ⊆ b?
inline Tri ideal_leq(const Ideal& a, const Ideal& b) {
    Tri r = Tri::True;
    for (int d = 0; d <= a.top(); ++d) {
        const auto &x = a.deg[d], &y = b.deg[d];
        if (x && y) {
            if (!y->contains(*x)) return Tri::False;
        } else if (x && x->is_zero()) {
        } else if (y && y->is_full()) {
        } else
            r = Tri::Unknown;
    }
    if (!a.alg->complete()) {
        using T = Ideal::Tail;
        if (a.tail == T::Zero || b.tail == T::Full) {
        } else
            r = tri_and(r, Tri::Unknown);
    }
    return r;
}

inline Tri ideal_equal(const Ideal& a, const Ideal& b) { return tri_and(ideal_leq(a, b), ideal_leq(b, a)); }

// left annihilator of x in M^d; degree e is known when d + e lies in the window or above a zero-above window
inline Ideal ann_left(const GradedModule& m, int d, const Vec& x) {
    if (is_zero_vec(x)) throw std::invalid_argument("ann_left of the zero element");
    const auto& A = *m.algebra();
    Ideal I{m.algebra(), {}, Ideal::Tail::Unknown, "ann"};
    for (int e = 0; e <= A.top(); ++e) {
        if (d + e > m.hi() && m.zero_above()) {
            I.deg.push_back(Subspace::full(A.prime(), A.dim(e)));
            continue;
        }
        if (d + e > m.hi()) {
            I.deg.push_back(std::nullopt);
            continue;
        }
        std::vector<Vec> cols;
        for (int i = 0; i < A.dim(e); ++i) cols.push_back(m.act(A.global(e, i), d, x));
        I.deg.push_back(kernel_basis(Matrix::from_columns(A.prime(), m.dim(d + e), cols)));
    }
    if (A.complete() || (m.zero_above() && d + A.top() + 1 > m.hi())) I.tail = Ideal::Tail::Full;
    return I;
}

// I x = 0 ?
inline Tri kills(const Ideal& I, const GradedModule& m, int d, const Vec& x) {
    if (is_zero_vec(x)) return Tri::True;
    return ideal_leq(I, ann_left(m, d, x));
}

struct KernelResult {
    Subspace space;
    bool certified;
};

// {x in M^d : I x = 0}; when some constraint is unknown the known ones give an upper bound
inline KernelResult ideal_kernel(const Ideal& I, const GradedModule& m, int d) {
    const auto& A = *m.algebra();
    const int n = m.dim(d);
    std::vector<Matrix> blocks;
    bool certified = true;
    for (int e = 1; e <= A.top(); ++e) {
        if (d + e > m.hi() && m.zero_above()) break;
        if (!I.deg[e]) {
            certified = false;
            continue;
        }
        if (I.deg[e]->is_zero()) continue;
        if (d + e > m.hi()) {
            certified = false;
            continue;
        }
        for (const auto& v : I.deg[e]->vectors()) {
            std::vector<Vec> cols;
            for (int k = 0; k < n; ++k) {
                Vec x(n, 0);
                x[k] = 1;
                cols.push_back(m.act_elem(e, v, d, x));
            }
            blocks.push_back(Matrix::from_columns(m.prime(), m.dim(d + e), cols));
        }
    }
    if (!A.complete() && I.tail != Ideal::Tail::Zero && !(m.zero_above() && d + A.top() + 1 > m.hi())) certified = false;
    Matrix all(m.prime(), 0, n);
    for (const auto& b : blocks) all = Matrix::vstack(all, b);
    Subspace k = kernel_basis(all);
    if (k.is_zero()) certified = true;
    return {k, certified};
}

// quotient Γ*/I as a cyclic module generated in degree 0
inline GradedModule quotient_algebra_module(const Ideal& I, ModuleMap* projection = nullptr) {
    const auto& A = *I.alg;
    for (int d = 0; d <= A.top(); ++d)
        if (!I.deg[d]) throw std::invalid_argument("quotient by an ideal with unknown degree " + std::to_string(d));
    GradedModule reg = regular_module(I.alg);
    Degreewise sub;
    for (int d = 0; d <= A.top(); ++d) sub.push_back(*I.deg[d]);
    GradedModule q = quotient_module(reg, sub, projection);
    if (I.tail == Ideal::Tail::Full || A.complete()) q.set_zero_above(true);
    q.name = A.name() + "/" + I.name;
    return q;
}

// ---- ideal sets -----------------------------------------------------------

struct IdealSet {
    enum class Kind { Explicit, Grad, Dist, Mit };
    Kind kind = Kind::Explicit;
    AlgebraPtr alg;
    std::vector<Ideal> members;                // Explicit
    std::shared_ptr<const GradedModule> theta; // Dist: ι of a coalgebra truncation
    std::vector<Ideal> mit;                    // Mit: ann(ω_0), ann(ω_1), ...
    std::string name;

    static IdealSet explicit_set(AlgebraPtr a, std::vector<Ideal> ms, std::string nm = "explicit") {
        IdealSet s;
        s.kind = Kind::Explicit;
        s.alg = std::move(a);
        s.members = std::move(ms);
        s.name = std::move(nm);
        return s;
    }
    static IdealSet trivial(AlgebraPtr a) { return explicit_set(a, {zero_ideal(a)}, "trivial"); }
    static IdealSet grad(AlgebraPtr a) {
        IdealSet s;
        s.kind = Kind::Grad;
        s.alg = std::move(a);
        s.name = "grad";
        return s;
    }
    static IdealSet dist(AlgebraPtr a, std::shared_ptr<const GradedModule> th) {
        IdealSet s;
        s.kind = Kind::Dist;
        s.alg = std::move(a);
        s.theta = std::move(th);
        s.name = "dist";
        return s;
    }
    static IdealSet mitchell(AlgebraPtr a, std::vector<Ideal> anns) {
        IdealSet s;
        s.kind = Kind::Mit;
        s.alg = std::move(a);
        s.mit = std::move(anns);
        s.name = "Mit";
        return s;
    }

    // strong distinguished ideals: annihilators of basis elements of Θ
    std::vector<std::pair<std::string, Ideal>> dist_generators() const {
        std::vector<std::pair<std::string, Ideal>> out;
        for (int d = theta->hi(); d >= theta->lo(); --d)
            for (int i = 0; i < theta->dim(d); ++i) {
                Vec x(theta->dim(d), 0);
                x[i] = 1;
                Ideal I = ann_left(*theta, d, x);
                I.name = "ann(" + theta->basis_label(d, i) + ")";
                out.push_back({I.name, I});
            }
        return out;
    }

    // a decreasing cofinal chain; lazy families are cut at the horizon
    std::vector<Ideal> chain(int j_max) const {
        std::vector<Ideal> c;
        switch (kind) {
            case Kind::Explicit: {
                Ideal m = members.at(0);
                for (std::size_t i = 1; i < members.size(); ++i) m = intersect(m, members[i]);
                c.push_back(m);
                break;
            }
            case Kind::Grad:
                for (int j = 1; j <= j_max; ++j) c.push_back(grad_ideal(alg, j));
                break;
            case Kind::Dist: {
                // D_N = intersection of annihilators of basis elements in degrees >= -N
                std::optional<Ideal> cur;
                for (int d = theta->hi(); d >= theta->lo() && int(c.size()) < j_max; --d) {
                    for (int i = 0; i < theta->dim(d); ++i) {
                        Vec x(theta->dim(d), 0);
                        x[i] = 1;
                        Ideal a = ann_left(*theta, d, x);
                        cur = cur ? intersect(*cur, a) : a;
                    }
                    if (cur) {
                        cur->name = "D_" + std::to_string(-d);
                        c.push_back(*cur);
                    }
                }
                break;
            }
            case Kind::Mit: {
                for (std::size_t n = 0; n < mit.size() && int(c.size()) < j_max; ++n) {
                    Ideal m = n == 0 ? mit[0] : intersect(c.back(), mit[n]);
                    m.name = "Mit_" + std::to_string(n);
                    c.push_back(m);
                }
                break;
            }
        }
        return c;
    }
    bool lazy() const { return kind == Kind::Grad; }

    // members to quantify over when this set is on the left of the preorder
    std::vector<Ideal> enumerate_members(int j_max) const {
        switch (kind) {
            case Kind::Explicit:
                return members;
            case Kind::Grad:
                return chain(j_max);
            case Kind::Dist: {
                std::vector<Ideal> v;
                for (auto& [n, I] : dist_generators()) v.push_back(I);
                return v;
            }
            case Kind::Mit:
                return mit;
        }
        return {};
    }
    // candidate witnesses when this set is on the right
    std::vector<Ideal> enumerate_candidates(int j_max) const {
        std::vector<Ideal> v = chain(j_max);
        if (kind == Kind::Explicit) v.insert(v.end(), members.begin(), members.end());
        if (kind == Kind::Dist)
            for (auto& [n, I] : dist_generators()) v.push_back(I);
        if (kind == Kind::Mit) v.insert(v.end(), mit.begin(), mit.end());
        return v;
    }
};

inline bool is_filtered(const IdealSet& s) {
    if (s.kind != IdealSet::Kind::Explicit) return true;
    for (const auto& a : s.members)
        for (const auto& b : s.members) {
            Ideal ab = intersect(a, b);
            bool found = false;
            for (const auto& c : s.members) found |= ideal_leq(c, ab) == Tri::True;
            if (!found) return false;
        }
    return true;
}

// all distinct finite intersections
inline IdealSet filtered_closure(const IdealSet& s) {
    if (s.kind != IdealSet::Kind::Explicit) return s;
    std::vector<Ideal> out;
    auto add = [&](const Ideal& I) {
        for (const auto& J : out)
            if (ideal_equal(I, J) == Tri::True) return false;
        out.push_back(I);
        return true;
    };
    for (const auto& m : s.members) add(m);
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) grew |= add(intersect(out[i], out[j]));
    }
    return IdealSet::explicit_set(s.alg, out, "closure(" + s.name + ")");
}

struct PreorderResult {
    Tri holds = Tri::Unknown;
    std::vector<std::pair<std::string, std::string>> witnesses;  // member of s -> member of t inside it
    bool horizon_bounded = false;
    std::string failing_member;
};

// s <= t: every member of s contains some member of t
inline PreorderResult preorder_leq(const IdealSet& s, const IdealSet& t, int j_max) {
    PreorderResult r;
    r.holds = Tri::True;
    r.horizon_bounded = s.lazy() || t.lazy();
    auto cands = t.enumerate_candidates(j_max);
    for (const auto& I : s.enumerate_members(j_max)) {
        Tri best = Tri::False;
        for (const auto& J : cands) {
            Tri c = ideal_leq(J, I);
            if (c == Tri::True) {
                r.witnesses.push_back({I.name, J.name});
                best = Tri::True;
                break;
            }
            if (c == Tri::Unknown) best = Tri::Unknown;
        }
        if (best == Tri::False && t.lazy()) best = Tri::Unknown;
        if (best != Tri::True && r.failing_member.empty()) r.failing_member = I.name;
        if (best == Tri::False) r.holds = Tri::False;
        else if (best == Tri::Unknown && r.holds == Tri::True) r.holds = Tri::Unknown;
    }
    return r;
}

struct TorsionResult {
    int lo = 0, hi = -1;
    std::vector<Subspace> space;  // index d - lo
    std::vector<bool> certified;
    const Subspace& at(int d) const { return space[d - lo]; }
    int dim(int d) const { return at(d).dim(); }
    bool all_certified() const {
        for (bool c : certified)
            if (!c) return false;
        return true;
    }
};

// h0_S(M): elements killed by some member; for a filtered set this is the kernel of the last chain element
inline TorsionResult h0(const IdealSet& s, const GradedModule& m, int j_max) {
    IdealSet f = is_filtered(s) ? s : filtered_closure(s);
    auto c = f.chain(j_max);
    TorsionResult r{m.lo(), m.hi(), {}, {}};
    const Ideal& last = c.back();
    for (int d = m.lo(); d <= m.hi(); ++d) {
        auto k = ideal_kernel(last, m, d);
        bool cert = k.certified;
        if (f.lazy() && !(k.space.is_full() || (m.zero_above() && j_max > m.hi() - d))) cert = false;
        r.space.push_back(k.space);
        r.certified.push_back(cert);
    }
    return r;
}

// H0_S(M): the submodule generated by h0
inline TorsionResult H0(const IdealSet& s, const GradedModule& m, int j_max) {
    TorsionResult h = h0(s, m, j_max);
    std::vector<std::pair<int, Vec>> gens;
    for (int d = m.lo(); d <= m.hi(); ++d)
        for (const auto& v : h.at(d).vectors()) gens.push_back({d, v});
    Degreewise g = generated_subspaces(m, gens);
    TorsionResult r{m.lo(), m.hi(), g, {}};
    bool ok = true;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        ok = ok && h.certified[d - m.lo()];
        r.certified.push_back(ok);
    }
    return r;
}

struct RationalityReport {
    Tri annihilator_test = Tri::Unknown;  // (a)
    Tri h0_test = Tri::Unknown;           // (b)
    bool agree = true;
    std::optional<std::pair<int, Vec>> witness;
    std::string witness_label;
    std::string caveat;
    Tri verdict() const { return agree ? annihilator_test : Tri::Unknown; }
};

// (a) every basis annihilator contains some I_j;  (b) H0 over dist(Θ) is all of M
inline RationalityReport is_rational(const GradedModule& m, std::shared_ptr<const GradedModule> theta, int j_max, bool mitchell_type = true) {
    RationalityReport r;
    r.annihilator_test = Tri::True;
    for (int d = m.lo(); d <= m.hi() && r.annihilator_test != Tri::False; ++d)
        for (int i = 0; i < m.dim(d); ++i) {
            Vec x(m.dim(d), 0);
            x[i] = 1;
            Tri best = Tri::False;
            for (int j = 1; j <= j_max; ++j) {
                Tri k = grad_kills(m, d, x, j);
                if (k == Tri::True) {
                    best = Tri::True;
                    break;
                }
                if (k == Tri::Unknown) best = Tri::Unknown;
            }
            if (best != Tri::True && !r.witness) {
                r.witness = {d, x};
                r.witness_label = m.basis_label(d, i);
            }
            if (best == Tri::False) {
                r.annihilator_test = Tri::False;
                break;
            }
            if (best == Tri::Unknown) r.annihilator_test = Tri::Unknown;
        }
    if (theta) {
        auto H = H0(IdealSet::dist(m.algebra(), theta), m, j_max);
        r.h0_test = Tri::True;
        for (int d = m.lo(); d <= m.hi(); ++d) {
            bool full = H.at(d).dim() == m.dim(d);
            if (!full && H.certified[d - m.lo()]) {
                r.h0_test = Tri::False;
                if (!r.witness) {
                    Subspace hd = H.at(d);
                    for (int i = 0; i < m.dim(d); ++i) {
                        Vec x(m.dim(d), 0);
                        x[i] = 1;
                        if (!hd.contains(x)) {
                            r.witness = {d, x};
                            r.witness_label = m.basis_label(d, i);
                            break;
                        }
                    }
                }
                break;
            }
            if (!full) r.h0_test = Tri::Unknown;
        }
        r.agree = r.annihilator_test == r.h0_test || r.annihilator_test == Tri::Unknown || r.h0_test == Tri::Unknown;
        if (r.annihilator_test != r.h0_test) r.agree = false;
    }
    if (!mitchell_type)
        r.caveat = "coalgebra not known to be of Mitchell type: the annihilator test is only sufficient";
    return r;
}

struct ClosedReport {
    bool closed = true;
    std::vector<std::string> witnesses;  // modules with h0 != H0
};

inline ClosedReport is_closed_ideal_set(const IdealSet& s, const std::vector<GradedModule>& corpus, int j_max) {
    ClosedReport r;
    for (const auto& m : corpus) {
        auto a = h0(s, m, j_max);
        auto b = H0(s, m, j_max);
        for (int d = m.lo(); d <= m.hi(); ++d) {
            if (!a.certified[d - m.lo()] || !b.certified[d - m.lo()]) continue;
            if (!(a.at(d) == b.at(d))) {
                r.closed = false;
                r.witnesses.push_back(m.name);
                break;
            }
        }
    }
    return r;
}

}  // namespace lcoh
