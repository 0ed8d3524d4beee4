#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fplin.hpp"

namespace lcoh {

struct UnknownDegree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonRational : std::runtime_error {
    int degree;
    Vec witness;
    NonRational(const std::string& msg, int d, Vec w) : std::runtime_error(msg), degree(d), witness(std::move(w)) {}
};

// Connected graded algebra, basis given per degree 0..top.
// A truncated algebra (complete == false) says nothing about degrees above top.
class GradedAlgebra {
public:
    using ProductFn = std::function<Vec(int, int)>;  // global indices -> coefficients in degree |a|+|b|

    GradedAlgebra(int p, int top, bool complete, std::vector<std::vector<std::string>> labels, const ProductFn& prod,
                  std::vector<int> gens, std::string name = "")
        : p_(p), top_(top), complete_(complete), labels_(std::move(labels)), gens_(std::move(gens)), name_(std::move(name)) {
        detail::check_prime(p);
        if (int(labels_.size()) != top + 1) throw std::invalid_argument("algebra: need labels for degrees 0..top");
        if (labels_[0].size() != 1) throw std::invalid_argument("algebra must be connected: one-dimensional in degree 0");
        offset_.resize(top + 2, 0);
        for (int d = 0; d <= top; ++d) offset_[d + 1] = offset_[d] + int(labels_[d].size());
        N_ = offset_[top + 1];
        deg_.resize(N_);
        for (int d = 0; d <= top; ++d)
            for (int i = 0; i < dim(d); ++i) deg_[offset_[d] + i] = d;
        prod_.resize(std::size_t(N_) * N_);
        for (int a = 0; a < N_; ++a)
            for (int b = 0; b < N_; ++b) {
                int d = deg_[a] + deg_[b];
                if (d > top) continue;
                Vec v = prod(a, b);
                if (int(v.size()) != dim(d)) throw std::invalid_argument("algebra: product has wrong length");
                for (auto& x : v) x %= p;
                prod_[std::size_t(a) * N_ + b] = std::move(v);
            }
        for (int b = 0; b < N_; ++b) {
            Vec e(dim(deg_[b]), 0);
            e[b - offset_[deg_[b]]] = 1;
            if (prod_[b] != e || prod_[std::size_t(b) * N_] != e) throw std::invalid_argument("algebra: basis element 0 is not a unit");
        }
        build_expressions();
    }

    int prime() const { return p_; }
    int top() const { return top_; }
    bool complete() const { return complete_; }
    const std::string& name() const { return name_; }
    int size() const { return N_; }
    int dim(int d) const { return (d < 0 || d > top_) ? 0 : int(labels_[d].size()); }
    int degree(int g) const { return deg_[g]; }
    int global(int d, int i) const { return offset_[d] + i; }
    int local(int g) const { return g - offset_[deg_[g]]; }
    const std::string& label(int g) const { return labels_[deg_[g]][local(g)]; }
    const std::vector<std::string>& labels(int d) const { return labels_[d]; }
    const std::vector<int>& generators() const { return gens_; }

    bool product_known(int a, int b) const { return deg_[a] + deg_[b] <= top_; }
    const Vec& product(int a, int b) const {
        if (!product_known(a, b)) throw UnknownDegree("product beyond truncation degree " + std::to_string(top_));
        return prod_[std::size_t(a) * N_ + b];
    }

    // x -> a x, from degree d
    Matrix left_mult(int a, int d) const {
        int e = d + deg_[a];
        Matrix m(p_, dim(e), dim(d));
        for (int i = 0; i < dim(d); ++i) {
            const Vec& v = product(a, global(d, i));
            for (int r = 0; r < dim(e); ++r) m.set(r, i, v[r]);
        }
        return m;
    }
    // x -> x b, from degree d
    Matrix right_mult(int b, int d) const {
        int e = d + deg_[b];
        Matrix m(p_, dim(e), dim(d));
        for (int i = 0; i < dim(d); ++i) {
            const Vec& v = product(global(d, i), b);
            for (int r = 0; r < dim(e); ++r) m.set(r, i, v[r]);
        }
        return m;
    }
    Vec mul(int da, const Vec& x, int db, const Vec& y) const {
        Vec out(dim(da + db), 0);
        for (int i = 0; i < dim(da); ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < dim(db); ++j) {
                if (!y[j]) continue;
                add_scaled(out, product(global(da, i), global(db, j)), x[i] * y[j], p_);
            }
        }
        return out;
    }

    // basis element e (degree >= 1) as sum of coef * g * b with g a generator
    struct Term {
        int coef, gen, rest;
    };
    const std::vector<Term>& expression(int e) const { return expr_[e]; }

    std::optional<std::string> check_associativity() const {
        for (int a = 0; a < N_; ++a)
            for (int b = 0; b < N_; ++b)
                for (int c = 0; c < N_; ++c) {
                    int d = deg_[a] + deg_[b] + deg_[c];
                    if (d > top_) continue;
                    Vec l = mul(deg_[a] + deg_[b], product(a, b), deg_[c], unit_vec(c));
                    Vec r = mul(deg_[a], unit_vec(a), deg_[b] + deg_[c], product(b, c));
                    if (l != r) return "(" + label(a) + " " + label(b) + ") " + label(c) + " != " + label(a) + " (" + label(b) + " " + label(c) + ")";
                }
        return std::nullopt;
    }

    Vec unit_vec(int g) const {
        Vec v(dim(deg_[g]), 0);
        v[local(g)] = 1;
        return v;
    }

private:
    void build_expressions() {
        expr_.assign(N_, {});
        for (int d = 1; d <= top_; ++d) {
            std::vector<Vec> cols;
            std::vector<std::pair<int, int>> who;
            for (int g : gens_) {
                int r = d - deg_[g];
                if (r < 0 || deg_[g] == 0) continue;
                for (int i = 0; i < dim(r); ++i) {
                    cols.push_back(product(g, global(r, i)));
                    who.push_back({g, global(r, i)});
                }
            }
            Matrix m = Matrix::from_columns(p_, dim(d), cols);
            for (int i = 0; i < dim(d); ++i) {
                Vec e(dim(d), 0);
                e[i] = 1;
                auto sol = solve(m, e);
                if (!sol) throw std::invalid_argument("algebra: generators do not generate degree " + std::to_string(d));
                for (int k = 0; k < int(who.size()); ++k)
                    if ((*sol)[k]) expr_[global(d, i)].push_back({(*sol)[k], who[k].first, who[k].second});
            }
        }
    }

    int p_, top_;
    bool complete_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<int> gens_;
    std::string name_;
    std::vector<int> offset_, deg_;
    int N_ = 0;
    std::vector<Vec> prod_;
    std::vector<std::vector<Term>> expr_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// k[x]/x^(n+1), |x| = xdeg; truncated (complete == false) means "polynomial ring seen through degree top"
inline AlgebraPtr polynomial_algebra(int p, int xdeg, int top, bool complete = false) {
    std::vector<std::vector<std::string>> labels(top + 1);
    for (int d = 0; d <= top; d += xdeg) {
        int k = d / xdeg;
        labels[d].push_back(k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k)));
    }
    // each nonzero degree is one-dimensional, so every known product is the basis element
    auto prod = [](int, int) { return Vec{1}; };
    std::vector<int> gens;
    if (top >= xdeg) gens.push_back(1);
    std::string name = "k[x]";
    return std::make_shared<GradedAlgebra>(p, top, complete, labels, prod, gens, name);
}

struct GradedVectorSpace {
    int lo = 0, hi = -1;
    std::vector<int> dims;  // index d - lo
    int dim(int d) const { return (d < lo || d > hi) ? 0 : dims[d - lo]; }
};

class GradedModule {
public:
    GradedModule() = default;
    GradedModule(AlgebraPtr alg, int lo, int hi, std::vector<int> dims, bool zero_above, bool zero_below)
        : alg_(std::move(alg)), lo_(lo), hi_(hi), dims_(std::move(dims)), zero_above_(zero_above), zero_below_(zero_below) {
        if (hi < lo - 1) throw std::invalid_argument("module window: hi < lo - 1");
        if (int(dims_.size()) != hi - lo + 1) throw std::invalid_argument("module: dims do not match window");
        if (!alg_->complete() && hi - lo > alg_->top())
            throw std::invalid_argument("module window span " + std::to_string(hi - lo) + " exceeds algebra truncation " + std::to_string(alg_->top()));
        act_.assign(alg_->size(), {});
        for (int g = 0; g < alg_->size(); ++g) {
            int e = alg_->degree(g);
            for (int d = lo; d + e <= hi; ++d) act_[g].push_back(Matrix(alg_->prime(), dim(d + e), dim(d)));
            if (e == 0)
                for (int d = lo; d <= hi; ++d) act_[g][d - lo] = Matrix::identity(alg_->prime(), dim(d));
        }
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int prime() const { return alg_->prime(); }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool zero_above() const { return zero_above_; }
    bool zero_below() const { return zero_below_; }
    void set_zero_above(bool z) { zero_above_ = z; }
    void set_zero_below(bool z) { zero_below_ = z; }
    bool in_window(int d) const { return d >= lo_ && d <= hi_; }
    bool known(int d) const { return in_window(d) || (d > hi_ && zero_above_) || (d < lo_ && zero_below_); }
    int dim(int d) const {
        if (in_window(d)) return dims_[d - lo_];
        if (known(d)) return 0;
        throw UnknownDegree("module degree " + std::to_string(d) + " lies outside the window [" + std::to_string(lo_) + "," + std::to_string(hi_) + "]");
    }
    int total_dim() const {
        int s = 0;
        for (int x : dims_) s += x;
        return s;
    }
    bool is_zero() const { return total_dim() == 0 && zero_above_ && zero_below_; }
    const std::vector<int>& dims() const { return dims_; }
    std::string name;
    std::vector<std::vector<std::string>> labels;  // optional, index d - lo

    std::string basis_label(int d, int i) const {
        if (!labels.empty() && !labels[d - lo_].empty()) return labels[d - lo_][i];
        return "e" + std::to_string(d) + "_" + std::to_string(i);
    }

    // action of basis element g from degree d; zero when the target is known to vanish
    Matrix action(int g, int d) const {
        int e = d + alg_->degree(g);
        if (!known(d)) throw UnknownDegree("action source degree " + std::to_string(d) + " unknown");
        if (!in_window(d)) return Matrix(prime(), dim_or_zero(e), 0);
        if (e > hi_) {
            if (zero_above_) return Matrix(prime(), 0, dim(d));
            throw UnknownDegree("action lands in degree " + std::to_string(e) + " above the window");
        }
        return act_[g][d - lo_];
    }
    void set_action(int g, int d, Matrix m) {
        int e = d + alg_->degree(g);
        if (!in_window(d) || e > hi_) throw std::invalid_argument("set_action outside window");
        if (m.rows() != dim(e) || m.cols() != dim(d)) throw std::invalid_argument("set_action: wrong matrix shape");
        act_[g][d - lo_] = std::move(m);
    }
    Vec act(int g, int d, const Vec& x) const { return action(g, d).apply(x); }
    // general algebra element a of degree da
    Vec act_elem(int da, const Vec& a, int d, const Vec& x) const {
        int e = d + da;
        Vec out(dim(e), 0);
        for (int i = 0; i < alg_->dim(da); ++i)
            if (a[i]) add_scaled(out, act(alg_->global(da, i), d, x), a[i], prime());
        return out;
    }

    // fill the whole action table from the actions of the algebra generators
    void extend_from_generators() {
        const auto& A = *alg_;
        for (int e = 1; e <= std::min(A.top(), hi_ - lo_); ++e)
            for (int i = 0; i < A.dim(e); ++i) {
                int g = A.global(e, i);
                bool is_gen = false;
                for (int x : A.generators()) is_gen |= (x == g);
                if (is_gen) continue;
                for (int d = lo_; d + e <= hi_; ++d) {
                    Matrix m(prime(), dim(d + e), dim(d));
                    for (const auto& t : A.expression(g)) {
                        int rd = A.degree(t.rest);
                        Matrix c = act_[t.gen][d + rd - lo_] * act_[t.rest][d - lo_];
                        for (int r = 0; r < c.rows(); ++r)
                            for (int k = 0; k < c.cols(); ++k)
                                if (c.at(r, k)) m.set(r, k, m.at(r, k) + t.coef * c.at(r, k));
                    }
                    act_[g][d - lo_] = std::move(m);
                }
            }
    }

    std::optional<std::string> check_axioms() const {
        const auto& A = *alg_;
        for (int d = lo_; d <= hi_; ++d)
            if (act_[0][d - lo_] != Matrix::identity(prime(), dim(d))) return "unit does not act as the identity in degree " + std::to_string(d);
        for (int a = 0; a < A.size(); ++a)
            for (int b = 0; b < A.size(); ++b) {
                int ea = A.degree(a), eb = A.degree(b);
                if (!A.product_known(a, b)) continue;
                for (int d = lo_; d + ea + eb <= hi_; ++d) {
                    Matrix lhs(prime(), dim(d + ea + eb), dim(d));
                    const Vec& ab = A.product(a, b);
                    for (int i = 0; i < A.dim(ea + eb); ++i)
                        if (ab[i]) {
                            const Matrix& m = act_[A.global(ea + eb, i)][d - lo_];
                            for (int r = 0; r < m.rows(); ++r)
                                for (int k = 0; k < m.cols(); ++k) lhs.set(r, k, lhs.at(r, k) + ab[i] * m.at(r, k));
                        }
                    Matrix rhs = act_[a][d + eb - lo_] * act_[b][d - lo_];
                    if (lhs != rhs)
                        return "associativity fails for (" + A.label(a) + ")(" + A.label(b) + ") on degree " + std::to_string(d);
                }
            }
        return std::nullopt;
    }

private:
    int dim_or_zero(int d) const { return known(d) ? dim(d) : 0; }
    AlgebraPtr alg_;
    int lo_ = 0, hi_ = -1;
    std::vector<int> dims_;
    bool zero_above_ = false, zero_below_ = false;
    std::vector<std::vector<Matrix>> act_;
};

using Degreewise = std::vector<Subspace>;  // index d - lo over a module window

struct ModuleMap {
    int shift = 0;
    int lo = 0, hi = -1;        // source window
    std::vector<Matrix> m;      // m[d - lo]: dim tgt(d + shift) x dim src(d)
    const Matrix& at(int d) const { return m[d - lo]; }
};

inline ModuleMap zero_map(const GradedModule& src, const GradedModule& tgt, int shift = 0) {
    ModuleMap f{shift, src.lo(), src.hi(), {}};
    for (int d = src.lo(); d <= src.hi(); ++d) f.m.push_back(Matrix(src.prime(), tgt.dim(d + shift), src.dim(d)));
    return f;
}

inline ModuleMap identity_map(const GradedModule& m) {
    ModuleMap f{0, m.lo(), m.hi(), {}};
    for (int d = m.lo(); d <= m.hi(); ++d) f.m.push_back(Matrix::identity(m.prime(), m.dim(d)));
    return f;
}

inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    ModuleMap h{f.shift + g.shift, f.lo, f.hi, {}};
    for (int d = f.lo; d <= f.hi; ++d) {
        int e = d + f.shift;
        if (e < g.lo || e > g.hi) throw std::invalid_argument("compose: intermediate degree outside second map");
        h.m.push_back(g.at(e) * f.at(d));
    }
    return h;
}

inline bool is_module_map(const ModuleMap& f, const GradedModule& src, const GradedModule& tgt) {
    const auto& A = *src.algebra();
    for (int g = 0; g < A.size(); ++g) {
        int e = A.degree(g);
        for (int d = src.lo(); d <= src.hi(); ++d) {
            int t = d + f.shift;
            if (d + e > src.hi()) {
                // the source action leaves the window: zero when bounded above, otherwise unchecked
                if (src.zero_above() && tgt.known(t + e) && tgt.known(t) && !(tgt.action(g, t) * f.at(d)).is_zero()) return false;
                continue;
            }
            if (!tgt.known(t + e) || !tgt.known(t)) return false;
            Matrix lhs = f.at(d + e) * src.action(g, d);
            Matrix rhs = tgt.action(g, t) * f.at(d);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

// ---- constructions -------------------------------------------------------

inline GradedModule trivial_module(AlgebraPtr alg, int degree = 0) {
    GradedModule m(alg, degree, degree, {1}, true, true);
    m.name = "k";
    m.labels = {{"1"}};
    return m;
}

// Γ* acting on itself, seen through its truncation degree
inline GradedModule regular_module(AlgebraPtr alg) {
    const auto& A = *alg;
    std::vector<int> dims;
    for (int d = 0; d <= A.top(); ++d) dims.push_back(A.dim(d));
    GradedModule m(alg, 0, A.top(), dims, A.complete(), true);
    for (int g = 0; g < A.size(); ++g)
        for (int d = 0; d + A.degree(g) <= A.top(); ++d) m.set_action(g, d, A.left_mult(g, d));
    for (int d = 0; d <= A.top(); ++d) m.labels.push_back(A.labels(d));
    m.name = A.name().empty() ? "free" : A.name();
    return m;
}

// ιΓ^{>= -c}: the linear dual of Γ* in degrees [-c, 0], with (f φ)(a) = φ(a f)
inline GradedModule dual_module(AlgebraPtr alg, int c) {
    const auto& A = *alg;
    if (c > A.top()) throw std::invalid_argument("dual module deeper than the algebra truncation");
    std::vector<int> dims;
    for (int d = -c; d <= 0; ++d) dims.push_back(A.dim(-d));
    GradedModule m(alg, -c, 0, dims, true, true);
    for (int b = 0; b < A.size(); ++b) {
        int e = A.degree(b);
        for (int d = -c; d + e <= 0; ++d) {
            int n = -d, r = n - e;  // γ in Γ^{-n} pairs with A^n; result pairs with A^r
            Matrix mat(A.prime(), A.dim(r), A.dim(n));
            for (int a = 0; a < A.dim(r); ++a) {
                const Vec& ab = A.product(A.global(r, a), b);
                for (int cc = 0; cc < A.dim(n); ++cc) mat.set(a, cc, ab[cc]);
            }
            m.set_action(b, d, mat);
        }
    }
    for (int d = -c; d <= 0; ++d) {
        std::vector<std::string> l;
        for (const auto& s : A.labels(-d)) l.push_back(s + "*");
        m.labels.push_back(l);
    }
    m.name = "dual(" + A.name() + ")>=" + std::to_string(-c);
    return m;
}

inline GradedModule suspension(const GradedModule& m, int n) {
    GradedModule s(m.algebra(), m.lo() + n, m.hi() + n, m.dims(), m.zero_above(), m.zero_below());
    const auto& A = *m.algebra();
    for (int g = 0; g < A.size(); ++g)
        for (int d = m.lo(); d + A.degree(g) <= m.hi(); ++d) s.set_action(g, d + n, m.action(g, d));
    s.labels = m.labels;
    s.name = n == 0 ? m.name : "S^" + std::to_string(n) + " " + m.name;
    return s;
}

inline GradedModule direct_sum(const std::vector<GradedModule>& ms) {
    if (ms.empty()) throw std::invalid_argument("direct_sum of nothing");
    auto alg = ms[0].algebra();
    int lo = ms[0].lo(), hi = ms[0].hi();
    bool za = true, zb = true;
    for (const auto& m : ms) {
        if (m.algebra() != alg) throw std::invalid_argument("direct_sum over different algebras");
        lo = std::min(lo, m.lo());
        hi = std::max(hi, m.hi());
        za = za && m.zero_above();
        zb = zb && m.zero_below();
    }
    std::vector<int> dims;
    for (int d = lo; d <= hi; ++d) {
        int s = 0;
        for (const auto& m : ms) s += m.dim(d);  // throws when a summand is unknown inside the joint window
        dims.push_back(s);
    }
    GradedModule out(alg, lo, hi, dims, za, zb);
    const auto& A = *alg;
    for (int g = 0; g < A.size(); ++g) {
        int e = A.degree(g);
        for (int d = lo; d + e <= hi; ++d) {
            Matrix mat(A.prime(), out.dim(d + e), out.dim(d));
            int ro = 0, co = 0;
            for (const auto& m : ms) {
                int dr = m.dim(d + e), dc = m.dim(d);
                if (dr && dc) {
                    Matrix blk = m.action(g, d);
                    for (int r = 0; r < dr; ++r)
                        for (int c = 0; c < dc; ++c) mat.set(ro + r, co + c, blk.at(r, c));
                }
                ro += dr;
                co += dc;
            }
            out.set_action(g, d, mat);
        }
    }
    for (int d = lo; d <= hi; ++d) {
        std::vector<std::string> l;
        for (int k = 0; k < int(ms.size()); ++k)
            for (int i = 0; i < ms[k].dim(d); ++i) l.push_back(ms.size() == 1 ? ms[k].basis_label(d, i) : std::to_string(k) + ":" + ms[k].basis_label(d, i));
        out.labels.push_back(l);
    }
    out.name = "sum";
    return out;
}

// inclusion of the k-th summand into direct_sum(ms)
inline ModuleMap summand_inclusion(const std::vector<GradedModule>& ms, int k, const GradedModule& sum) {
    ModuleMap f{0, ms[k].lo(), ms[k].hi(), {}};
    for (int d = ms[k].lo(); d <= ms[k].hi(); ++d) {
        int off = 0;
        for (int i = 0; i < k; ++i) off += ms[i].dim(d);
        Matrix m(sum.prime(), sum.dim(d), ms[k].dim(d));
        for (int i = 0; i < ms[k].dim(d); ++i) m.set(off + i, i, 1);
        f.m.push_back(m);
    }
    return f;
}

inline Degreewise zero_sub(const GradedModule& m) {
    Degreewise s;
    for (int d = m.lo(); d <= m.hi(); ++d) s.emplace_back(m.prime(), m.dim(d));
    return s;
}

inline Degreewise full_sub(const GradedModule& m) {
    Degreewise s;
    for (int d = m.lo(); d <= m.hi(); ++d) s.push_back(Subspace::full(m.prime(), m.dim(d)));
    return s;
}

// degreewise spans of A x for the given homogeneous elements; the result is action-closed
inline Degreewise generated_subspaces(const GradedModule& m, const std::vector<std::pair<int, Vec>>& elems) {
    const auto& A = *m.algebra();
    std::vector<std::vector<Vec>> gens(m.hi() - m.lo() + 1);
    for (const auto& [d, x] : elems) {
        if (!m.in_window(d)) throw std::invalid_argument("generator outside module window");
        for (int g = 0; g < A.size(); ++g) {
            int e = d + A.degree(g);
            if (e > m.hi()) continue;
            gens[e - m.lo()].push_back(m.act(g, d, x));
        }
    }
    Degreewise s;
    for (int d = m.lo(); d <= m.hi(); ++d) s.push_back(Subspace::span(m.prime(), m.dim(d), gens[d - m.lo()]));
    return s;
}

inline bool is_action_closed(const GradedModule& m, const Degreewise& s) {
    const auto& A = *m.algebra();
    for (int g = 0; g < A.size(); ++g)
        for (int d = m.lo(); d + A.degree(g) <= m.hi(); ++d)
            for (const auto& v : s[d - m.lo()].vectors())
                if (!s[d + A.degree(g) - m.lo()].contains(m.act(g, d, v))) return false;
    return true;
}

inline Degreewise sub_sum(const Degreewise& a, const Degreewise& b) {
    Degreewise s;
    for (std::size_t i = 0; i < a.size(); ++i) s.push_back(a[i].sum(b[i]));
    return s;
}

inline Degreewise sub_intersect(const Degreewise& a, const Degreewise& b) {
    Degreewise s;
    for (std::size_t i = 0; i < a.size(); ++i) s.push_back(a[i].intersect(b[i]));
    return s;
}

// the submodule as a module in its echelon basis, with its inclusion
inline GradedModule restrict_to(const GradedModule& m, const Degreewise& s, ModuleMap* inclusion = nullptr) {
    if (!is_action_closed(m, s)) throw std::invalid_argument("subspaces are not closed under the action");
    std::vector<int> dims;
    for (int d = m.lo(); d <= m.hi(); ++d) dims.push_back(s[d - m.lo()].dim());
    GradedModule out(m.algebra(), m.lo(), m.hi(), dims, m.zero_above(), m.zero_below());
    const auto& A = *m.algebra();
    for (int g = 0; g < A.size(); ++g)
        for (int d = m.lo(); d + A.degree(g) <= m.hi(); ++d) {
            int e = d + A.degree(g);
            const Subspace& src = s[d - m.lo()];
            const Subspace& tgt = s[e - m.lo()];
            Matrix mat(m.prime(), tgt.dim(), src.dim());
            for (int i = 0; i < src.dim(); ++i) {
                Vec c = tgt.coordinates(m.act(g, d, src.vector(i)));
                for (int r = 0; r < tgt.dim(); ++r) mat.set(r, i, c[r]);
            }
            out.set_action(g, d, mat);
        }
    if (inclusion) {
        *inclusion = ModuleMap{0, m.lo(), m.hi(), {}};
        for (int d = m.lo(); d <= m.hi(); ++d) inclusion->m.push_back(s[d - m.lo()].basis().transpose());
    }
    out.name = "sub(" + m.name + ")";
    return out;
}

inline GradedModule quotient_module(const GradedModule& m, const Degreewise& s, ModuleMap* projection = nullptr) {
    if (!is_action_closed(m, s)) throw std::invalid_argument("quotient by a subspace family that is not a submodule");
    std::vector<Matrix> q, sec;
    std::vector<int> dims;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        q.push_back(quotient_map(m.dim(d), s[d - m.lo()]));
        sec.push_back(quotient_section(m.dim(d), s[d - m.lo()]));
        dims.push_back(q.back().rows());
    }
    GradedModule out(m.algebra(), m.lo(), m.hi(), dims, m.zero_above(), m.zero_below());
    const auto& A = *m.algebra();
    for (int g = 0; g < A.size(); ++g)
        for (int d = m.lo(); d + A.degree(g) <= m.hi(); ++d) {
            int e = d + A.degree(g);
            out.set_action(g, d, q[e - m.lo()] * m.action(g, d) * sec[d - m.lo()]);
        }
    if (projection) *projection = ModuleMap{0, m.lo(), m.hi(), q};
    out.name = "quot(" + m.name + ")";
    return out;
}

inline GradedModule submodule_generated(const GradedModule& m, const std::vector<std::pair<int, Vec>>& elems, ModuleMap* inclusion = nullptr) {
    return restrict_to(m, generated_subspaces(m, elems), inclusion);
}

// submodule generated by everything in degrees >= n
inline Degreewise conn_subspaces(const GradedModule& m, int n) {
    std::vector<std::pair<int, Vec>> elems;
    for (int d = std::max(n, m.lo()); d <= m.hi(); ++d)
        for (int i = 0; i < m.dim(d); ++i) {
            Vec v(m.dim(d), 0);
            v[i] = 1;
            elems.push_back({d, v});
        }
    return generated_subspaces(m, elems);
}

inline GradedModule conn_n(const GradedModule& m, int n, ModuleMap* inclusion = nullptr) {
    GradedModule c = restrict_to(m, conn_subspaces(m, n), inclusion);
    if (n <= m.hi() + 1) c.set_zero_below(true);
    c.name = "conn_" + std::to_string(n) + "(" + m.name + ")";
    return c;
}

inline GradedModule comod_n(const GradedModule& m, int n, ModuleMap* projection = nullptr) {
    GradedModule c = quotient_module(m, conn_subspaces(m, n), projection);
    if (n <= m.hi() + 1) c.set_zero_above(true);
    c.name = "comod_" + std::to_string(n) + "(" + m.name + ")";
    return c;
}

// Does every element of degree >= j kill x in M^d?  Unknown when the answer depends on degrees outside the window.
inline Tri grad_kills(const GradedModule& m, int d, const Vec& x, int j) {
    const auto& A = *m.algebra();
    if (is_zero_vec(x)) return Tri::True;
    Tri r = Tri::True;
    int last = A.complete() ? A.top() : std::max(A.top(), m.hi() - d);
    for (int e = std::max(j, 1); e <= last; ++e) {
        if (d + e > m.hi()) {
            if (!m.zero_above()) r = tri_and(r, Tri::Unknown);
            break;
        }
        for (int i = 0; i < A.dim(e); ++i)
            if (!is_zero_vec(m.act(A.global(e, i), d, x))) return Tri::False;
    }
    if (!A.complete() && d + A.top() + 1 <= m.hi()) r = tri_and(r, Tri::Unknown);
    return r;
}

// ---- coalgebras and comodules ----------------------------------------------

// Γ in degrees [-top, 0], the graded dual of a connected algebra
struct GradedCoalgebra {
    AlgebraPtr dual;  // Γ*
    int p = 2, top = 0;
    std::vector<int> dims;  // dims[n] = dim Γ^{-n}
    // delta[n][k]: Γ^{-n} -> Γ^{-k} ⊗ Γ^{-(n-k)}, rows indexed a * dims[n-k] + b
    std::vector<std::vector<Matrix>> delta;
    std::vector<std::vector<std::string>> labels;
};
using CoalgebraPtr = std::shared_ptr<const GradedCoalgebra>;

inline GradedCoalgebra dualize_algebra(AlgebraPtr alg) {
    const auto& A = *alg;
    GradedCoalgebra c;
    c.dual = alg;
    c.p = A.prime();
    c.top = A.top();
    for (int n = 0; n <= A.top(); ++n) {
        c.dims.push_back(A.dim(n));
        std::vector<std::string> l;
        for (const auto& s : A.labels(n)) l.push_back(s + "*");
        c.labels.push_back(l);
        std::vector<Matrix> row;
        for (int k = 0; k <= n; ++k) {
            Matrix m(A.prime(), A.dim(k) * A.dim(n - k), A.dim(n));
            for (int a = 0; a < A.dim(k); ++a)
                for (int b = 0; b < A.dim(n - k); ++b) {
                    const Vec& ab = A.product(A.global(k, a), A.global(n - k, b));
                    for (int cc = 0; cc < A.dim(n); ++cc) m.set(a * A.dim(n - k) + b, cc, ab[cc]);
                }
            row.push_back(m);
        }
        c.delta.push_back(row);
    }
    return c;
}

// structure constants of the dual algebra read off from Δ
inline GradedAlgebra dualize_coalgebra(const GradedCoalgebra& c, bool complete, const std::vector<int>& gens) {
    std::vector<std::vector<std::string>> labels;
    std::vector<int> off(c.top + 2, 0), deg;
    for (int n = 0; n <= c.top; ++n) {
        std::vector<std::string> l;
        for (int i = 0; i < c.dims[n]; ++i) {
            std::string s = c.labels.empty() ? "g" + std::to_string(n) + "_" + std::to_string(i) : c.labels[n][i];
            if (!s.empty() && s.back() == '*') s.pop_back();
            l.push_back(s);
            deg.push_back(n);
        }
        labels.push_back(l);
        off[n + 1] = off[n] + c.dims[n];
    }
    auto prod = [&](int a, int b) {
        int k = deg[a], m = deg[b], n = k + m;
        Vec v(c.dims[n], 0);
        int row = (a - off[k]) * c.dims[m] + (b - off[m]);
        for (int cc = 0; cc < c.dims[n]; ++cc) v[cc] = c.delta[n][k].at(row, cc);
        return v;
    };
    return GradedAlgebra(c.p, c.top, complete, labels, prod, gens, "dual");
}

struct GradedComodule {
    CoalgebraPtr coalg;
    int lo = 0, hi = -1;  // bounded above at hi
    std::vector<int> dims;
    bool zero_below = false;
    // psi[d - lo][n]: M^d -> M^{d+n} ⊗ Γ^{-n}, rows indexed m * coalg->dims[n] + γ
    std::vector<std::vector<Matrix>> psi;
    std::string name;
    int dim(int d) const {
        if (d >= lo && d <= hi) return dims[d - lo];
        if (d > hi || zero_below) return 0;
        throw UnknownDegree("comodule degree " + std::to_string(d) + " outside window");
    }
};

inline GradedModule iota(const GradedComodule& c) {
    const auto& G = *c.coalg;
    GradedModule m(G.dual, c.lo, c.hi, c.dims, true, c.zero_below);
    const auto& A = *G.dual;
    for (int g = 0; g < A.size(); ++g) {
        int n = A.degree(g), a = A.local(g);
        for (int d = c.lo; d + n <= c.hi; ++d) {
            const Matrix& ps = c.psi[d - c.lo][n];
            Matrix mat(A.prime(), c.dim(d + n), c.dim(d));
            for (int r = 0; r < c.dim(d + n); ++r)
                for (int k = 0; k < c.dim(d); ++k) mat.set(r, k, ps.at(r * G.dims[n] + a, k));
            m.set_action(g, d, mat);
        }
    }
    m.name = c.name;
    return m;
}

// ψ(x) = Σ_a (f_a x) ⊗ f_a^∨, pairing x against the dual basis; the module must be rational
inline GradedComodule coaction_from_action(const GradedModule& m, CoalgebraPtr coalg, int j_max = -1) {
    const auto& A = *m.algebra();
    if (coalg->dual != m.algebra()) throw std::invalid_argument("coaction_from_action: module is not over the dual of this coalgebra");
    if (j_max < 0) j_max = m.hi() - m.lo() + 1;
    for (int d = m.lo(); d <= m.hi(); ++d)
        for (int i = 0; i < m.dim(d); ++i) {
            Vec x(m.dim(d), 0);
            x[i] = 1;
            bool ok = false;
            for (int j = 1; j <= j_max && !ok; ++j) ok = grad_kills(m, d, x, j) == Tri::True;
            if (!ok)
                throw NonRational("non-rational module: the annihilator of " + m.basis_label(d, i) + " (degree " + std::to_string(d) +
                                      ") contains no I_j with j <= " + std::to_string(j_max),
                                  d, x);
        }
    GradedComodule c;
    c.coalg = coalg;
    c.lo = m.lo();
    c.hi = m.hi();
    c.dims = m.dims();
    c.zero_below = m.zero_below();
    c.name = m.name;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        std::vector<Matrix> comps;
        for (int n = 0; n <= std::min(coalg->top, m.hi() - d); ++n) {
            Matrix ps(A.prime(), m.dim(d + n) * coalg->dims[n], m.dim(d));
            for (int a = 0; a < A.dim(n); ++a) {
                Matrix act = m.action(A.global(n, a), d);
                for (int r = 0; r < act.rows(); ++r)
                    for (int k = 0; k < act.cols(); ++k) ps.set(r * coalg->dims[n] + a, k, act.at(r, k));
            }
            comps.push_back(ps);
        }
        c.psi.push_back(comps);
    }
    return c;
}

// counit and coassociativity on the window
inline std::optional<std::string> check_comodule(const GradedComodule& c) {
    const auto& G = *c.coalg;
    const int p = G.p;
    for (int d = c.lo; d <= c.hi; ++d) {
        if (c.psi[d - c.lo].empty()) return "missing coaction in degree " + std::to_string(d);
        if (c.psi[d - c.lo][0] != Matrix::identity(p, c.dim(d))) return "counit identity fails in degree " + std::to_string(d);
    }
    // (ψ ⊗ 1)ψ = (1 ⊗ Δ)ψ, component M^d -> M^{d+k+l} ⊗ Γ^{-k} ⊗ Γ^{-l}
    for (int d = c.lo; d <= c.hi; ++d)
        for (int n = 0; n <= std::min(G.top, c.hi - d); ++n)
            for (int k = 0; k <= n; ++k) {
                int l = n - k, e = d + n;
                int me = c.dim(e), dk = G.dims[k], dl = G.dims[l], dn = G.dims[n];
                int mid = c.dim(d + l);
                for (int x = 0; x < c.dim(d); ++x) {
                    std::vector<int> lhs(std::size_t(me) * dk * dl, 0), rhs(lhs.size(), 0);
                    const Matrix& psi_n = c.psi[d - c.lo][n];
                    for (int r = 0; r < me; ++r)
                        for (int g = 0; g < dn; ++g) {
                            int coef = psi_n.at(r * dn + g, x);
                            if (!coef) continue;
                            const Matrix& dl_ = G.delta[n][k];
                            for (int a = 0; a < dk; ++a)
                                for (int b = 0; b < dl; ++b) {
                                    int v = dl_.at(a * dl + b, g);
                                    if (v) rhs[(std::size_t(r) * dk + a) * dl + b] += coef * v;
                                }
                        }
                    const Matrix& psi_l = c.psi[d - c.lo][l];
                    const Matrix& psi_k = c.psi[d + l - c.lo][k];
                    for (int y = 0; y < mid; ++y)
                        for (int b = 0; b < dl; ++b) {
                            int coef = psi_l.at(y * dl + b, x);
                            if (!coef) continue;
                            for (int r = 0; r < me; ++r)
                                for (int a = 0; a < dk; ++a) {
                                    int v = psi_k.at(r * dk + a, y);
                                    if (v) lhs[(std::size_t(r) * dk + a) * dl + b] += coef * v;
                                }
                        }
                    for (std::size_t i = 0; i < lhs.size(); ++i)
                        if ((lhs[i] - rhs[i]) % p != 0)
                            return "coassociativity fails from degree " + std::to_string(d) + " through Γ^{-" + std::to_string(k) + "} ⊗ Γ^{-" + std::to_string(l) + "}";
                }
            }
    return std::nullopt;
}

// V ⊗ Γ with coaction V ⊗ Δ, on the degrees where the truncation of Γ sees everything
inline GradedComodule extended_comodule(const GradedVectorSpace& v, CoalgebraPtr coalg) {
    const auto& G = *coalg;
    GradedComodule c;
    c.coalg = coalg;
    c.hi = v.hi;
    c.lo = v.hi - G.top;
    c.zero_below = false;
    c.name = "V(x)Gamma";
    // basis of degree t: pairs (s, vi, γ) with γ ∈ Γ^{t-s}, ordered by s ascending
    auto index = [&](int t, int s, int vi, int g) {
        int off = 0;
        for (int u = std::max(v.lo, t); u < s; ++u) off += v.dim(u) * G.dims[u - t];
        return off + vi * G.dims[s - t] + g;
    };
    for (int t = c.lo; t <= c.hi; ++t) {
        int dsum = 0;
        for (int s = std::max(v.lo, t); s <= std::min(v.hi, t + G.top); ++s) dsum += v.dim(s) * G.dims[s - t];
        c.dims.push_back(dsum);
    }
    for (int t = c.lo; t <= c.hi; ++t) {
        std::vector<Matrix> comps;
        for (int n = 0; n <= std::min(G.top, c.hi - t); ++n) {
            int e = t + n;
            Matrix ps(G.p, c.dim(e) * G.dims[n], c.dim(t));
            for (int s = std::max(v.lo, t); s <= std::min(v.hi, t + G.top); ++s) {
                int m = s - t;  // v ⊗ γ with γ ∈ Γ^{-m}
                if (n > m) continue;
                const Matrix& D = G.delta[m][m - n];  // γ -> γ' ⊗ γ'' with γ' ∈ Γ^{-(m-n)}, γ'' ∈ Γ^{-n}
                for (int vi = 0; vi < v.dim(s); ++vi)
                    for (int g = 0; g < G.dims[m]; ++g)
                        for (int a = 0; a < G.dims[m - n]; ++a)
                            for (int b = 0; b < G.dims[n]; ++b) {
                                int coef = D.at(a * G.dims[n] + b, g);
                                if (!coef) continue;
                                int row = index(e, s, vi, a) * G.dims[n] + b;
                                ps.set(row, index(t, s, vi, g), ps.at(row, index(t, s, vi, g)) + coef);
                            }
            }
            comps.push_back(ps);
        }
        c.psi.push_back(comps);
    }
    return c;
}

// ψ itself as a degreewise linear map M^d -> (M ⊗ Γ)^d, rows ordered as in extended_comodule
inline Matrix coaction_matrix(const GradedComodule& c, int t) {
    const auto& G = *c.coalg;
    int rows = 0;
    for (int s = t; s <= std::min(c.hi, t + G.top); ++s) rows += c.dim(s) * G.dims[s - t];
    Matrix m(G.p, rows, c.dim(t));
    int off = 0;
    for (int s = t; s <= std::min(c.hi, t + G.top); ++s) {
        int n = s - t;
        const Matrix& ps = c.psi[t - c.lo][n];
        for (int r = 0; r < ps.rows(); ++r)
            for (int k = 0; k < ps.cols(); ++k) m.set(off + r, k, ps.at(r, k));
        off += ps.rows();
    }
    return m;
}

}  // namespace lcoh
