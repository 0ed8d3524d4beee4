#pragma once

// Brute-force reference computations used to cross-check the engine.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "lcoh/lcoh.hpp"

namespace oracle {

using lcoh::Matrix;
using lcoh::Vec;

// every vector of F_p^n
inline std::vector<Vec> all_vectors(int p, int n) {
    std::vector<Vec> out;
    Vec v(n, 0);
    while (true) {
        out.push_back(v);
        int i = 0;
        while (i < n && ++v[i] == p) v[i++] = 0;
        if (i == n) break;
    }
    return out;
}

inline Vec apply(const Matrix& m, const Vec& v) {
    Vec out(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        int s = 0;
        for (int j = 0; j < m.cols(); ++j) s += m.at(i, j) * v[j];
        out[i] = std::uint8_t(s % m.prime());
    }
    return out;
}

// rank as log_p of the number of distinct images
inline int rank_by_enumeration(const Matrix& m) {
    std::set<Vec> img;
    for (const auto& v : all_vectors(m.prime(), m.cols())) img.insert(apply(m, v));
    int r = 0;
    std::size_t n = img.size();
    while (n > 1) {
        n /= m.prime();
        ++r;
    }
    return r;
}

inline std::vector<Vec> kernel_by_enumeration(const Matrix& m) {
    std::vector<Vec> out;
    for (const auto& v : all_vectors(m.prime(), m.cols()))
        if (lcoh::is_zero_vec(apply(m, v))) out.push_back(v);
    return out;
}

// determinant mod p by cofactor expansion
inline int det_by_minors(const Matrix& m, std::vector<int> rows, std::vector<int> cols) {
    int n = int(rows.size());
    if (n == 0) return 1;
    int p = m.prime(), s = 0;
    for (int k = 0; k < n; ++k) {
        int a = m.at(rows[0], cols[k]);
        if (!a) continue;
        std::vector<int> r2(rows.begin() + 1, rows.end()), c2;
        for (int j = 0; j < n; ++j)
            if (j != k) c2.push_back(cols[j]);
        int sub = det_by_minors(m, r2, c2);
        s += (k % 2 ? p - a : a) * sub;
        s %= p;
    }
    return s;
}

// rank as the largest nonvanishing minor
inline int rank_by_minors(const Matrix& m) {
    int best = 0;
    int R = m.rows(), C = m.cols();
    for (int k = 1; k <= std::min(R, C); ++k) {
        bool found = false;
        std::vector<int> rs(k), cs(k);
        std::function<bool(int, int)> pick_rows, pick_cols;
        pick_cols = [&](int i, int start) -> bool {
            if (i == k) return det_by_minors(m, rs, cs) != 0;
            for (int c = start; c < C; ++c) {
                cs[i] = c;
                if (pick_cols(i + 1, c + 1)) return true;
            }
            return false;
        };
        pick_rows = [&](int i, int start) -> bool {
            if (i == k) return pick_cols(0, 0);
            for (int r = start; r < R; ++r) {
                rs[i] = r;
                if (pick_rows(i + 1, r + 1)) return true;
            }
            return false;
        };
        found = pick_rows(0, 0);
        if (!found) break;
        best = k;
    }
    return best;
}

// ---- Steenrod action on a polynomial ring --------------------------------

using Monomial = std::vector<int>;       // exponents of t_1..t_n
using Poly = std::set<Monomial>;          // F_2 coefficients

inline void toggle(Poly& p, const Monomial& m) {
    auto it = p.find(m);
    if (it == p.end())
        p.insert(m);
    else
        p.erase(it);
}

// multinomial(n; parts) mod 2 is 1 iff the parts have disjoint binary digits
inline int multinomial_mod2(const std::vector<int>& parts) {
    int acc = 0;
    for (int x : parts) {
        if (acc & x) return 0;
        acc |= x;
    }
    return 1;
}

// Sq(R) on a monomial via the Cartan formula: each of the e_k copies of t_k is sent
// to t_k^{2^i} with r_i copies landing at level i >= 1
inline Poly sq_on_monomial(const lcoh::Milnor& r, const Monomial& m) {
    Poly out;
    int n = int(m.size()), L = int(r.size());
    std::vector<int> need(r.begin(), r.end());
    Monomial res(n, 0);
    std::vector<int> counts(L + 1, 0);
    std::function<void(int, int)> var = [&](int k, int coef) {
        if (k == n) {
            for (int x : need)
                if (x) return;
            if (coef) toggle(out, res);
            return;
        }
        // distribute e_k copies across levels 0..L
        std::function<void(int, int)> lvl = [&](int i, int rem) {
            if (i == 0) {
                counts[0] = rem;
                int c = multinomial_mod2(counts);
                if (c) {
                    int e = 0;
                    for (int j = 0; j <= L; ++j) e += counts[j] << j;
                    res[k] = e;
                    var(k + 1, coef);
                }
                return;
            }
            for (int c = 0; c <= std::min(rem, need[i - 1]); ++c) {
                counts[i] = c;
                need[i - 1] -= c;
                lvl(i - 1, rem - c);
                need[i - 1] += c;
            }
            counts[i] = 0;
        };
        lvl(L, m[k]);
    };
    var(0, 1);
    return out;
}

inline Poly sq_on_poly(const lcoh::Milnor& r, const Poly& p) {
    Poly out;
    for (const auto& m : p)
        for (const auto& x : sq_on_monomial(r, m)) toggle(out, x);
    return out;
}

// Sq(R) Sq(S) by composing actions on t_1 ... t_n, decoded against the images of the Milnor basis
inline lcoh::MilnorElement product_by_action(const lcoh::Milnor& r, const lcoh::Milnor& s) {
    int d = lcoh::milnor_degree(r) + lcoh::milnor_degree(s);
    int n = std::max(d, 1);
    Poly w{Monomial(n, 1)};
    Poly target = sq_on_poly(r, sq_on_poly(s, w));
    lcoh::MilnorElement out;
    // images of distinct basis elements have distinct exponent patterns; peel off by leading monomial
    auto basis = lcoh::milnor_basis(d);
    std::map<Monomial, lcoh::Milnor> lead;
    std::map<lcoh::Milnor, Poly> img;
    for (const auto& t : basis) {
        img[t] = sq_on_poly(t, w);
        lead[*img[t].rbegin()] = t;
    }
    while (!target.empty()) {
        auto it = lead.find(*target.rbegin());
        if (it == lead.end()) throw std::logic_error("polynomial not in the span of the basis images");
        out.toggle(it->second);
        for (const auto& x : img[it->second]) toggle(target, x);
    }
    return out;
}

inline int binom_mod2(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return (k & ~n) == 0 ? 1 : 0;
}

// right side of the Adem relation for Sq^a Sq^b, a < 2b, as composites Sq^{a+b-c} Sq^c
inline std::vector<std::pair<int, int>> adem(int a, int b) {
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c <= a / 2; ++c)
        if (binom_mod2(b - c - 1, a - 2 * c)) out.push_back({a + b - c, c});
    return out;
}

// ---- modules ----------------------------------------------------------------

// submodule generated by gens, by closing sets of elements under sums and every basis action
inline std::vector<int> submodule_dims_by_closure(const lcoh::GradedModule& m, const std::vector<std::pair<int, Vec>>& gens) {
    const auto& A = *m.algebra();
    std::map<int, std::set<Vec>> elems;
    for (int d = m.lo(); d <= m.hi(); ++d) elems[d].insert(Vec(m.dim(d), 0));
    for (const auto& [d, x] : gens) elems[d].insert(x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int d = m.lo(); d <= m.hi(); ++d) {
            std::vector<Vec> cur(elems[d].begin(), elems[d].end());
            for (const auto& x : cur)
                for (const auto& y : cur) {
                    Vec z(x.size());
                    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % m.prime();
                    changed |= elems[d].insert(z).second;
                }
            for (const auto& x : cur)
                for (int g = 0; g < A.size(); ++g) {
                    int e = d + A.degree(g);
                    if (e > m.hi()) continue;
                    changed |= elems[e].insert(m.act(g, d, x)).second;
                }
        }
    }
    std::vector<int> dims;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        int r = 0;
        std::size_t n = elems[d].size();
        while (n > 1) {
            n /= m.prime();
            ++r;
        }
        dims.push_back(r);
    }
    return dims;
}

// all degree-preserving module maps from src to tgt, by enumerating degreewise matrices
inline int hom_dim_by_enumeration(const lcoh::GradedModule& src, const lcoh::GradedModule& tgt, int shift) {
    // unknowns: entries of every degree component
    std::vector<std::pair<int, int>> blocks;
    int total = 0;
    for (int d = src.lo(); d <= src.hi(); ++d) {
        int r = tgt.known(d + shift) ? tgt.dim(d + shift) : 0;
        blocks.push_back({r, src.dim(d)});
        total += r * src.dim(d);
    }
    if (total > 16) throw std::invalid_argument("too many unknowns for enumeration");
    const auto& A = *src.algebra();
    int count = 0;
    for (const auto& v : all_vectors(src.prime(), total)) {
        std::vector<Matrix> f;
        int off = 0;
        for (auto [r, c] : blocks) {
            Matrix m(src.prime(), r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m.set(i, j, v[off++]);
            f.push_back(m);
        }
        bool ok = true;
        for (int g = 0; g < A.size() && ok; ++g)
            for (int d = src.lo(); d <= src.hi() && ok; ++d) {
                int e = d + A.degree(g);
                Matrix lhs = (e <= src.hi()) ? f[e - src.lo()] * src.action(g, d) : Matrix(src.prime(), tgt.known(e + shift) ? tgt.dim(e + shift) : 0, src.dim(d));
                if (!tgt.known(e + shift)) continue;
                Matrix rhs = tgt.action(g, d + shift) * f[d - src.lo()];
                ok = lhs == rhs;
            }
        count += ok;
    }
    int r = 0;
    while (count > 1) {
        count /= src.prime();
        ++r;
    }
    return r;
}

}  // namespace oracle
