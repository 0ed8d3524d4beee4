#pragma once

#include <algorithm>
#include <set>

#include "graded.hpp"
#include "idealsets.hpp"

namespace lcoh {

// Milnor basis monomial Sq(r1, r2, ...), stored without trailing zeros
using Milnor = std::vector<int>;

struct MilnorElement {
    std::set<Milnor> terms;  // coefficients are 1 mod 2
    void toggle(const Milnor& m) {
        auto it = terms.find(m);
        if (it == terms.end())
            terms.insert(m);
        else
            terms.erase(it);
    }
    bool operator==(const MilnorElement& o) const { return terms == o.terms; }
    bool is_zero() const { return terms.empty(); }
};

inline Milnor normalize(Milnor r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

inline int milnor_degree(const Milnor& r) {
    int d = 0;
    for (std::size_t i = 0; i < r.size(); ++i) d += r[i] * ((1 << (i + 1)) - 1);
    return d;
}

inline std::string milnor_label(const Milnor& r) {
    if (r.empty()) return "1";
    std::string s = "Sq(";
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
    return s + ")";
}

inline std::string to_string(const MilnorElement& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& m : e.terms) s += (s.empty() ? "" : " + ") + milnor_label(m);
    return s;
}

// shorter sequences first, then lexicographically descending
inline bool milnor_order(const Milnor& a, const Milnor& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a > b;
}

inline std::vector<Milnor> milnor_basis(int d) {
    std::vector<Milnor> out;
    if (d < 0) return out;
    int k = 0;
    while ((1 << (k + 1)) - 1 <= d) ++k;
    Milnor cur(k, 0);
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i < 0) {
            if (rem == 0) out.push_back(normalize(cur));
            return;
        }
        int w = (1 << (i + 1)) - 1;
        for (int r = 0; r * w <= rem; ++r) {
            cur[i] = r;
            rec(i - 1, rem - r * w);
        }
        cur[i] = 0;
    };
    rec(k - 1, d);
    std::sort(out.begin(), out.end(), milnor_order);
    return out;
}

// product of Sq(r) and Sq(s) by enumerating Milnor matrices; multinomials mod 2 are 1 iff the binary digits are disjoint
inline MilnorElement milnor_product(const Milnor& r, const Milnor& s) {
    MilnorElement out;
    const int rows = int(r.size()), cols = int(s.size());
    // x[i][j], i = 1..rows, j = 1..cols
    std::vector<std::vector<int>> x(rows + 1, std::vector<int>(cols + 1, 0));
    std::vector<int> rrem(r.begin(), r.end()), srem(s.begin(), s.end());
    std::function<void(int)> rec = [&](int cell) {
        if (cell == rows * cols) {
            // x[i][0] = rrem[i-1], x[0][j] = srem[j-1]
            int diag = rows + cols;
            Milnor t(diag, 0);
            for (int n = 1; n <= diag; ++n) {
                int acc = 0, sum = 0;
                for (int i = 0; i <= std::min(n, rows); ++i) {
                    int j = n - i;
                    if (j > cols) continue;
                    int v = (i == 0) ? srem[j - 1] : (j == 0 ? rrem[i - 1] : x[i][j]);
                    if (acc & v) return;
                    acc |= v;
                    sum += v;
                }
                t[n - 1] = sum;
            }
            out.toggle(normalize(t));
            return;
        }
        int i = cell / cols + 1, j = cell % cols + 1;
        for (int v = 0; (v << j) <= rrem[i - 1] && v <= srem[j - 1]; ++v) {
            x[i][j] = v;
            rrem[i - 1] -= v << j;
            srem[j - 1] -= v;
            rec(cell + 1);
            rrem[i - 1] += v << j;
            srem[j - 1] += v;
        }
        x[i][j] = 0;
    };
    rec(0);
    return out;
}

inline MilnorElement milnor_product(const MilnorElement& a, const MilnorElement& b) {
    MilnorElement out;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms)
            for (const auto& z : milnor_product(x, y).terms) out.toggle(z);
    return out;
}

namespace detail {

inline AlgebraPtr milnor_algebra(const std::vector<std::vector<Milnor>>& basis, bool complete, const std::string& name) {
    int top = int(basis.size()) - 1;
    std::vector<std::vector<std::string>> labels;
    std::vector<Milnor> flat;
    std::map<Milnor, std::pair<int, int>> where;  // degree, local index
    for (int d = 0; d <= top; ++d) {
        std::vector<std::string> l;
        for (int i = 0; i < int(basis[d].size()); ++i) {
            l.push_back(milnor_label(basis[d][i]));
            where[basis[d][i]] = {d, i};
            flat.push_back(basis[d][i]);
        }
        labels.push_back(l);
    }
    auto prod = [&](int a, int b) {
        int d = milnor_degree(flat[a]) + milnor_degree(flat[b]);
        Vec v(basis[d].size(), 0);
        for (const auto& m : milnor_product(flat[a], flat[b]).terms) {
            auto it = where.find(m);
            if (it == where.end()) throw std::logic_error("product left the profile: " + milnor_label(m));
            v[it->second.second] ^= 1;
        }
        return v;
    };
    std::vector<int> gens;
    for (int k = 0; (1 << k) <= top; ++k) {
        auto it = where.find(Milnor{1 << k});
        if (it == where.end()) continue;
        int g = 0;
        for (int d = 0; d < it->second.first; ++d) g += int(basis[d].size());
        gens.push_back(g + it->second.second);
    }
    return std::make_shared<GradedAlgebra>(2, top, complete, labels, prod, gens, name);
}

}  // namespace detail

inline bool in_profile(const Milnor& r, int n) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        int idx = int(i) + 1;
        int bound = idx <= n + 1 ? (1 << (n + 2 - idx)) : 1;
        if (r[i] >= bound) return false;
    }
    return true;
}

inline int a_n_top_degree(int n) {
    int d = 0;
    for (int i = 1; i <= n + 1; ++i) d += ((1 << (n + 2 - i)) - 1) * ((1 << i) - 1);
    return d;
}

inline Milnor a_n_top_monomial(int n) {
    Milnor r;
    for (int i = 1; i <= n + 1; ++i) r.push_back((1 << (n + 2 - i)) - 1);
    return r;
}

inline AlgebraPtr build_A_n(int n) {
    if (n < 0 || n > 3) throw std::invalid_argument("A(n) supported for 0 <= n <= 3");
    int top = a_n_top_degree(n);
    std::vector<std::vector<Milnor>> basis(top + 1);
    for (int d = 0; d <= top; ++d)
        for (const auto& r : milnor_basis(d))
            if (in_profile(r, n)) basis[d].push_back(r);
    return detail::milnor_algebra(basis, true, "A(" + std::to_string(n) + ")");
}

inline CoalgebraPtr build_dual_A_n(int n) { return std::make_shared<GradedCoalgebra>(dualize_algebra(build_A_n(n))); }

// the Steenrod algebra seen through degree top
inline AlgebraPtr build_truncated_A(int top) {
    if (top < 1) throw std::invalid_argument("truncation degree must be at least 1");
    std::vector<std::vector<Milnor>> basis(top + 1);
    for (int d = 0; d <= top; ++d) basis[d] = milnor_basis(d);
    return detail::milnor_algebra(basis, false, "A<=" + std::to_string(top));
}

inline Milnor milnor_of(const GradedAlgebra& a, int g) {
    const std::string& s = a.label(g);
    Milnor r;
    if (s == "1") return r;
    std::stringstream ss(s.substr(3, s.size() - 4));
    std::string part;
    while (std::getline(ss, part, ',')) r.push_back(std::stoi(part));
    return r;
}

inline int milnor_index(const GradedAlgebra& a, const Milnor& r) {
    int d = milnor_degree(r);
    if (d > a.top()) return -1;
    std::string l = milnor_label(r);
    for (int i = 0; i < a.dim(d); ++i)
        if (a.labels(d)[i] == l) return a.global(d, i);
    return -1;
}

// coefficient vector of a Milnor element in the given algebra
inline Vec milnor_vec(const GradedAlgebra& a, const MilnorElement& e, int d) {
    Vec v(a.dim(d), 0);
    for (const auto& m : e.terms) {
        int g = milnor_index(a, m);
        if (g < 0 || a.degree(g) != d) throw std::invalid_argument("element not in algebra: " + milnor_label(m));
        v[a.local(g)] ^= 1;
    }
    return v;
}

// product of Sq(2^k) generators written left to right, e.g. {2,1} = Sq^2 Sq^1
inline MilnorElement sq_word(const std::vector<int>& word) {
    MilnorElement e;
    e.terms.insert(Milnor{});
    for (int k : word) {
        MilnorElement s;
        s.terms.insert(k ? Milnor{k} : Milnor{});
        e = milnor_product(e, s);
    }
    return e;
}

struct OrientationClass {
    int n;
    Milnor dual_of;  // ω_n is the dual basis element of this monomial
    int degree;      // = -(top degree of A(n))
};

inline OrientationClass omega(int n) { return {n, a_n_top_monomial(n), -a_n_top_degree(n)}; }

// ann(ω_n) inside ι of the dual of the truncated Steenrod algebra
inline HomogeneousLeftIdeal mitchell_ideal(const AlgebraPtr& truncated, int n) {
    auto w = omega(n);
    if (truncated->top() < -w.degree)
        throw std::invalid_argument("truncation degree " + std::to_string(truncated->top()) + " too small for omega_" + std::to_string(n) +
                                    " (needs " + std::to_string(-w.degree) + ")");
    GradedModule dual = dual_module(truncated, truncated->top());
    int g = milnor_index(*truncated, w.dual_of);
    Vec x = truncated->unit_vec(g);
    auto I = ann_left(dual, w.degree, x);
    I.name = "ann(omega_" + std::to_string(n) + ")";
    return I;
}

}  // namespace lcoh
