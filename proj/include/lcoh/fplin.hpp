#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcoh {

using Vec = std::vector<std::uint8_t>;

enum class Tri { False, True, Unknown };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        default: return "unknown";
    }
}

inline Tri tri_and(Tri a, Tri b) {
    if (a == Tri::False || b == Tri::False) return Tri::False;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::True;
}

namespace detail {

inline void check_prime(int p) {
    if (p < 2 || p > 251) throw std::invalid_argument("prime out of range: " + std::to_string(p));
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("not a prime: " + std::to_string(p));
}

inline int inv_mod(int a, int p) {
    // Fermat; p is small
    int r = 1, b = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

}  // namespace detail

class Matrix {
public:
    Matrix() = default;
    Matrix(int p, int rows, int cols) : p_(p), r_(rows), c_(cols), a_(std::size_t(rows) * cols, 0) {
        detail::check_prime(p);
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }

    static Matrix identity(int p, int n) {
        Matrix m(p, n, n);
        for (int i = 0; i < n; ++i) m.a_[std::size_t(i) * n + i] = 1;
        return m;
    }

    static Matrix from_rows(int p, const std::vector<std::vector<int>>& rows, int cols = -1) {
        int c = cols >= 0 ? cols : (rows.empty() ? 0 : int(rows[0].size()));
        Matrix m(p, int(rows.size()), c);
        for (int i = 0; i < m.r_; ++i) {
            if (int(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
            for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    // columns given as vectors of length `rows`
    static Matrix from_columns(int p, int rows, const std::vector<Vec>& cols) {
        Matrix m(p, rows, int(cols.size()));
        for (int j = 0; j < m.c_; ++j) {
            if (int(cols[j].size()) != rows) throw std::invalid_argument("column length mismatch");
            for (int i = 0; i < rows; ++i) m.a_[std::size_t(i) * m.c_ + j] = cols[j][i];
        }
        return m;
    }

    int prime() const { return p_; }
    int rows() const { return r_; }
    int cols() const { return c_; }

    std::uint8_t at(int i, int j) const { return a_[std::size_t(i) * c_ + j]; }
    void set(int i, int j, long long v) {
        long long m = v % p_;
        if (m < 0) m += p_;
        a_[std::size_t(i) * c_ + j] = std::uint8_t(m);
    }
    std::uint8_t* row(int i) { return a_.data() + std::size_t(i) * c_; }
    const std::uint8_t* row(int i) const { return a_.data() + std::size_t(i) * c_; }
    const std::vector<std::uint8_t>& data() const { return a_; }

    Vec row_vec(int i) const { return Vec(row(i), row(i) + c_); }
    Vec col_vec(int j) const {
        Vec v(r_);
        for (int i = 0; i < r_; ++i) v[i] = at(i, j);
        return v;
    }

    bool is_zero() const {
        for (auto x : a_)
            if (x) return false;
        return true;
    }

    bool operator==(const Matrix& o) const { return p_ == o.p_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(p_, c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t.a_[std::size_t(j) * r_ + i] = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        same_prime(o);
        if (c_ != o.r_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix m(p_, r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                int a = at(i, k);
                if (!a) continue;
                axpy_row(m.row(i), o.row(k), a, o.c_);
            }
        return m;
    }

    Matrix operator+(const Matrix& o) const {
        same_prime(o);
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum dimension mismatch");
        Matrix m = *this;
        axpy_row(m.a_.data(), o.a_.data(), 1, int(a_.size()));
        return m;
    }

    Vec apply(const Vec& v) const {
        if (int(v.size()) != c_) throw std::invalid_argument("matrix-vector dimension mismatch");
        Vec out(r_, 0);
        for (int i = 0; i < r_; ++i) {
            int s = 0;
            const std::uint8_t* ri = row(i);
            for (int j = 0; j < c_; ++j) s += ri[j] * v[j];
            out[i] = std::uint8_t(s % p_);
        }
        return out;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        a.same_prime(b);
        if (a.r_ != b.r_) throw std::invalid_argument("hstack row mismatch");
        Matrix m(a.p_, a.r_, a.c_ + b.c_);
        for (int i = 0; i < a.r_; ++i) {
            std::copy(a.row(i), a.row(i) + a.c_, m.row(i));
            std::copy(b.row(i), b.row(i) + b.c_, m.row(i) + a.c_);
        }
        return m;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b) {
        a.same_prime(b);
        if (a.c_ != b.c_) throw std::invalid_argument("vstack column mismatch");
        Matrix m(a.p_, a.r_ + b.r_, a.c_);
        std::copy(a.a_.begin(), a.a_.end(), m.a_.begin());
        std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + a.a_.size());
        return m;
    }

    // dst += a * src over F_p
    void axpy_row(std::uint8_t* dst, const std::uint8_t* src, int a, int n) const {
        if (p_ == 2) {
            if (a & 1)
                for (int j = 0; j < n; ++j) dst[j] ^= src[j];
            return;
        }
        for (int j = 0; j < n; ++j)
            if (src[j]) dst[j] = std::uint8_t((dst[j] + a * src[j]) % p_);
    }

    void same_prime(const Matrix& o) const {
        if (p_ != o.p_) throw std::invalid_argument("mixing primes " + std::to_string(p_) + " and " + std::to_string(o.p_));
    }

private:
    int p_ = 2;
    int r_ = 0;
    int c_ = 0;
    std::vector<std::uint8_t> a_;
};

struct Echelon {
    Matrix form;
    std::vector<int> pivots;  // pivot column of each nonzero row
    int rank() const { return int(pivots.size()); }
};

inline Echelon echelon(Matrix m) {
    const int p = m.prime(), R = m.rows(), C = m.cols();
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < C && r < R; ++c) {
        int sel = -1;
        for (int i = r; i < R; ++i)
            if (m.at(i, c)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < C; ++j) std::swap(m.row(sel)[j], m.row(r)[j]);
        int lead = m.at(r, c);
        if (lead != 1) {
            int inv = detail::inv_mod(lead, p);
            std::uint8_t* rr = m.row(r);
            for (int j = c; j < C; ++j) rr[j] = std::uint8_t(rr[j] * inv % p);
        }
        for (int i = 0; i < R; ++i) {
            if (i == r) continue;
            int f = m.at(i, c);
            if (f) m.axpy_row(m.row(i), m.row(r), p - f, C);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(piv)};
}

inline Matrix rref(const Matrix& m) { return echelon(m).form; }
inline int rank(const Matrix& m) { return echelon(m).rank(); }

class Subspace {
public:
    Subspace() = default;
    Subspace(int p, int ambient) : p_(p), n_(ambient), basis_(p, 0, ambient) {}

    // span of the rows of m
    static Subspace row_space(const Matrix& m) {
        Subspace s(m.prime(), m.cols());
        s.set_from(m);
        return s;
    }
    static Subspace span(int p, int ambient, const std::vector<Vec>& vs) {
        Matrix m(p, int(vs.size()), ambient);
        for (int i = 0; i < int(vs.size()); ++i) {
            if (int(vs[i].size()) != ambient) throw std::invalid_argument("span: vector length mismatch");
            std::copy(vs[i].begin(), vs[i].end(), m.row(i));
        }
        return row_space(m);
    }
    static Subspace column_space(const Matrix& m) { return row_space(m.transpose()); }
    static Subspace full(int p, int ambient) { return row_space(Matrix::identity(p, ambient)); }

    int prime() const { return p_; }
    int ambient_dim() const { return n_; }
    int dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == n_; }
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return piv_; }
    Vec vector(int i) const { return basis_.row_vec(i); }
    std::vector<Vec> vectors() const {
        std::vector<Vec> out;
        for (int i = 0; i < dim(); ++i) out.push_back(vector(i));
        return out;
    }

    // v minus its projection along the echelon basis; zero iff v lies in the span
    Vec reduce(Vec v) const {
        for (int i = 0; i < dim(); ++i) {
            int f = v[piv_[i]];
            if (f) basis_.axpy_row(v.data(), basis_.row(i), p_ - f, n_);
        }
        return v;
    }
    bool contains(const Vec& v) const {
        if (int(v.size()) != n_) throw std::invalid_argument("contains: dimension mismatch");
        for (auto x : reduce(v))
            if (x) return false;
        return true;
    }
    bool contains(const Subspace& o) const {
        for (int i = 0; i < o.dim(); ++i)
            if (!contains(o.vector(i))) return false;
        return true;
    }
    // coefficients of v (assumed in the span) in the echelon basis
    Vec coordinates(const Vec& v) const {
        Vec c(dim());
        for (int i = 0; i < dim(); ++i) c[i] = v[piv_[i]];
        return c;
    }

    Subspace sum(const Subspace& o) const { return row_space(Matrix::vstack(basis_, o.basis_)); }
    Subspace intersect(const Subspace& o) const;

    bool operator==(const Subspace& o) const { return p_ == o.p_ && n_ == o.n_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    void set_from(const Matrix& m) {
        Echelon e = echelon(m);
        Matrix b(m.prime(), e.rank(), m.cols());
        for (int i = 0; i < e.rank(); ++i) std::copy(e.form.row(i), e.form.row(i) + m.cols(), b.row(i));
        basis_ = std::move(b);
        piv_ = std::move(e.pivots);
    }
    int p_ = 2;
    int n_ = 0;
    Matrix basis_{2, 0, 0};
    std::vector<int> piv_;
};

inline Subspace kernel_basis(const Matrix& m) {
    const int p = m.prime(), C = m.cols();
    Echelon e = echelon(m);
    std::vector<char> is_piv(C, 0);
    for (int c : e.pivots) is_piv[c] = 1;
    std::vector<Vec> vs;
    for (int f = 0; f < C; ++f) {
        if (is_piv[f]) continue;
        Vec v(C, 0);
        v[f] = 1;
        for (int i = 0; i < e.rank(); ++i) {
            int a = e.form.at(i, f);
            if (a) v[e.pivots[i]] = std::uint8_t((p - a) % p);
        }
        vs.push_back(std::move(v));
    }
    return Subspace::span(p, C, vs);
}

inline Subspace image(const Matrix& m) { return Subspace::column_space(m); }

inline Subspace Subspace::intersect(const Subspace& o) const {
    if (n_ != o.n_) throw std::invalid_argument("intersect: ambient mismatch");
    // x = sum c_i b_i lies in o iff the reduction against o vanishes, which is linear in c
    Matrix red(p_, n_, dim());
    for (int i = 0; i < dim(); ++i) {
        Vec r = o.reduce(vector(i));
        for (int k = 0; k < n_; ++k) red.set(k, i, r[k]);
    }
    Subspace ker = kernel_basis(red);
    std::vector<Vec> out;
    for (int i = 0; i < ker.dim(); ++i) {
        Vec c = ker.vector(i), x(n_, 0);
        for (int j = 0; j < dim(); ++j)
            if (c[j]) basis_.axpy_row(x.data(), basis_.row(j), c[j], n_);
        out.push_back(std::move(x));
    }
    return span(p_, n_, out);
}

inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (int(b.size()) != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
    const int p = m.prime(), C = m.cols();
    Matrix aug(p, m.rows(), C + 1);
    for (int i = 0; i < m.rows(); ++i) {
        std::copy(m.row(i), m.row(i) + C, aug.row(i));
        aug.row(i)[C] = b[i] % p;
    }
    Echelon e = echelon(aug);
    Vec x(C, 0);
    for (int i = 0; i < e.rank(); ++i) {
        if (e.pivots[i] == C) return std::nullopt;
        x[e.pivots[i]] = e.form.at(i, C);
    }
    return x;
}

// surjection F_p^n -> F_p^(n - dim sub) whose kernel is sub; coordinates are the non-pivot positions
inline Matrix quotient_map(int ambient, const Subspace& sub) {
    if (sub.ambient_dim() != ambient) throw std::invalid_argument("quotient_map: ambient mismatch");
    const int p = sub.prime();
    std::vector<char> is_piv(ambient, 0);
    for (int c : sub.pivots()) is_piv[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < ambient; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    Matrix q(p, int(free_cols.size()), ambient);
    for (int j = 0; j < ambient; ++j) {
        Vec e(ambient, 0);
        e[j] = 1;
        Vec r = sub.reduce(e);
        for (int k = 0; k < int(free_cols.size()); ++k) q.set(k, j, r[free_cols[k]]);
    }
    return q;
}

// a right inverse of quotient_map: unit vectors at the non-pivot positions
inline Matrix quotient_section(int ambient, const Subspace& sub) {
    std::vector<char> is_piv(ambient, 0);
    for (int c : sub.pivots()) is_piv[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < ambient; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    Matrix s(sub.prime(), ambient, int(free_cols.size()));
    for (int k = 0; k < int(free_cols.size()); ++k) s.set(free_cols[k], k, 1);
    return s;
}

inline bool is_zero_vec(const Vec& v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

inline void add_scaled(Vec& dst, const Vec& src, int a, int p) {
    if (a % p == 0) return;
    for (std::size_t i = 0; i < dst.size(); ++i)
        if (src[i]) dst[i] = std::uint8_t((dst[i] + a * src[i]) % p);
}

}  // namespace lcoh
