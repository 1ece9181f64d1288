#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hessmf/poly.hpp"

namespace hessmf {

/// Rectangular matrix with Poly entries sharing nvars and field.
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0), nvars_(0), field_(Field::Q) {}

    PolyMatrix(int rows, int cols, int nvars, Field field = Field::Q)
        : rows_(rows), cols_(cols), nvars_(nvars), field_(field),
          entries_((size_t)rows * cols, Poly::zero(nvars, field)) {}

    static PolyMatrix identity(int n, int nvars, Field field = Field::Q) {
        PolyMatrix m(n, n, nvars, field);
        for (int i = 0; i < n; ++i) m.at(i, i) = Poly::constant(nvars, FieldElem(1), field);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }
    Field field() const { return field_; }
    bool is_square() const { return rows_ == cols_; }

    const Poly& at(int i, int j) const { return entries_[(size_t)i * cols_ + j]; }
    Poly& at(int i, int j) { return entries_[(size_t)i * cols_ + j]; }

    void set(int i, int j, Poly p) {
        if (p.nvars() != nvars_ || p.field() != field_)
            throw Error("matrix entry ring mismatch");
        entries_[(size_t)i * cols_ + j] = std::move(p);
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool is_skew_symmetric() const {
        if (!is_square()) return false;
        for (int i = 0; i < rows_; ++i) {
            if (!at(i, i).is_zero()) return false;
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != -at(j, i)) return false;
        }
        return true;
    }

    /// All entries homogeneous of one common degree; returns that degree.
    std::optional<uint32_t> uniform_entry_degree() const {
        std::optional<uint32_t> d;
        for (const auto& e : entries_) {
            if (e.is_zero()) continue;
            if (!e.is_homogeneous()) return std::nullopt;
            uint32_t de = e.degree();
            if (!d)
                d = de;
            else if (*d != de)
                return std::nullopt;
        }
        return d ? d : std::optional<uint32_t>(0);
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw Error("matrix product size mismatch");
        PolyMatrix r(a.rows_, b.cols_, a.nvars_, a.field_);
        for (int i = 0; i < a.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) {
                Poly s = Poly::zero(a.nvars_, a.field_);
                for (int k = 0; k < a.cols_; ++k) {
                    if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                    s += a.at(i, k) * b.at(k, j);
                }
                r.at(i, j) = std::move(s);
            }
        return r;
    }

    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix size mismatch");
        PolyMatrix r(a.rows_, a.cols_, a.nvars_, a.field_);
        for (size_t k = 0; k < a.entries_.size(); ++k) r.entries_[k] = a.entries_[k] - b.entries_[k];
        return r;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const Poly& f) {
        PolyMatrix r = a;
        for (auto& e : r.entries_) e = e * f;
        return r;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    /// Entrywise evaluation at a point.
    std::vector<std::vector<FieldElem>> eval(const Point& p) const {
        std::vector<std::vector<FieldElem>> m(rows_, std::vector<FieldElem>(cols_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m[i][j] = at(i, j).eval(p);
        return m;
    }

private:
    int rows_, cols_, nvars_;
    Field field_;
    std::vector<Poly> entries_;
};

/// (n+1)x(n+1) symmetric matrix of second partials; entries homogeneous of
/// degree d-2 for homogeneous f of degree d >= 2.
inline PolyMatrix hessian(const Poly& f) {
    if (f.is_zero() || f.homogeneous_degree() < 2)
        throw Error("hessian: input must be homogeneous of degree >= 2");
    int n = f.nvars();
    PolyMatrix h(n, n, n, f.field());
    std::vector<Poly> grad(n);
    for (int i = 0; i < n; ++i) grad[i] = f.diff(i);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Poly second = grad[i].diff(j);
            h.at(i, j) = second;
            if (i != j) h.at(j, i) = std::move(second);
        }
    return h;
}

namespace detail {

// Fraction-free Bareiss over the polynomial ring; all divisions exact.
inline Poly det_bareiss(PolyMatrix m) {
    int n = m.rows();
    Poly prev = Poly::constant(m.nvars(), FieldElem(1), m.field());
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k).is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m.at(i, k).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Poly::zero(m.nvars(), m.field());
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Poly t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = div_exact(t, prev);
            }
            m.at(i, k) = Poly::zero(m.nvars(), m.field());
        }
        prev = m.at(k, k);
    }
    Poly d = m.at(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

// Laplace expansion down the rows, memoized on column subsets.  Effective on
// sparse matrices; used above the Bareiss size cutoff.
inline Poly det_minor_dp(const PolyMatrix& m) {
    int n = m.rows();
    if (n > 24) throw Error("det: matrix too large for minor expansion");
    std::map<uint32_t, Poly> cur;
    cur[0] = Poly::constant(m.nvars(), FieldElem(1), m.field());
    for (int row = 0; row < n; ++row) {
        std::map<uint32_t, Poly> next;
        for (const auto& [mask, val] : cur) {
            if (val.is_zero()) continue;
            int sign = 0;
            for (int c = 0; c < n; ++c) {
                if (mask & (1u << c)) continue;
                if (!m.at(row, c).is_zero()) {
                    Poly contrib = val * m.at(row, c);
                    if (sign & 1) contrib = -contrib;
                    uint32_t nm = mask | (1u << c);
                    auto it = next.find(nm);
                    if (it == next.end())
                        next.emplace(nm, std::move(contrib));
                    else
                        it->second += contrib;
                }
                ++sign;
            }
        }
        cur = std::move(next);
        if (cur.empty()) return Poly::zero(m.nvars(), m.field());
    }
    auto it = cur.find((n >= 32) ? 0xffffffffu : ((1u << n) - 1));
    return it == cur.end() ? Poly::zero(m.nvars(), m.field()) : it->second;
}

}  // namespace detail

/// Exact symbolic determinant.  Bareiss for sizes <= 9, memoized Laplace
/// expansion beyond that.  Matrices in more than 15 variables are refused
/// unless the caller opts in: certification never needs those determinants.
inline Poly det(const PolyMatrix& m, bool force_large = false) {
    if (!m.is_square()) throw Error("det: matrix not square");
    if (m.rows() == 0) return Poly::constant(m.nvars(), FieldElem(1), m.field());
    if (m.nvars() > 15 && !force_large)
        throw Error("det: refusing symbolic determinant in more than 15 variables "
                    "(pass force_large to override)");
    if (m.rows() <= 9) return detail::det_bareiss(m);
    return detail::det_minor_dp(m);
}

/// Exact Pfaffian of a skew-symmetric matrix of even size, by subset DP over
/// perfect matchings (division-free).  pf(M)^2 = det(M).
inline Poly pfaffian(const PolyMatrix& m) {
    if (!m.is_square()) throw Error("pfaffian: matrix not square");
    int n = m.rows();
    if (n % 2 != 0) throw Error("pfaffian: odd size");
    if (!m.is_skew_symmetric()) throw Error("pfaffian: matrix is not skew-symmetric");
    if (n == 0) return Poly::constant(m.nvars(), FieldElem(1), m.field());
    if (n > 16) throw Error("pfaffian: matrix too large");
    // pf over subsets: match the lowest free index with each partner
    std::map<uint32_t, Poly> memo;
    uint32_t full = (1u << n) - 1;
    memo[0] = Poly::constant(m.nvars(), FieldElem(1), m.field());
    std::vector<uint32_t> order;  // subsets of even popcount, increasing popcount
    for (uint32_t s = 1; s <= full; ++s)
        if (__builtin_popcount(s) % 2 == 0) order.push_back(s);
    std::sort(order.begin(), order.end(), [](uint32_t a, uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (uint32_t s : order) {
        int lo = __builtin_ctz(s);
        Poly acc = Poly::zero(m.nvars(), m.field());
        int skipped = 0;
        for (int j = lo + 1; j < n; ++j) {
            if (!(s & (1u << j))) continue;
            const Poly& e = m.at(lo, j);
            if (!e.is_zero()) {
                Poly sub = memo[s & ~(1u << lo) & ~(1u << j)];
                Poly contrib = e * sub;
                if (skipped & 1) contrib = -contrib;
                acc += contrib;
            }
            ++skipped;
        }
        memo[s] = std::move(acc);
    }
    return memo[full];
}

}  // namespace hessmf
