#pragma once

#include <optional>
#include <vector>

#include "hessmf/field.hpp"

namespace hessmf {

using ScalarMatrix = std::vector<std::vector<FieldElem>>;
using ScalarVec = std::vector<FieldElem>;

inline ScalarMatrix scalar_identity(int n) {
    ScalarMatrix m(n, ScalarVec(n, FieldElem(0)));
    for (int i = 0; i < n; ++i) m[i][i] = FieldElem(1);
    return m;
}

/// Rank by Gaussian elimination (exact; FieldElem is a field).
inline int scalar_rank(ScalarMatrix m) {
    int rows = (int)m.size();
    if (rows == 0) return 0;
    int cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        FieldElem inv = m[r][c].inverse();
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            FieldElem factor = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        ++r;
    }
    return r;
}

inline FieldElem scalar_det(ScalarMatrix m) {
    int n = (int)m.size();
    FieldElem d(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!m[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return FieldElem(0);
        if (piv != c) {
            std::swap(m[c], m[piv]);
            d = -d;
        }
        d *= m[c][c];
        FieldElem inv = m[c][c].inverse();
        for (int i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            FieldElem factor = m[i][c] * inv;
            for (int j = c; j < n; ++j) m[i][j] -= factor * m[c][j];
        }
    }
    return d;
}

/// Solve A X = B for square A; nullopt when A is singular.
inline std::optional<ScalarMatrix> scalar_solve(ScalarMatrix a, ScalarMatrix b) {
    int n = (int)a.size();
    int w = b.empty() ? 0 : (int)b[0].size();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != c) {
            std::swap(a[c], a[piv]);
            std::swap(b[c], b[piv]);
        }
        FieldElem inv = a[c][c].inverse();
        for (int j = c; j < n; ++j) a[c][j] *= inv;
        for (int j = 0; j < w; ++j) b[c][j] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            FieldElem factor = a[i][c];
            for (int j = c; j < n; ++j) a[i][j] -= factor * a[c][j];
            for (int j = 0; j < w; ++j) b[i][j] -= factor * b[c][j];
        }
    }
    return b;
}

/// Least-structure exact solve of a possibly rectangular system A x = b:
/// row-reduce [A|b]; returns any solution, or nullopt when inconsistent.
inline std::optional<ScalarVec> scalar_solve_rect(ScalarMatrix a, ScalarVec b) {
    int rows = (int)a.size();
    int cols = rows == 0 ? 0 : (int)a[0].size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        std::swap(b[r], b[piv]);
        FieldElem inv = a[r][c].inverse();
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            FieldElem factor = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
            b[i] -= factor * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;  // inconsistent
    ScalarVec x(cols, FieldElem(0));
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

inline ScalarVec scalar_mat_vec(const ScalarMatrix& a, const ScalarVec& x) {
    ScalarVec y(a.size(), FieldElem(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] += a[i][j] * x[j];
    return y;
}

}  // namespace hessmf
