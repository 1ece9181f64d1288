#pragma once

#include <vector>

#include "hessmf/matrix.hpp"
#include "hessmf/poly.hpp"
#include "hessmf/rng.hpp"

namespace hessmf::testing {

/// Random sparse polynomial with small integer coefficients.
inline Poly random_poly(Rng& rng, int nvars, uint32_t maxdeg, int nterms,
                        Field field = Field::Q) {
    std::vector<Term> ts;
    for (int k = 0; k < nterms; ++k) {
        ExpVec e(nvars, 0);
        uint32_t budget = (uint32_t)rng.int_in(0, (long)maxdeg);
        for (uint32_t d = 0; d < budget; ++d) e[rng.int_in(0, nvars - 1)] += 1;
        FieldElem c(rng.int_in(-9, 9));
        if (field == Field::QOmega && rng.int_in(0, 1))
            c += FieldElem::omega() * FieldElem(rng.int_in(-3, 3));
        ts.push_back({std::move(e), std::move(c)});
    }
    return Poly::from_terms(nvars, field, std::move(ts));
}

/// Random homogeneous polynomial of exact degree d (may be zero if unlucky;
/// callers retry when that matters).
inline Poly random_homogeneous(Rng& rng, int nvars, uint32_t d, int nterms,
                               Field field = Field::Q) {
    std::vector<Term> ts;
    for (int k = 0; k < nterms; ++k) {
        ExpVec e(nvars, 0);
        for (uint32_t i = 0; i < d; ++i) e[rng.int_in(0, nvars - 1)] += 1;
        ts.push_back({std::move(e), FieldElem(rng.nonzero_int(9))});
    }
    return Poly::from_terms(nvars, field, std::move(ts));
}

/// Naive cofactor-expansion determinant: an independent oracle for the
/// library's Bareiss/memoized routes on small matrices.
inline Poly naive_det(const PolyMatrix& m) {
    int n = m.rows();
    if (n == 1) return m.at(0, 0);
    Poly acc = Poly::zero(m.nvars(), m.field());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        PolyMatrix sub(n - 1, n - 1, m.nvars(), m.field());
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(r - 1, cc++) = m.at(r, c);
            }
        }
        Poly contrib = m.at(0, j) * naive_det(sub);
        if (j % 2 == 1) contrib = -contrib;
        acc += contrib;
    }
    return acc;
}

}  // namespace hessmf::testing
