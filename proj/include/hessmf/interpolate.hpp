#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "hessmf/modular.hpp"
#include "hessmf/poly.hpp"

namespace hessmf {

/// The principal lattice {k >= 0 : |k| <= delta}.  Sampling a black box on
/// base + k and taking forward differences recovers every coefficient of a
/// homogeneous degree-delta polynomial: c_alpha = (Delta^alpha v)(base)/alpha!
/// for |alpha| = delta.  The node set is unisolvent for total degree delta,
/// so the fit is exact whenever the black box really is such a polynomial.
struct SimplexLattice {
    int nvars = 0;
    uint32_t delta = 0;
    std::vector<ExpVec> offsets;
    std::unordered_map<ExpVec, int, ExpVecHash> index;
    std::vector<std::vector<int>> axis_order;  // per axis, point ids by descending k_axis

    size_t size() const { return offsets.size(); }

    static SimplexLattice build(int nvars, uint32_t delta) {
        SimplexLattice L;
        L.nvars = nvars;
        L.delta = delta;
        ExpVec cur(nvars, 0);
        gen(L, cur, 0, delta);
        L.index.reserve(L.offsets.size() * 2);
        for (size_t i = 0; i < L.offsets.size(); ++i) L.index.emplace(L.offsets[i], (int)i);
        L.axis_order.resize(nvars);
        for (int ax = 0; ax < nvars; ++ax) {
            auto& ord = L.axis_order[ax];
            ord.resize(L.offsets.size());
            for (size_t i = 0; i < ord.size(); ++i) ord[i] = (int)i;
            std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
                return L.offsets[a][ax] > L.offsets[b][ax];
            });
        }
        return L;
    }

    /// Number of lattice points without building it: C(nvars + delta, delta).
    static size_t count(int nvars, uint32_t delta) {
        size_t r = 1;
        for (uint32_t i = 1; i <= delta; ++i) {
            r = r * (nvars + i);
            r /= i;
        }
        return r;
    }

private:
    static void gen(SimplexLattice& L, ExpVec& cur, int pos, uint32_t left) {
        if (pos == L.nvars) {
            L.offsets.push_back(cur);
            return;
        }
        for (uint32_t v = 0; v <= left; ++v) {
            cur[pos] = v;
            gen(L, cur, pos + 1, left - v);
        }
        cur[pos] = 0;
    }
};

/// In-place multidimensional forward differences over the lattice.
/// After the transform, vals[index(alpha)] = (Delta^alpha v)(base).
template <typename T, typename SubFn>
void difference_transform(const SimplexLattice& L, std::vector<T>& vals, SubFn sub) {
    for (int ax = 0; ax < L.nvars; ++ax) {
        const auto& ord = L.axis_order[ax];
        for (uint32_t m = 1; m <= L.delta; ++m) {
            for (int id : ord) {
                uint32_t k = L.offsets[id][ax];
                if (k < m) break;  // ord is descending in this axis
                ExpVec prev = L.offsets[id];
                prev[ax] -= 1;
                int pid = L.index.at(prev);
                vals[id] = sub(vals[id], vals[pid]);
            }
        }
    }
}

inline mpz_class exps_factorial(const ExpVec& e) {
    mpz_class r = 1;
    for (uint32_t v : e)
        for (uint32_t i = 2; i <= v; ++i) r *= i;
    return r;
}

/// Assemble the homogeneous degree-delta polynomial from differenced values.
inline Poly lattice_coefficients(const SimplexLattice& L, const std::vector<FieldElem>& diffed,
                                 Field field) {
    std::vector<Term> terms;
    for (size_t i = 0; i < L.offsets.size(); ++i) {
        if (total_degree(L.offsets[i]) != L.delta) continue;
        if (diffed[i].is_zero()) continue;
        FieldElem c = diffed[i] * FieldElem(mpq_class(1, exps_factorial(L.offsets[i])));
        if (!c.is_zero()) terms.push_back({L.offsets[i], std::move(c)});
    }
    return Poly::from_terms(L.nvars, field, std::move(terms));
}

/// Same assembly from multi-modular residues; nullopt when some coefficient
/// fails rational reconstruction (caller adds primes and retries).
inline std::optional<Poly> lattice_coefficients_modular(
    const SimplexLattice& L, const std::vector<std::vector<uint64_t>>& diffed_per_prime,
    const std::vector<uint64_t>& primes, Field field) {
    std::vector<Term> terms;
    std::vector<uint64_t> res(primes.size());
    for (size_t i = 0; i < L.offsets.size(); ++i) {
        if (total_degree(L.offsets[i]) != L.delta) continue;
        bool all_zero = true;
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            res[pi] = diffed_per_prime[pi][i];
            if (res[pi] != 0) all_zero = false;
        }
        if (all_zero) continue;
        mpz_class fact = exps_factorial(L.offsets[i]);
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            PrimeField pf(primes[pi]);
            res[pi] = pf.mul(res[pi], pf.inv(pf.from_mpz(fact)));
        }
        auto c = crt_rational(res, primes);
        if (!c) return std::nullopt;
        terms.push_back({L.offsets[i], FieldElem(std::move(*c))});
    }
    return Poly::from_terms(L.nvars, field, std::move(terms));
}

/// Term list of a poly reduced mod p, for fast repeated evaluation.
struct ModPoly {
    std::vector<ExpVec> exps;
    std::vector<uint64_t> coefs;
    uint32_t maxdeg = 0;

    static std::optional<ModPoly> reduce(const Poly& f, const PrimeField& pf) {
        ModPoly m;
        for (const auto& t : f.terms()) {
            if (!t.coef.is_rational()) return std::nullopt;  // modular lane is Q-only
            auto r = pf.from_mpq(t.coef.rat());
            if (!r) return std::nullopt;  // denominator divisible by p
            m.exps.push_back(t.exps);
            m.coefs.push_back(*r);
            for (uint32_t e : t.exps) m.maxdeg = std::max(m.maxdeg, e);
        }
        return m;
    }

    uint64_t eval(const PrimeField& pf, const std::vector<uint64_t>& coords) const {
        size_t n = coords.size();
        // per-variable power tables
        thread_local std::vector<std::vector<uint64_t>> pw;
        pw.assign(n, {});
        for (size_t i = 0; i < n; ++i) {
            pw[i].resize(maxdeg + 1);
            pw[i][0] = 1;
            for (uint32_t k = 1; k <= maxdeg; ++k) pw[i][k] = pf.mul(pw[i][k - 1], coords[i]);
        }
        uint64_t s = 0;
        for (size_t t = 0; t < exps.size(); ++t) {
            uint64_t v = coefs[t];
            const ExpVec& e = exps[t];
            for (size_t i = 0; i < n; ++i)
                if (e[i]) v = pf.mul(v, pw[i][e[i]]);
            s = pf.add(s, v);
        }
        return s;
    }
};

}  // namespace hessmf
