#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hessmf/json_io.hpp"
#include "hessmf/scaled_inverse.hpp"

namespace hessmf {

/// A verified matrix-factorization certificate: H = hessian(f) and
/// H Q = Q H = f^r Id under the recorded mode.
struct MFCertificate {
    Poly f;
    int r = 0;
    PolyMatrix h, q;
    VerifyMode mode;
    uint64_t seed = 0;
    std::string points_digest;
    std::string failure_bound;
    std::vector<CheckEntry> checks;
};

struct MFWitness {
    // det_factor: det(H) has a factor coprime to f, so no power of f works;
    // fit_mismatch / verify_residual: the r-specific interpolation witnesses.
    std::string kind;
    std::optional<Point> point;
    std::optional<Poly> extra_factor;
    std::string detail;
};

struct MFOrderResult {
    std::optional<MFCertificate> cert;
    std::optional<MFWitness> witness;
    std::vector<std::pair<int, std::string>> tried;  // (r, outcome)
};

struct VerifyMFResult {
    bool ok = false;
    std::vector<CheckEntry> report;
    std::string failure_bound;
};

/// A B = B A = f^r Id under the requested mode, with a per-identity report.
inline VerifyMFResult verify_mf(const PolyMatrix& a, const PolyMatrix& b, const Poly& f, int r,
                                VerifyMode mode) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw Error("verify_mf: matrices must be square of equal size");
    auto pv = verify_product_identity(a, b, f, r, mode);
    VerifyMFResult res;
    res.ok = pv.ok;
    res.report = std::move(pv.checks);
    if (!pv.detail.empty()) res.report.push_back({"residual", pv.ok, pv.detail});
    res.failure_bound = pv.failure_bound;
    return res;
}

namespace detail {

// Euler identities specific to cubics: H x = 2 grad f and <grad f, x> = 3 f.
inline std::vector<CheckEntry> cubic_euler_checks(const Poly& f, const PolyMatrix& h) {
    std::vector<CheckEntry> out;
    int n = f.nvars();
    std::vector<Poly> grad(n);
    for (int i = 0; i < n; ++i) grad[i] = f.diff(i);
    bool hx = true;
    for (int i = 0; i < n && hx; ++i) {
        Poly s = Poly::zero(n, f.field());
        for (int j = 0; j < n; ++j) s += h.at(i, j) * Poly::variable(n, j, f.field());
        hx = (s == grad[i] * FieldElem(2));
    }
    out.push_back({"euler_Hx_eq_2grad", hx, "exact"});
    Poly dot = Poly::zero(n, f.field());
    for (int i = 0; i < n; ++i) dot += grad[i] * Poly::variable(n, i, f.field());
    out.push_back({"euler_gradx_eq_3f", dot == f * FieldElem(3), "exact"});
    return out;
}

// Strip all factors of f from g; returns (k, residual) with g = c residual f^k.
inline std::pair<int, Poly> strip_factor(Poly g, const Poly& f) {
    int k = 0;
    for (;;) {
        auto [q, rem] = divrem(g, f);
        if (!rem.is_zero()) return {k, g};
        g = std::move(q);
        ++k;
    }
}

// A rational point on V(g) away from V(f), found by solving for a variable
// that appears linearly in g.  Best-effort: nullopt when no such variable.
inline std::optional<Point> point_on_factor(const Poly& g, const Poly& f, uint64_t seed) {
    int n = g.nvars();
    int lin_var = -1;
    for (int i = 0; i < n && lin_var < 0; ++i) {
        uint32_t maxdeg = 0;
        for (const auto& t : g.terms()) maxdeg = std::max(maxdeg, t.exps[i]);
        if (maxdeg == 1) lin_var = i;
    }
    if (lin_var < 0) return std::nullopt;
    // g = A x_i + B; choose the other coordinates with A != 0, solve for x_i
    Rng rng(seed);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Point p = rng.int_point(n, 9);
        Poly a = g.diff(lin_var);
        FieldElem av = a.eval(p);
        if (av.is_zero()) continue;
        p[lin_var] = FieldElem(0);
        FieldElem bv = g.eval(p);
        p[lin_var] = -bv / av;
        if (!g.eval(p).is_zero()) continue;  // should not happen
        if (f.eval(p).is_zero()) continue;
        return p;
    }
    return std::nullopt;
}

}  // namespace detail

/// Smallest r <= rmax with hessian(f) a matrix factorization of f^r, plus a
/// verified certificate; or an absence report with a falsifiable witness.
/// rmax <= 0 selects the default n+1.  Throws SingularMatrixError when the
/// Hessian determinant vanishes identically (per the 16-point probe).
inline MFOrderResult mf_order(const Poly& f, int rmax, VerifyMode mode, uint64_t seed) {
    if (f.is_zero()) throw Error("mf_order: zero polynomial rejected");
    if (!f.is_homogeneous()) throw Error("mf_order: input must be homogeneous");
    if (f.homogeneous_degree() < 2) throw Error("mf_order: degree must be >= 2");
    int n = f.nvars();
    if (rmax <= 0) rmax = n + 1;
    PolyMatrix h = hessian(f);
    uint32_t d = f.homogeneous_degree();

    MFOrderResult out;
    for (int r = 1; r <= rmax; ++r) {
        VerifyMode m = mode;
        if (!m.is_exact()) m.seed = seed ^ (0x5851f42d4c957f2dull * (uint64_t)r);
        ScaledInverseResult si = scaled_inverse(h, f, r, m, seed + (uint64_t)r);
        if (si.present()) {
            out.tried.push_back({r, "present"});
            MFCertificate cert;
            cert.f = f;
            cert.r = r;
            cert.h = h;
            cert.q = std::move(*si.q);
            cert.mode = m;
            cert.seed = seed;
            cert.points_digest = si.points_digest;
            cert.failure_bound = si.failure_bound;
            cert.checks = std::move(si.checks);
            cert.checks.push_back({"H_is_hessian_of_f", true, "constructed"});
            // degree bookkeeping: Q entries homogeneous of degree r d - (d-2)
            bool degs = true;
            for (int i = 0; i < n && degs; ++i)
                for (int j = 0; j < n; ++j) {
                    const Poly& e = cert.q.at(i, j);
                    if (e.is_zero()) continue;
                    if (!e.is_homogeneous() ||
                        e.degree() != (uint32_t)r * d - (d - 2)) {
                        degs = false;
                        break;
                    }
                }
            cert.checks.push_back({"Q_entry_degrees", degs, ""});
            if (d == 3) {
                for (auto& c : detail::cubic_euler_checks(f, h)) cert.checks.push_back(c);
                // det H = const * f^{(n+1)/3} for r = 1 certificates on cubics
                // (meaningful when 3 | n+1, e.g. f irreducible)
                if (r == 1 && n % 3 == 0) {
                    Rng drng(seed ^ 0xc2b2ae3d27d4eb4full);
                    std::optional<FieldElem> c;
                    bool ok = true;
                    for (int t = 0; t < 10 && ok; ++t) {
                        Point p = drng.int_point(n, 24);
                        FieldElem fv = f.eval(p);
                        if (fv.is_zero()) continue;
                        FieldElem ratio =
                            scalar_det(h.eval(p)) / pow_fe(fv, (unsigned long)(n / 3));
                        if (!c)
                            c = ratio;
                        else
                            ok = (*c == ratio);
                    }
                    cert.checks.push_back({"detH_const_times_f_power", ok, "10 points"});
                }
            }
            out.cert = std::move(cert);
            return out;
        }
        out.tried.push_back({r, si.witness_kind});
        if (!out.witness) {
            MFWitness w;
            w.kind = si.witness_kind;
            w.point = si.witness_point;
            w.detail = si.witness_detail;
            out.witness = std::move(w);
        }
    }

    // absence proof for all r at once: det H = c f^k g with g nonconstant
    // forces det H != const * f^m, which any factorization would require
    if (n <= 9) {
        Poly dh = det(h);
        if (!dh.is_zero()) {
            auto [k, residual] = detail::strip_factor(dh, f);
            if (residual.degree() > 0) {
                MFWitness w;
                w.kind = "det_factor";
                w.extra_factor = residual;
                w.detail = "det(H) = f^" + std::to_string(k) +
                           " * g with g nonconstant coprime to f; no power of f admits a "
                           "Hessian matrix factorization";
                w.point = detail::point_on_factor(residual, f, seed ^ 0xa0761d6478bd642full);
                out.witness = std::move(w);
            }
        }
    }
    return out;
}

/// Does f divide det(hessian(f))?  Exact polynomial division up to 9
/// variables; above that, 20 rational points of V(f) found along random
/// lines, with det H tested at each.
struct DivisibilityResult {
    bool divisible = false;
    bool conclusive = false;
    std::string detail;
};

namespace detail {

// rational roots of a univariate (coefficients exact) via the rational root
// theorem; divisor enumeration is capped, so the list may be incomplete
inline std::vector<FieldElem> rational_roots(const std::vector<mpq_class>& coefs) {
    int deg = (int)coefs.size() - 1;
    while (deg > 0 && coefs[deg] == 0) --deg;
    std::vector<FieldElem> roots;
    if (deg <= 0) return roots;
    // clear denominators
    mpz_class lcm = 1;
    for (int i = 0; i <= deg; ++i)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coefs[i].get_den().get_mpz_t());
    std::vector<mpz_class> c(deg + 1);
    for (int i = 0; i <= deg; ++i) c[i] = mpz_class(coefs[i] * lcm);
    int low = 0;
    while (low <= deg && c[low] == 0) ++low;
    if (low > 0) roots.push_back(FieldElem(0));
    if (low > deg) return roots;
    auto divisors = [](const mpz_class& v) {
        std::vector<mpz_class> out;
        mpz_class a = abs(v);
        for (mpz_class d = 1; d * d <= a && d < 100000; ++d)
            if (a % d == 0) {
                out.push_back(d);
                out.push_back(a / d);
            }
        return out;
    };
    auto eval_at = [&](const mpq_class& x) {
        mpq_class acc = 0;
        for (int i = deg; i >= low; --i) acc = acc * x + c[i];
        return acc;
    };
    for (const auto& p : divisors(c[low]))
        for (const auto& q : divisors(c[deg]))
            for (int s : {1, -1}) {
                mpq_class cand(s * p, q);
                cand.canonicalize();
                if (eval_at(cand) == 0) roots.push_back(FieldElem(cand));
            }
    return roots;
}

}  // namespace detail

inline DivisibilityResult hessian_divisibility_check(const Poly& f, uint64_t seed = 12345) {
    if (f.homogeneous_degree() != 3) throw Error("hessian_divisibility_check: f must be cubic");
    PolyMatrix h = hessian(f);
    DivisibilityResult res;
    if (f.nvars() <= 9) {
        Poly dh = det(h);
        res.divisible = divides(f, dh);
        res.conclusive = true;
        res.detail = "exact polynomial division";
        return res;
    }
    // probabilistic: rational points of V(f) along random lines
    Rng rng(seed);
    int found = 0, lines = 0;
    while (found < 20 && lines < 50) {
        ++lines;
        Point p = rng.int_point(f.nvars(), 9);
        Point q = rng.int_point(f.nvars(), 9);
        Poly line = restrict_to_line(f, p, q);  // binary form in (s, t)
        // dehomogenize at s = 1: roots t of f(p + t q)
        std::vector<mpq_class> coefs(4, 0);
        for (const auto& t : line.terms()) {
            if (!t.coef.is_rational()) continue;
            coefs[t.exps[1]] += t.coef.rat();
        }
        for (const auto& root : detail::rational_roots(coefs)) {
            std::vector<FieldElem> z(f.nvars());
            for (int i = 0; i < f.nvars(); ++i) z[i] = p[i] + root * q[i];
            Point zp(std::move(z));
            if (zp.is_zero() || !f.eval(zp).is_zero()) continue;
            ++found;
            if (!scalar_det(h.eval(zp)).is_zero()) {
                res.divisible = false;
                res.conclusive = true;
                res.detail = "point of V(f) with det H != 0";
                return res;
            }
            if (found >= 20) break;
        }
    }
    if (found < 20) {
        res.conclusive = false;
        res.detail = "only " + std::to_string(found) + " rational points of V(f) found along " +
                     std::to_string(lines) + " random lines; not concluding";
        return res;
    }
    res.divisible = true;
    res.conclusive = true;
    res.detail = "det H vanished at 20 rational points of V(f)";
    return res;
}

// ---- certificate (de)serialization ----

inline Json certificate_to_json(const MFCertificate& cert) {
    Json j;
    j["f"] = poly_to_json(cert.f);
    j["nvars"] = cert.f.nvars();
    j["field"] = field_name(cert.f.field());
    j["degree"] = cert.f.homogeneous_degree();
    j["r"] = cert.r;
    j["mode"] = cert.mode.name();
    j["seed"] = cert.mode.seed;
    j["trials"] = cert.mode.trials;
    j["H"] = matrix_to_json(cert.h);
    j["Q"] = matrix_to_json(cert.q);
    Json checks = Json::array();
    for (const auto& c : cert.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["status"] = c.pass ? "pass" : "fail";
        if (!c.detail.empty()) jc["detail"] = c.detail;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    if (!cert.points_digest.empty()) j["points_digest"] = cert.points_digest;
    if (!cert.failure_bound.empty()) j["failure_bound"] = cert.failure_bound;
    return j;
}

inline MFCertificate certificate_from_json(const Json& j) {
    MFCertificate cert;
    cert.f = poly_from_json(j.at("f"));
    cert.r = j.at("r").get<int>();
    cert.h = matrix_from_json(j.at("H"));
    cert.q = matrix_from_json(j.at("Q"));
    std::string mode = j.at("mode").get<std::string>();
    uint64_t seed = j.at("seed").get<uint64_t>();
    int trials = j.at("trials").get<int>();
    cert.mode = mode == "exact" ? VerifyMode::exact() : VerifyMode::probabilistic(seed, trials);
    cert.seed = seed;
    if (j.contains("points_digest")) cert.points_digest = j.at("points_digest");
    if (j.contains("failure_bound")) cert.failure_bound = j.at("failure_bound");
    return cert;
}

/// Re-check a stored certificate without re-running interpolation: H must be
/// the Hessian of f, degrees must match, and the product identities must hold
/// under the recorded mode (probabilistic points replayed from the seed).
struct ReverifyResult {
    bool ok = false;
    std::vector<CheckEntry> report;
};

inline ReverifyResult reverify_certificate(const MFCertificate& cert) {
    ReverifyResult res;
    bool hmatch = cert.h == hessian(cert.f);
    res.report.push_back({"H_matches_hessian_of_f", hmatch, ""});
    uint32_t d = cert.f.homogeneous_degree();
    bool degs = true;
    for (int i = 0; i < cert.q.rows() && degs; ++i)
        for (int jj = 0; jj < cert.q.cols(); ++jj) {
            const Poly& e = cert.q.at(i, jj);
            if (e.is_zero()) continue;
            if (!e.is_homogeneous() || e.degree() != (uint32_t)cert.r * d - (d - 2)) {
                degs = false;
                break;
            }
        }
    res.report.push_back({"Q_entry_degrees", degs, ""});
    auto v = verify_mf(cert.h, cert.q, cert.f, cert.r, cert.mode);
    for (auto& c : v.report) res.report.push_back(std::move(c));
    res.ok = hmatch && degs && v.ok;
    return res;
}

}  // namespace hessmf
