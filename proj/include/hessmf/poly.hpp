#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hessmf/field.hpp"

namespace hessmf {

using ExpVec = std::vector<uint32_t>;

inline uint32_t total_degree(const ExpVec& e) {
    return std::accumulate(e.begin(), e.end(), uint32_t(0));
}

/// Graded-lex: first by total degree, ties by exponent vector lexicographically
/// (x0 heaviest).  Terms are stored descending, leading term first.
inline bool grlex_less(const ExpVec& a, const ExpVec& b) {
    uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct ExpVecHash {
    size_t operator()(const ExpVec& e) const {
        size_t h = 1469598103934665603ull;
        for (uint32_t v : e) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

struct Term {
    ExpVec exps;
    FieldElem coef;
};

/// A point of affine (n+1)-space with exact coordinates.
struct Point {
    std::vector<FieldElem> coords;

    Point() = default;
    explicit Point(std::vector<FieldElem> c) : coords(std::move(c)) {}
    static Point from_ints(const std::vector<long>& v) {
        std::vector<FieldElem> c(v.begin(), v.end());
        return Point(std::move(c));
    }
    size_t dim() const { return coords.size(); }
    const FieldElem& operator[](size_t i) const { return coords[i]; }
    FieldElem& operator[](size_t i) { return coords[i]; }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](const FieldElem& c) { return c.is_zero(); });
    }
    friend bool operator==(const Point& p, const Point& q) { return p.coords == q.coords; }
};

/// Sparse exact multivariate polynomial.  Invariants: no zero coefficients,
/// every exponent vector has length nvars(), terms sorted grlex-descending.
class Poly {
public:
    Poly() : nvars_(0), field_(Field::Q) {}
    Poly(int nvars, Field field) : nvars_(nvars), field_(field) {}

    static Poly zero(int nvars, Field field = Field::Q) { return Poly(nvars, field); }

    static Poly constant(int nvars, FieldElem c, Field field = Field::Q) {
        Poly p(nvars, field);
        if (!c.is_zero()) p.terms_.push_back({ExpVec(nvars, 0), std::move(c)});
        return p;
    }

    static Poly monomial(int nvars, ExpVec e, FieldElem c, Field field = Field::Q) {
        Poly p(nvars, field);
        if ((int)e.size() != nvars) throw Error("monomial: exponent length mismatch");
        if (!c.is_zero()) p.terms_.push_back({std::move(e), std::move(c)});
        return p;
    }

    /// x_i as a polynomial.
    static Poly variable(int nvars, int i, Field field = Field::Q) {
        if (i < 0 || i >= nvars) throw Error("variable index out of range");
        ExpVec e(nvars, 0);
        e[i] = 1;
        return monomial(nvars, std::move(e), FieldElem(1), field);
    }

    static Poly from_terms(int nvars, Field field, std::vector<Term> ts) {
        Poly p(nvars, field);
        p.terms_ = std::move(ts);
        p.normalize();
        return p;
    }

    int nvars() const { return nvars_; }
    Field field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    const Term& leading() const {
        if (terms_.empty()) throw Error("leading term of zero polynomial");
        return terms_.front();
    }

    uint32_t degree() const {  // total degree; 0 for the zero polynomial
        uint32_t d = 0;
        for (const auto& t : terms_) d = std::max(d, total_degree(t.exps));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        uint32_t d = total_degree(terms_.front().exps);
        for (const auto& t : terms_)
            if (total_degree(t.exps) != d) return false;
        return true;
    }

    /// Degree when homogeneous; throws otherwise (callers gate pipeline input).
    uint32_t homogeneous_degree() const {
        if (!is_homogeneous()) throw Error("polynomial is not homogeneous");
        return degree();
    }

    FieldElem coeff(const ExpVec& e) const {
        for (const auto& t : terms_)
            if (t.exps == e) return t.coef;
        return FieldElem(0);
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.coef = -t.coef;
        return r;
    }

    friend Poly operator+(const Poly& f, const Poly& g) { return merge(f, g, false); }
    friend Poly operator-(const Poly& f, const Poly& g) { return merge(f, g, true); }

    friend Poly operator*(const Poly& f, const Poly& g) {
        check_compat(f, g);
        if (f.is_zero() || g.is_zero()) return zero(f.nvars_, f.field_);
        std::unordered_map<ExpVec, FieldElem, ExpVecHash> acc;
        acc.reserve(f.terms_.size() * g.terms_.size() / 2 + 8);
        ExpVec e((size_t)f.nvars_);
        for (const auto& a : f.terms_) {
            for (const auto& b : g.terms_) {
                for (int i = 0; i < f.nvars_; ++i) e[i] = a.exps[i] + b.exps[i];
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(e, a.coef * b.coef);
                else
                    it->second += a.coef * b.coef;
            }
        }
        Poly r(f.nvars_, f.field_);
        r.terms_.reserve(acc.size());
        for (auto& [ee, c] : acc)
            if (!c.is_zero()) r.terms_.push_back({ee, std::move(c)});
        r.sort_terms();
        return r;
    }

    Poly& operator+=(const Poly& g) { return *this = *this + g; }
    Poly& operator-=(const Poly& g) { return *this = *this - g; }
    Poly& operator*=(const Poly& g) { return *this = *this * g; }

    friend Poly operator*(const Poly& f, const FieldElem& c) {
        if (c.is_zero()) return zero(f.nvars_, f.field_);
        Poly r(f);
        for (auto& t : r.terms_) t.coef *= c;
        return r;
    }
    friend Poly operator*(const FieldElem& c, const Poly& f) { return f * c; }

    Poly pow(unsigned e) const {
        Poly r = constant(nvars_, FieldElem(1), field_);
        Poly b(*this);
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const Poly& f, const Poly& g) {
        if (f.nvars_ != g.nvars_ || f.terms_.size() != g.terms_.size()) return false;
        for (size_t i = 0; i < f.terms_.size(); ++i)
            if (f.terms_[i].exps != g.terms_[i].exps || f.terms_[i].coef != g.terms_[i].coef)
                return false;
        return true;
    }
    friend bool operator!=(const Poly& f, const Poly& g) { return !(f == g); }

    FieldElem eval(const Point& p) const {
        if ((int)p.dim() != nvars_) throw Error("eval: dimension mismatch");
        // power table per variable
        uint32_t maxd = 0;
        for (const auto& t : terms_)
            for (auto e : t.exps) maxd = std::max(maxd, e);
        std::vector<std::vector<FieldElem>> pw(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            pw[i].resize(maxd + 1);
            pw[i][0] = FieldElem(1);
            for (uint32_t k = 1; k <= maxd; ++k) pw[i][k] = pw[i][k - 1] * p[i];
        }
        FieldElem s(0);
        for (const auto& t : terms_) {
            FieldElem v = t.coef;
            for (int i = 0; i < nvars_; ++i)
                if (t.exps[i]) v *= pw[i][t.exps[i]];
            s += v;
        }
        return s;
    }

    Poly diff(int i) const {
        if (i < 0 || i >= nvars_) throw Error("diff: variable index out of range");
        Poly r(nvars_, field_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (t.exps[i] == 0) continue;
            Term nt = t;
            nt.coef *= FieldElem((long)t.exps[i]);
            nt.exps[i] -= 1;
            r.terms_.push_back(std::move(nt));
        }
        r.sort_terms();
        return r;
    }

    /// Substitute x_i -> g_i.  The g_i must share nvars/field among themselves.
    Poly compose(const std::vector<Poly>& g) const {
        if ((int)g.size() != nvars_) throw Error("compose: arity mismatch");
        int m = g.empty() ? 0 : g[0].nvars();
        Field fl = g.empty() ? field_ : g[0].field();
        uint32_t maxd = 0;
        for (const auto& t : terms_)
            for (auto e : t.exps) maxd = std::max(maxd, e);
        // powers of each g_i up to needed degree
        std::vector<std::vector<Poly>> pw(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            pw[i].push_back(constant(m, FieldElem(1), fl));
            for (uint32_t k = 1; k <= maxd; ++k) pw[i].push_back(pw[i].back() * g[i]);
        }
        Poly r = zero(m, fl);
        for (const auto& t : terms_) {
            Poly v = constant(m, t.coef, fl);
            for (int i = 0; i < nvars_; ++i)
                if (t.exps[i]) v = v * pw[i][t.exps[i]];
            r += v;
        }
        return r;
    }

    /// Change ambient variable count (new variables get exponent 0).
    Poly pad_vars(int new_nvars) const {
        if (new_nvars < nvars_) throw Error("pad_vars: cannot drop variables");
        Poly r(new_nvars, field_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            ExpVec e = t.exps;
            e.resize(new_nvars, 0);
            r.terms_.push_back({std::move(e), t.coef});
        }
        r.sort_terms();
        return r;
    }

private:
    static void check_compat(const Poly& f, const Poly& g) {
        if (f.nvars_ != g.nvars_) throw Error("variable count mismatch");
        if (f.field_ != g.field_) throw Error("coefficient field mismatch");
    }

    static Poly merge(const Poly& f, const Poly& g, bool subtract) {
        check_compat(f, g);
        Poly r(f.nvars_, f.field_);
        r.terms_.reserve(f.terms_.size() + g.terms_.size());
        size_t i = 0, j = 0;
        while (i < f.terms_.size() && j < g.terms_.size()) {
            const auto& a = f.terms_[i];
            const auto& b = g.terms_[j];
            if (a.exps == b.exps) {
                FieldElem c = subtract ? a.coef - b.coef : a.coef + b.coef;
                if (!c.is_zero()) r.terms_.push_back({a.exps, std::move(c)});
                ++i, ++j;
            } else if (grlex_less(b.exps, a.exps)) {
                r.terms_.push_back(a);
                ++i;
            } else {
                r.terms_.push_back({b.exps, subtract ? -b.coef : b.coef});
                ++j;
            }
        }
        for (; i < f.terms_.size(); ++i) r.terms_.push_back(f.terms_[i]);
        for (; j < g.terms_.size(); ++j)
            r.terms_.push_back({g.terms_[j].exps, subtract ? -g.terms_[j].coef : g.terms_[j].coef});
        return r;
    }

    void sort_terms() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return grlex_less(b.exps, a.exps); });
    }

    void normalize() {
        for (auto& t : terms_)
            if ((int)t.exps.size() != nvars_) throw Error("term exponent length mismatch");
        sort_terms();
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().exps == t.exps)
                out.back().coef += t.coef;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return t.coef.is_zero(); }),
                  out.end());
        terms_ = std::move(out);
    }

    int nvars_;
    Field field_;
    std::vector<Term> terms_;
};

/// f(s*p + t*q) expanded as a binary form in (s, t); result lives in a
/// 2-variable ring (x0 = s, x1 = t).
inline Poly restrict_to_line(const Poly& f, const Point& p, const Point& q) {
    if (p.dim() != q.dim() || (int)p.dim() != f.nvars())
        throw Error("restrict_to_line: dimension mismatch");
    std::vector<Poly> subs;
    subs.reserve(f.nvars());
    Poly s = Poly::variable(2, 0, f.field());
    Poly t = Poly::variable(2, 1, f.field());
    for (int i = 0; i < f.nvars(); ++i) subs.push_back(s * p[i] + t * q[i]);
    return f.compose(subs);
}

/// Single-divisor division: f = q*g + r with no term of r divisible by the
/// leading term of g; r == 0 iff g divides f.
inline std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw Error("division by zero polynomial");
    if (f.nvars() != g.nvars()) throw Error("division: variable count mismatch");
    Poly q = Poly::zero(f.nvars(), f.field());
    Poly r = Poly::zero(f.nvars(), f.field());
    Poly rem = f;
    const Term& lt = g.leading();
    while (!rem.is_zero()) {
        const Term& lr = rem.leading();
        bool divisible = true;
        for (int i = 0; i < f.nvars(); ++i)
            if (lr.exps[i] < lt.exps[i]) {
                divisible = false;
                break;
            }
        if (divisible) {
            ExpVec e(f.nvars());
            for (int i = 0; i < f.nvars(); ++i) e[i] = lr.exps[i] - lt.exps[i];
            Poly m = Poly::monomial(f.nvars(), std::move(e), lr.coef / lt.coef, f.field());
            q += m;
            rem -= m * g;
        } else {
            Poly m = Poly::monomial(f.nvars(), lr.exps, lr.coef, f.field());
            r += m;
            rem -= m;
        }
    }
    return {q, r};
}

inline bool divides(const Poly& g, const Poly& f) {
    if (f.is_zero()) return true;
    if (g.is_zero()) return false;
    if (g.degree() > f.degree()) return false;
    return divrem(f, g).second.is_zero();
}

/// Exact quotient f/g; throws when the division leaves a remainder.
inline Poly div_exact(const Poly& f, const Poly& g) {
    auto [q, r] = divrem(f, g);
    if (!r.is_zero()) throw Error("div_exact: not divisible");
    return q;
}

/// Euler check helper: sum_i x_i * df/dx_i == d*f for homogeneous f.
inline bool euler_identity_holds(const Poly& f) {
    if (f.is_zero()) return true;
    uint32_t d = f.homogeneous_degree();
    Poly s = Poly::zero(f.nvars(), f.field());
    for (int i = 0; i < f.nvars(); ++i) s += Poly::variable(f.nvars(), i, f.field()) * f.diff(i);
    return s == f * FieldElem((long)d);
}

}  // namespace hessmf
