#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hessmf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficient field selector: the rationals, or the quadratic extension
/// Q(w) with w^2 + w + 1 = 0 (w a primitive cube root of unity).
enum class Field { Q, QOmega };

inline const char* field_name(Field f) { return f == Field::Q ? "Q" : "Qomega"; }

inline Field field_from_name(const std::string& s) {
    if (s == "Q" || s == "q") return Field::Q;
    if (s == "Qomega" || s == "qw" || s == "qomega") return Field::QOmega;
    throw Error("unknown field: " + s);
}

/// An element a + b*w of Q(w).  Plain rationals keep b = 0; all arithmetic
/// is exact and denominators stay reduced (mpq_class canonicalizes).
class FieldElem {
public:
    FieldElem() : a_(0), b_(0) {}
    FieldElem(long v) : a_(v), b_(0) {}  // NOLINT(google-explicit-constructor)
    explicit FieldElem(mpq_class a) : a_(std::move(a)), b_(0) {}
    FieldElem(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {}
    static FieldElem omega() { return FieldElem(mpq_class(0), mpq_class(1)); }
    static FieldElem from_frac(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return FieldElem(q);
    }

    const mpq_class& rat() const { return a_; }
    const mpq_class& wpart() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    FieldElem operator-() const { return FieldElem(-a_, -b_); }

    FieldElem& operator+=(const FieldElem& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    FieldElem& operator-=(const FieldElem& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    FieldElem& operator*=(const FieldElem& o) {
        if (b_ == 0 && o.b_ == 0) {
            a_ *= o.a_;
            return *this;
        }
        // (a1 + b1 w)(a2 + b2 w), w^2 = -1 - w
        mpq_class bb = b_ * o.b_;
        mpq_class na = a_ * o.a_ - bb;
        mpq_class nb = a_ * o.b_ + b_ * o.a_ - bb;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }

    /// Field norm a^2 - a*b + b^2 (product with the conjugate a - b - b*w).
    mpq_class norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }

    FieldElem inverse() const {
        if (is_zero()) throw Error("division by zero");
        if (b_ == 0) return FieldElem(mpq_class(1) / a_);
        mpq_class n = norm();
        return FieldElem((a_ - b_) / n, -b_ / n);
    }

    FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }

    friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
    friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
    friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
    friend FieldElem operator/(FieldElem x, const FieldElem& y) { return x /= y; }
    friend bool operator==(const FieldElem& x, const FieldElem& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    /// True when the square root exists in Q (used by unit-search rescaling).
    bool is_rational_square(FieldElem* root = nullptr) const {
        if (b_ != 0 || a_ < 0) return false;
        mpz_class num = a_.get_num(), den = a_.get_den();
        if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
        if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
        if (root) {
            mpz_class rn, rd;
            mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
            *root = FieldElem(mpq_class(rn, rd));
        }
        return true;
    }

    std::string str() const {
        if (b_ == 0) return a_.get_str();
        std::string w = b_ == 1 ? "w" : (b_ == -1 ? "-w" : b_.get_str() + "*w");
        if (a_ == 0) return w;
        return a_.get_str() + (b_ > 0 ? "+" : "") + w;
    }

private:
    mpq_class a_, b_;
};

FieldElem inline pow_fe(FieldElem base, unsigned long e) {
    FieldElem r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace hessmf
