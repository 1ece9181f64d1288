#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hessmf/field.hpp"

namespace hessmf {

/// Arithmetic mod a word-size prime (< 2^62).  Used as a fast lane inside
/// interpolation; every reconstructed result is re-verified exactly, so a
/// bad prime can only cost a retry, never a wrong certificate.
struct PrimeField {
    uint64_t p;

    explicit PrimeField(uint64_t prime) : p(prime) {}

    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return (uint64_t)((unsigned __int128)a * b % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }

    uint64_t from_long(long v) const {
        long m = v % (long)p;
        return m < 0 ? (uint64_t)(m + (long)p) : (uint64_t)m;
    }
    uint64_t from_mpz(const mpz_class& v) const {
        mpz_class m = v % (long)p;
        long r = m.get_si();
        return r < 0 ? (uint64_t)(r + (long)p) : (uint64_t)r;
    }
    /// Residue of an exact rational (denominator must be a unit mod p).
    std::optional<uint64_t> from_mpq(const mpq_class& v) const {
        uint64_t den = from_mpz(v.get_den());
        if (den == 0) return std::nullopt;
        return mul(from_mpz(v.get_num()), inv(den));
    }
};

/// 62-bit primes for the multi-modular lane.
inline const std::vector<uint64_t>& modular_primes() {
    static const std::vector<uint64_t> primes = {
        4611686018427387847ull, 4611686018427387817ull, 4611686018427387787ull,
        4611686018427387761ull, 4611686018427387749ull, 4611686018427387731ull,
        4611686018427387707ull, 4611686018427387631ull, 4611686018427387617ull,
        4611686018427387559ull, 4611686018427387533ull, 4611686018427387499ull,
        4611686018427387449ull, 4611686018427387443ull, 4611686018427387407ull,
        4611686018427387379ull,
    };
    return primes;
}

/// CRT lift of residues to the symmetric range, then Wang rational
/// reconstruction; nullopt when no fraction with num, den <= sqrt(M/2) exists.
inline std::optional<mpq_class> crt_rational(const std::vector<uint64_t>& residues,
                                             const std::vector<uint64_t>& primes) {
    mpz_class m = 1, x = 0;
    for (size_t i = 0; i < residues.size(); ++i) {
        mpz_class p((unsigned long)primes[i]);
        // solve x' = x mod m, x' = r mod p
        mpz_class minv;
        if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()) == 0)
            throw Error("crt: non-coprime moduli");
        mpz_class r((unsigned long)residues[i]);
        mpz_class t = ((r - x) * minv) % p;
        if (t < 0) t += p;
        x += m * t;
        m *= p;
    }
    // rational reconstruction: find num/den with |num|, den <= B = sqrt(m/2)
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = m, r1 = x, s0 = 0, s1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class s2 = s0 - q * s1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    if (s1 == 0) return std::nullopt;
    mpz_class den = abs(s1);
    if (den > bound) return std::nullopt;
    mpz_class num = s1 < 0 ? mpz_class(-r1) : r1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) {
        num /= g;
        den /= g;
    }
    mpq_class out(num, den);
    out.canonicalize();
    // confirm the candidate actually matches all residues
    for (size_t i = 0; i < primes.size(); ++i) {
        PrimeField pf(primes[i]);
        auto res = pf.from_mpq(out);
        if (!res || *res != residues[i]) return std::nullopt;
    }
    return out;
}

/// Dense Gaussian solve of A X = B mod p; nullopt when A is singular mod p.
inline std::optional<std::vector<std::vector<uint64_t>>> mod_solve(
    const PrimeField& pf, std::vector<std::vector<uint64_t>> a,
    std::vector<std::vector<uint64_t>> b) {
    int n = (int)a.size();
    int w = b.empty() ? 0 : (int)b[0].size();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != c) {
            std::swap(a[c], a[piv]);
            std::swap(b[c], b[piv]);
        }
        uint64_t inv = pf.inv(a[c][c]);
        for (int j = c; j < n; ++j) a[c][j] = pf.mul(a[c][j], inv);
        for (int j = 0; j < w; ++j) b[c][j] = pf.mul(b[c][j], inv);
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            uint64_t f = a[i][c];
            for (int j = c; j < n; ++j) a[i][j] = pf.sub(a[i][j], pf.mul(f, a[c][j]));
            for (int j = 0; j < w; ++j) b[i][j] = pf.sub(b[i][j], pf.mul(f, b[c][j]));
        }
    }
    return b;
}

}  // namespace hessmf
