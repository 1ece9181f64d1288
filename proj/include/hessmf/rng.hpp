#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hessmf/poly.hpp"

namespace hessmf {

/// Deterministic RNG for replayable runs.  All certificate randomness flows
/// through one of these, seeded explicitly; the seed is always recorded.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed), seed_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next() { return eng_(); }

    /// Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here).
    long int_in(long lo, long hi) {
        return lo + (long)(eng_() % (uint64_t)(hi - lo + 1));
    }

    long nonzero_int(long bound) {
        for (;;) {
            long v = int_in(-bound, bound);
            if (v != 0) return v;
        }
    }

    Point int_point(int nvars, long bound) {
        std::vector<FieldElem> c(nvars);
        for (int i = 0; i < nvars; ++i) c[i] = FieldElem(int_in(-bound, bound));
        return Point(std::move(c));
    }

    Point nonzero_int_point(int nvars, long bound) {
        for (;;) {
            Point p = int_point(nvars, bound);
            if (!p.is_zero()) return p;
        }
    }

private:
    std::mt19937_64 eng_;
    uint64_t seed_;
};

/// FNV-1a digest of a byte string, reported in certificates so the sampled
/// point lists are pinned.
inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_points(const std::vector<Point>& pts) {
    std::string buf;
    for (const auto& p : pts) {
        for (const auto& c : p.coords) {
            buf += c.str();
            buf += ',';
        }
        buf += ';';
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", (unsigned long long)fnv1a(buf));
    return std::string(hex);
}

}  // namespace hessmf
