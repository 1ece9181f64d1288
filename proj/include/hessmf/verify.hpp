#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hessmf {

enum class VerifyKind { Exact, Probabilistic };

/// How polynomial identities get checked.  Exact mode expands symbolically;
/// probabilistic mode tests at `trials` random integer points drawn from a
/// range exceeding 4x the residual degree (Schwartz–Zippel), so each trial
/// passes a nonzero residual with probability < 1/4.
struct VerifyMode {
    VerifyKind kind = VerifyKind::Exact;
    uint64_t seed = 1;
    int trials = 20;

    static VerifyMode exact() { return {VerifyKind::Exact, 0, 0}; }
    static VerifyMode probabilistic(uint64_t seed, int trials = 20) {
        return {VerifyKind::Probabilistic, seed, trials < 20 ? 20 : trials};
    }
    bool is_exact() const { return kind == VerifyKind::Exact; }
    const char* name() const { return is_exact() ? "exact" : "probabilistic"; }
};

/// Sample range for identity testing a residual of total degree D.
inline long sz_coord_bound(uint32_t residual_degree) {
    return 2l * residual_degree + 8;  // range size 4D+17 > 4D
}

inline std::string sz_failure_bound(uint32_t residual_degree, int trials) {
    long range = 2 * sz_coord_bound(residual_degree) + 1;
    return "<= (" + std::to_string(residual_degree) + "/" + std::to_string(range) + ")^" +
           std::to_string(trials);
}

struct CheckEntry {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline bool all_pass(const std::vector<CheckEntry>& cs) {
    for (const auto& c : cs)
        if (!c.pass) return false;
    return true;
}

}  // namespace hessmf
