#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tsqkd {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Self-check suite behind `tsqkd validate`: Kraus completeness, trajectory
// sampling against exact channel action, BFS against closed-form hop
// counts, noiseless protocol exactness, commutator vanishing conditions.
std::vector<CheckResult> run_validation(std::uint64_t seed = 0);

// |empirical - expected| <= k binomial sigmas (plus 1e-9 for degenerate p).
bool within_sigmas(double empirical, double expected, std::size_t samples, double k = 3.0);

}  // namespace tsqkd
