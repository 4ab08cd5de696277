#include "tsqkd/validate.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include <fmt/format.h>

#include "tsqkd/channels.hpp"
#include "tsqkd/network.hpp"
#include "tsqkd/protocol.hpp"
#include "tsqkd/theory.hpp"

namespace tsqkd {
namespace {

constexpr double kPi = std::numbers::pi;

CheckResult check_completeness() {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        for (const auto& ch : {amplitude_damping(p), dephasing(p), bit_flip(p), bit_phase_flip(p),
                               collective_rotation(2.0 * kPi * p)}) {
            worst = std::max(worst, ch.completeness_error());
        }
    }
    return {"kraus completeness", worst <= kCompletenessTol, fmt::format("max error {:.3g}", worst)};
}

CheckResult check_trajectories(std::uint64_t seed) {
    constexpr std::size_t kSamples = 20000;
    const std::vector<KrausChannel> channels{amplitude_damping(0.3), dephasing(0.2), bit_flip(0.3),
                                             bit_phase_flip(0.15), collective_rotation(0.4)};
    const std::vector<PureState> inputs{PureState::zero(), PureState::one(), PureState(1.0, 1.0)};
    int failures = 0;
    double worst_sigma = 0.0;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        for (std::size_t s = 0; s < inputs.size(); ++s) {
            const double exact = prob_one(apply_channel(density_from_pure(inputs[s]), channels[c]));
            RandomStream rng = RandomStream::at(seed, 0x7a, c, s);
            std::size_t ones = 0;
            for (std::size_t i = 0; i < kSamples; ++i) {
                ones += measure_z(sample_trajectory(inputs[s], channels[c], rng), rng) == Bit::One ? 1 : 0;
            }
            const double emp = static_cast<double>(ones) / kSamples;
            const double sigma = std::sqrt(exact * (1.0 - exact) / kSamples);
            if (sigma > 0) worst_sigma = std::max(worst_sigma, std::abs(emp - exact) / sigma);
            if (!within_sigmas(emp, exact, kSamples)) ++failures;
        }
    }
    return {"trajectory vs exact channel", failures == 0,
            fmt::format("{} of 15 cases outside 3 sigma (worst {:.2f} sigma)", failures, worst_sigma)};
}

CheckResult check_routing() {
    int failures = 0;
    auto hops = [](const TopologySpec& spec, NodeId a, NodeId b) {
        return bfs_shortest_path(build_topology(spec), a, b).hops();
    };
    for (auto [r, c] : {std::pair{4, 4}, std::pair{5, 7}}) {
        const auto torus = TopologySpec::torus(r, c);
        const auto grid = TopologySpec::grid(r, c);
        for (int x = 0; x < r; ++x) {
            for (int y = 0; y < c; ++y) {
                const int t = hops(torus, 0, x * c + y);
                if (t != std::min(x, r - x) + std::min(y, c - y)) ++failures;
                if (hops(grid, 0, x * c + y) != x + y) ++failures;
            }
        }
    }
    for (int n = 4; n <= 12; ++n) {
        for (int k = 0; k < n; ++k) {
            if (hops(TopologySpec::ring(n), 0, k) != std::min(k, n - k)) ++failures;
        }
    }
    return {"bfs closed-form hop counts", failures == 0, fmt::format("{} mismatches", failures)};
}

CheckResult check_noiseless(std::uint64_t seed) {
    const std::vector<TopologySpec> tops{TopologySpec::direct(), TopologySpec::ring(8), TopologySpec::grid(4, 4),
                                         TopologySpec::torus(4, 4)};
    TransmissionSettings quiet;
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        RandomStream rng = RandomStream::at(seed, 0x5e, i);
        const Bit b = rng.uniform() < 0.5 ? Bit::Zero : Bit::One;
        const StageAngles angles{2 * kPi * rng.uniform(), 2 * kPi * rng.uniform()};
        const Path path = route(tops[static_cast<std::size_t>(i) % tops.size()]);
        const auto out = three_stage_photon(b, angles, path, quiet, 0.0, rng);
        if (!out.is_received() || out.bit() != b) ++failures;
    }
    return {"noiseless protocol exactness", failures == 0, fmt::format("{} of 200 photons wrong", failures)};
}

CheckResult check_commutators() {
    int failures = 0;
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        for (int k = 0; k <= 16; ++k) {
            const double theta = k * kPi / 8.0;
            const double s = std::sin(theta);
            const bool trivial = p == 0.0 || std::abs(s) < 1e-12;
            if (ad_commutator_e0(p, theta).is_zero_at_tolerance != trivial) ++failures;
            if (ad_commutator_e1(p, theta).is_zero_at_tolerance != trivial) ++failures;
        }
    }
    return {"commutator vanishing conditions", failures == 0, fmt::format("{} mismatches", failures)};
}

}  // namespace

bool within_sigmas(double empirical, double expected, std::size_t samples, double k) {
    const double sigma = std::sqrt(std::max(0.0, expected * (1.0 - expected)) / static_cast<double>(samples));
    return std::abs(empirical - expected) <= k * sigma + 1e-9;
}

std::vector<CheckResult> run_validation(std::uint64_t seed) {
    return {check_completeness(), check_trajectories(seed), check_routing(), check_noiseless(seed),
            check_commutators()};
}

}  // namespace tsqkd
