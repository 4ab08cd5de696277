#pragma once

#include <cstdint>
#include <limits>

namespace tsqkd {

// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds a sequence of counters into one 64-bit key. Order matters.
constexpr std::uint64_t derive_key(std::uint64_t seed) noexcept { return mix64(seed); }

template <typename... Rest>
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t next, Rest... rest) noexcept {
    return derive_key(mix64(seed ^ (next + 0x9e3779b97f4a7c15ULL)), static_cast<std::uint64_t>(rest)...);
}

// Small counter-addressed random stream (SplitMix64). Every stochastic
// operation in the library draws from one of these and documents how many
// draws it consumes, so seeded runs are reproducible regardless of
// scheduling. Satisfies UniformRandomBitGenerator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t key = 0) noexcept : state_(key) {}

    // stream(master_seed, a, b, ...) in the experiment harness.
    template <typename... Counters>
    static RandomStream at(std::uint64_t master_seed, Counters... counters) noexcept {
        return RandomStream(derive_key(master_seed, static_cast<std::uint64_t>(counters)...));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        ++draws_;
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform double in [0, 1); exactly one draw.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Number of 64-bit draws consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

}  // namespace tsqkd
