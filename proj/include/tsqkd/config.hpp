#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tsqkd/channels.hpp"
#include "tsqkd/network.hpp"
#include "tsqkd/protocol.hpp"

namespace tsqkd {

inline constexpr int kSchemaVersion = 1;

// Declarative experiment description. See docs/config.md for the file
// schema.
struct ExperimentConfig {
    std::string name = "experiment";
    int bits = 96;
    int burst_size = 100;
    std::vector<int> burst_sweep;
    std::vector<TopologySpec> topologies{TopologySpec::direct()};
    std::vector<double> distance_sweep;
    NoiseConfig noise;
    AnglePolicy angles;
    int trials = 10;
    std::uint64_t seed = 0;
    bool attenuation_single_pass = false;
    int workers = 1;  // 0 = hardware concurrency

    // Throws ConfigError naming the offending key.
    void validate() const;

    TransmissionSettings settings() const { return {noise, attenuation_single_pass}; }
};

// Parses the JSON config text; `origin` is used in messages only.
ExperimentConfig parse_config(std::string_view text, const std::string& origin = "<config>");

// Throws IoError for unreadable files, ConfigError for schema violations.
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON form of a config (all keys, defaults filled in).
std::string dump_config(const ExperimentConfig& cfg);

// Named experiment setups. Known names:
// noiseless, combined, amplitude_damping, bit_flip, bit_phase_flip,
// attenuation. Throws ConfigError for unknown names.
ExperimentConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace tsqkd
