#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsqkd/config.hpp"
#include "tsqkd/protocol.hpp"

namespace tsqkd {

// One transmitted logical bit, as written to the per-record table.
struct RecordRow {
    int trial = 0;
    std::string topology;
    int burst_size = 0;
    double link_km = 0.0;
    int bit_index = 0;
    Bit sent = Bit::Zero;
    DecodeResult decoded;
    std::size_t received_count = 0;
    double success_fraction = 0.0;
};

// Aggregate over every record of one (topology, burst size, link length) cell.
struct SummaryRow {
    std::string topology;
    int burst_size = 0;
    double link_km = 0.0;
    double mean_success_qubit_pct = 0.0;  // mean success_fraction x 100
    double mean_bit_decode_pct = 0.0;     // records decoded to the sent bit
    double surviving_qubit_pct = 0.0;     // received photons / sent photons
    int trials = 0;
    std::uint64_t seed = 0;
};

struct ExperimentResult {
    std::vector<SummaryRow> summary;
    std::vector<RecordRow> records;  // cell-major, then trial, then bit
};

// One simulation cell. Sweeps are lists of these.
struct Cell {
    TopologySpec topology;
    int burst_size = 1;
};

// Stream derivation (all keys are derived from the master seed):
//   bit value      stream(seed, 1, cell, trial, bit)        first draw < 0.5 -> 0
//   trial CR angle stream(seed, 2, cell, trial)
//   photon i       stream(stream-key(seed, 3, cell, trial, bit), i)
// so every photon's randomness is fixed by its coordinates and results do not
// depend on the worker count.
ExperimentResult run_cells(const ExperimentConfig& cfg, const std::vector<Cell>& cells);

// Each topology at cfg.burst_size and its configured link length.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Topology x burst_sweep. Throws ConfigError when the sweep is absent.
ExperimentResult sweep_burst(const ExperimentConfig& cfg);

// Topology x distance_sweep (link length per hop). Throws ConfigError when
// the sweep is absent.
ExperimentResult sweep_distance(const ExperimentConfig& cfg);

// Aggregates records that share (topology, burst_size, link_km), in first
// appearance order.
std::vector<SummaryRow> summarize(const std::vector<RecordRow>& records, int trials, std::uint64_t seed);

}  // namespace tsqkd
