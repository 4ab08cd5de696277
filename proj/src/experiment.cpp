#include "tsqkd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include "tsqkd/errors.hpp"
#include "tsqkd/network.hpp"

namespace tsqkd {
namespace {

enum StreamDomain : std::uint64_t { kBitValue = 1, kTrialRotation = 2, kPhoton = 3 };

struct CellPlan {
    Cell cell;
    Path path;
    std::vector<double> cr_angle_by_trial;
};

// Runs fn(i) for i in [0, n) on `workers` threads. The first exception is
// rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn fn) {
    if (workers == 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

ExperimentResult run_cells(const ExperimentConfig& cfg, const std::vector<Cell>& cells) {
    cfg.validate();
    const TransmissionSettings settings = cfg.settings();

    std::vector<CellPlan> plans;
    plans.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellPlan plan{cells[c], route(cells[c].topology), {}};
        for (int t = 0; t < cfg.trials; ++t) {
            auto rng = RandomStream::at(cfg.seed, kTrialRotation, c, t);
            plan.cr_angle_by_trial.push_back(trial_cr_angle(cfg.noise, rng));
        }
        plans.push_back(std::move(plan));
    }

    const std::size_t per_cell = static_cast<std::size_t>(cfg.trials) * static_cast<std::size_t>(cfg.bits);
    ExperimentResult result;
    result.records.resize(plans.size() * per_cell);

    parallel_for(result.records.size(), cfg.workers, [&](std::size_t index) {
        const std::size_t c = index / per_cell;
        const int trial = static_cast<int>((index % per_cell) / static_cast<std::size_t>(cfg.bits));
        const int bit_index = static_cast<int>(index % static_cast<std::size_t>(cfg.bits));
        const CellPlan& plan = plans[c];

        auto bit_rng = RandomStream::at(cfg.seed, kBitValue, c, trial, bit_index);
        const Bit sent = bit_rng.uniform() < 0.5 ? Bit::Zero : Bit::One;
        const std::uint64_t burst_key = derive_key(cfg.seed, kPhoton, c, trial, bit_index);
        const TransmissionRecord rec =
            transmit_burst(sent, plan.cell.burst_size, cfg.angles, plan.path, settings,
                           plan.cr_angle_by_trial[static_cast<std::size_t>(trial)], burst_key);

        RecordRow& row = result.records[index];
        row.trial = trial;
        row.topology = plan.cell.topology.label();
        row.burst_size = plan.cell.burst_size;
        row.link_km = plan.cell.topology.link_km;
        row.bit_index = bit_index;
        row.sent = sent;
        row.decoded = rec.decoded;
        row.received_count = rec.received_count();
        row.success_fraction = rec.success_fraction;
    });

    result.summary = summarize(result.records, cfg.trials, cfg.seed);
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    std::vector<Cell> cells;
    for (const auto& t : cfg.topologies) cells.push_back({t, cfg.burst_size});
    return run_cells(cfg, cells);
}

ExperimentResult sweep_burst(const ExperimentConfig& cfg) {
    if (cfg.burst_sweep.empty()) throw ConfigError("burst_sweep", "sweep-burst requires 'burst_sweep'");
    std::vector<Cell> cells;
    for (const auto& t : cfg.topologies) {
        for (int m : cfg.burst_sweep) cells.push_back({t, m});
    }
    return run_cells(cfg, cells);
}

ExperimentResult sweep_distance(const ExperimentConfig& cfg) {
    if (cfg.distance_sweep.empty()) throw ConfigError("distance_sweep", "sweep-distance requires 'distance_sweep'");
    std::vector<Cell> cells;
    for (const auto& t : cfg.topologies) {
        for (double km : cfg.distance_sweep) {
            TopologySpec spec = t;
            spec.link_km = km;
            cells.push_back({spec, cfg.burst_size});
        }
    }
    return run_cells(cfg, cells);
}

std::vector<SummaryRow> summarize(const std::vector<RecordRow>& records, int trials, std::uint64_t seed) {
    struct Acc {
        SummaryRow row;
        double success_sum = 0.0;
        std::size_t decoded_ok = 0;
        std::size_t received = 0;
        std::size_t count = 0;
    };
    std::vector<Acc> cells;
    for (const auto& r : records) {
        auto it = std::find_if(cells.begin(), cells.end(), [&](const Acc& a) {
            return std::tie(a.row.topology, a.row.burst_size, a.row.link_km) ==
                   std::tie(r.topology, r.burst_size, r.link_km);
        });
        if (it == cells.end()) {
            Acc a;
            a.row.topology = r.topology;
            a.row.burst_size = r.burst_size;
            a.row.link_km = r.link_km;
            a.row.trials = trials;
            a.row.seed = seed;
            cells.push_back(a);
            it = std::prev(cells.end());
        }
        it->success_sum += r.success_fraction;
        it->decoded_ok += (r.decoded.ok() && r.decoded.bit == r.sent) ? 1 : 0;
        it->received += r.received_count;
        it->count += 1;
    }

    std::vector<SummaryRow> out;
    out.reserve(cells.size());
    for (auto& a : cells) {
        const double n = static_cast<double>(a.count);
        a.row.mean_success_qubit_pct = 100.0 * a.success_sum / n;
        a.row.mean_bit_decode_pct = 100.0 * static_cast<double>(a.decoded_ok) / n;
        a.row.surviving_qubit_pct = 100.0 * static_cast<double>(a.received) / (n * a.row.burst_size);
        out.push_back(a.row);
    }
    return out;
}

}  // namespace tsqkd
