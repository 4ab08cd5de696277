// tsqkd: command-line driver for the three-stage QKD network simulator.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tsqkd/config.hpp"
#include "tsqkd/emit.hpp"
#include "tsqkd/errors.hpp"
#include "tsqkd/experiment.hpp"
#include "tsqkd/theory.hpp"
#include "tsqkd/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct RunOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> workers;
    std::string out_dir;
};

tsqkd::ExperimentConfig resolve_config(const RunOptions& opt) {
    constexpr std::string_view kPresetPrefix = "preset:";
    tsqkd::ExperimentConfig cfg;
    try {
        cfg = opt.config.starts_with(kPresetPrefix)
                  ? tsqkd::preset(std::string_view(opt.config).substr(kPresetPrefix.size()))
                  : tsqkd::load_config(opt.config);
    } catch (const tsqkd::IoError& e) {
        // An unreadable config is a usage problem, not a simulation failure.
        throw tsqkd::ConfigError("config", e.what());
    }
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.trials) cfg.trials = *opt.trials;
    if (opt.workers) cfg.workers = *opt.workers;
    cfg.validate();
    return cfg;
}

std::filesystem::path out_dir(const RunOptions& opt) {
    if (!opt.out_dir.empty()) return opt.out_dir;
    if (const char* env = std::getenv("TSQKD_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return "out";
}

void print_summary(const std::vector<tsqkd::SummaryRow>& rows) {
    fmt::print("{:<12} {:>6} {:>8} {:>10} {:>10} {:>10}\n", "topology", "burst", "link_km", "qubit_%", "decode_%",
               "survive_%");
    for (const auto& r : rows) {
        fmt::print("{:<12} {:>6} {:>8.2f} {:>10.3f} {:>10.3f} {:>10.3f}\n", r.topology, r.burst_size, r.link_km,
                   r.mean_success_qubit_pct, r.mean_bit_decode_pct, r.surviving_qubit_pct);
    }
}

enum class Mode { Run, SweepBurst, SweepDistance };

int run_mode(Mode mode, const RunOptions& opt) {
    const tsqkd::ExperimentConfig cfg = resolve_config(opt);
    const auto dir = out_dir(opt);
    tsqkd::ExperimentResult result;
    std::string kind;
    switch (mode) {
        case Mode::Run:
            result = tsqkd::run_experiment(cfg);
            kind = "run";
            break;
        case Mode::SweepBurst:
            result = tsqkd::sweep_burst(cfg);
            kind = "sweep-burst";
            break;
        case Mode::SweepDistance:
            result = tsqkd::sweep_distance(cfg);
            kind = "sweep-distance";
            break;
    }
    tsqkd::emit_csv(result.summary, result.records, dir / "records.csv", dir / "summary.csv");
    tsqkd::write_text_file(dir / "summary.json", tsqkd::summary_json(cfg, result.summary, kind));
    if (mode == Mode::SweepBurst) {
        tsqkd::emit_chart(result.summary, tsqkd::ChartAxis::BurstSize, tsqkd::ChartMetric::SuccessQubitPct,
                          cfg.name + ": burst size vs qubit success", dir / "chart.svg");
    } else if (mode == Mode::SweepDistance) {
        tsqkd::emit_chart(result.summary, tsqkd::ChartAxis::LinkKm, tsqkd::ChartMetric::SuccessQubitPct,
                          cfg.name + ": link length vs qubit success", dir / "chart.svg");
        tsqkd::emit_chart(result.summary, tsqkd::ChartAxis::LinkKm, tsqkd::ChartMetric::SurvivingQubitPct,
                          cfg.name + ": link length vs surviving qubits", dir / "chart_surviving.svg");
    }
    print_summary(result.summary);
    fmt::print("wrote {}\n", dir.string());
    return kExitOk;
}

double number_arg(const std::vector<std::string>& args, std::size_t i, const char* what) {
    if (i >= args.size()) throw tsqkd::ConfigError(what, fmt::format("missing argument <{}>", what));
    try {
        std::size_t used = 0;
        const double v = std::stod(args[i], &used);
        if (used != args[i].size()) throw std::invalid_argument(args[i]);
        return v;
    } catch (const std::logic_error&) {
        throw tsqkd::ConfigError(what, fmt::format("<{}> must be a number, got '{}'", what, args[i]));
    }
}

void print_commutator(const tsqkd::CommutatorReport& r) {
    const auto& m = r.matrix;
    fmt::print("[[{:.12g}, {:.12g}], [{:.12g}, {:.12g}]]\n", m.m[0].real(), m.m[1].real(), m.m[2].real(),
               m.m[3].real());
    fmt::print("max_abs_entry {:.6g}\nzero {}\n", r.max_abs_entry, r.is_zero_at_tolerance ? "yes" : "no");
}

int run_theory(const std::string& name, const std::vector<std::string>& args) {
    if (name == "cr-error") {
        fmt::print("{:.5f}\n", tsqkd::cr_error_probability(number_arg(args, 0, "theta")));
    } else if (name == "cr-error-printed") {
        fmt::print("{:.5f}\n", tsqkd::cr_error_probability_printed(number_arg(args, 0, "theta")));
    } else if (name == "attenuation") {
        fmt::print("{:.5f}\n", tsqkd::attenuation_survival(number_arg(args, 0, "alpha"), number_arg(args, 1, "length")));
    } else if (name == "commutator-e0") {
        print_commutator(tsqkd::ad_commutator_e0(number_arg(args, 0, "p"), number_arg(args, 1, "theta")));
    } else if (name == "commutator-e1") {
        print_commutator(tsqkd::ad_commutator_e1(number_arg(args, 0, "p"), number_arg(args, 1, "theta")));
    } else {
        throw tsqkd::ConfigError("theory", fmt::format(
            "unknown theory '{}' (cr-error, cr-error-printed, attenuation, commutator-e0, commutator-e1)", name));
    }
    return kExitOk;
}

int run_validate(std::uint64_t seed) {
    bool ok = true;
    for (const auto& c : tsqkd::run_validation(seed)) {
        fmt::print("{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
        ok = ok && c.passed;
    }
    return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-stage multi-photon QKD network simulator"};
    app.require_subcommand(1);

    RunOptions opt;
    auto add_run_options = [&opt](CLI::App* sub) {
        sub->add_option("config", opt.config, "config file, or preset:<name>")->required();
        sub->add_option("--seed", opt.seed, "override master seed");
        sub->add_option("--trials", opt.trials, "override trial count");
        sub->add_option("--workers", opt.workers, "worker threads (0 = all cores)");
        sub->add_option("--out-dir", opt.out_dir, "output directory (default $TSQKD_OUT_DIR or ./out)");
    };
    auto* run = app.add_subcommand("run", "run each topology at the configured burst size");
    auto* sweep_b = app.add_subcommand("sweep-burst", "sweep burst sizes over each topology");
    auto* sweep_d = app.add_subcommand("sweep-distance", "sweep link lengths over each topology");
    add_run_options(run);
    add_run_options(sweep_b);
    add_run_options(sweep_d);

    std::string theory_name;
    std::vector<std::string> theory_args;
    auto* theory = app.add_subcommand("theory", "evaluate a closed-form quantity");
    theory->add_option("name", theory_name, "cr-error | cr-error-printed | attenuation | commutator-e0 | commutator-e1")
        ->required();
    theory->add_option("params", theory_args, "numeric parameters");

    std::uint64_t validate_seed = 0;
    auto* validate = app.add_subcommand("validate", "run the oracle equivalence self-checks");
    validate->add_option("--seed", validate_seed, "seed for the sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run) return run_mode(Mode::Run, opt);
        if (*sweep_b) return run_mode(Mode::SweepBurst, opt);
        if (*sweep_d) return run_mode(Mode::SweepDistance, opt);
        if (*theory) return run_theory(theory_name, theory_args);
        if (*validate) return run_validate(validate_seed);
    } catch (const tsqkd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
