#include "tsqkd/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "tsqkd/errors.hpp"

namespace tsqkd {
namespace {

using nlohmann::json;

std::string join_key(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

void reject_unknown_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) throw ConfigError(join_key(where, key), fmt::format("unknown key '{}'", join_key(where, key)));
    }
}

void require_object(const json& j, const std::string& key) {
    if (!j.is_object()) throw ConfigError(key, fmt::format("'{}' must be an object", key.empty() ? "<root>" : key));
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(join_key(where, key), fmt::format("'{}' must be a number", join_key(where, key)));
    return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const char* key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(join_key(where, key), fmt::format("'{}' must be an integer", join_key(where, key)));
    }
    return v.get<std::int64_t>();
}

int get_int(const json& obj, const std::string& where, const char* key, int fallback) {
    const auto v = get_integer(obj, where, key, fallback);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(join_key(where, key), fmt::format("'{}' is out of range", join_key(where, key)));
    }
    return static_cast<int>(v);
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(join_key(where, key), fmt::format("'{}' must be true or false", join_key(where, key)));
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(join_key(where, key), fmt::format("'{}' must be a string", join_key(where, key)));
    return v.get<std::string>();
}

TopologySpec parse_topology(const json& j, const std::string& where) {
    if (j.is_string()) {
        const auto kind = j.get<std::string>();
        if (kind == "direct") return TopologySpec::direct();
        if (kind == "ring") return TopologySpec::ring(8);
        if (kind == "grid") return TopologySpec::grid(4, 4);
        if (kind == "torus") return TopologySpec::torus(4, 4);
        throw ConfigError(where, fmt::format("'{}': unknown topology kind '{}'", where, kind));
    }
    require_object(j, where);
    reject_unknown_keys(j, where, {"kind", "nodes", "rows", "cols", "link_km"});
    const auto kind = get_string(j, where, "kind", "");
    TopologySpec spec;
    if (kind == "direct") spec = TopologySpec::direct();
    else if (kind == "ring") spec = TopologySpec::ring(get_int(j, where, "nodes", 8));
    else if (kind == "grid") spec = TopologySpec::grid(get_int(j, where, "rows", 4), get_int(j, where, "cols", 4));
    else if (kind == "torus") spec = TopologySpec::torus(get_int(j, where, "rows", 4), get_int(j, where, "cols", 4));
    else throw ConfigError(join_key(where, "kind"), fmt::format("'{}.kind': unknown topology kind '{}'", where, kind));
    spec.link_km = get_number(j, where, "link_km", 0.0);
    return spec;
}

CollectiveRotationSpec parse_rotation(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown_keys(j, where, {"mode", "theta", "theta_max"});
    CollectiveRotationSpec cr;
    const auto mode = get_string(j, where, "mode", "off");
    if (mode == "off") cr.mode = RotationMode::Off;
    else if (mode == "fixed") cr.mode = RotationMode::Fixed;
    else if (mode == "per_trial") cr.mode = RotationMode::PerTrial;
    else if (mode == "per_application") cr.mode = RotationMode::PerApplication;
    else throw ConfigError(join_key(where, "mode"), fmt::format("'{}.mode': unknown rotation mode '{}'", where, mode));
    cr.theta = get_number(j, where, "theta", 0.0);
    cr.theta_max = get_number(j, where, "theta_max", 2.0 * std::numbers::pi);
    return cr;
}

NoiseConfig parse_noise(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown_keys(j, where,
                        {"p_ad", "p_dephase", "p_bitflip", "p_bitphase", "collective_rotation", "alpha_db_per_km",
                         "apply_at_nodes", "apply_on_links", "stages"});
    NoiseConfig n;
    n.p_ad = get_number(j, where, "p_ad", 0.0);
    n.p_dephase = get_number(j, where, "p_dephase", 0.0);
    n.p_bitflip = get_number(j, where, "p_bitflip", 0.0);
    n.p_bitphase = get_number(j, where, "p_bitphase", 0.0);
    if (j.contains("collective_rotation")) {
        n.cr = parse_rotation(j.at("collective_rotation"), join_key(where, "collective_rotation"));
    }
    n.alpha_db_per_km = get_number(j, where, "alpha_db_per_km", 0.0);
    n.apply_at_nodes = get_bool(j, where, "apply_at_nodes", true);
    n.apply_on_links = get_bool(j, where, "apply_on_links", true);
    if (j.contains("stages")) {
        const auto key = join_key(where, "stages");
        const auto& s = j.at("stages");
        if (!s.is_array()) throw ConfigError(key, fmt::format("'{}' must be a list of pass numbers 1-3", key));
        n.stages = {false, false, false};
        for (const auto& v : s) {
            if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > 3) {
                throw ConfigError(key, fmt::format("'{}' entries must be 1, 2 or 3", key));
            }
            n.stages[static_cast<std::size_t>(v.get<int>() - 1)] = true;
        }
    }
    return n;
}

AnglePolicy parse_angles(const json& j, const std::string& where) {
    require_object(j, where);
    reject_unknown_keys(j, where, {"mode", "theta_a", "theta_b"});
    const auto mode = get_string(j, where, "mode", "per_photon");
    if (mode == "per_photon") return AnglePolicy::random_per_photon();
    if (mode == "fixed") return AnglePolicy::fixed_pair({get_number(j, where, "theta_a", 0.0), get_number(j, where, "theta_b", 0.0)});
    throw ConfigError(join_key(where, "mode"), fmt::format("'{}.mode': unknown angle mode '{}'", where, mode));
}

template <typename T>
std::vector<T> parse_list(const json& obj, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_array()) throw ConfigError(key, fmt::format("'{}' must be a list", key));
    std::vector<T> out;
    for (const auto& e : v) {
        if constexpr (std::is_integral_v<T>) {
            if (!e.is_number_integer()) throw ConfigError(key, fmt::format("'{}' entries must be integers", key));
        } else {
            if (!e.is_number()) throw ConfigError(key, fmt::format("'{}' entries must be numbers", key));
        }
        out.push_back(e.get<T>());
    }
    return out;
}

json topology_json(const TopologySpec& t) {
    json j;
    switch (t.kind) {
        case TopologyKind::Direct: j["kind"] = "direct"; break;
        case TopologyKind::Ring:
            j["kind"] = "ring";
            j["nodes"] = t.ring_nodes;
            break;
        case TopologyKind::Grid:
        case TopologyKind::Torus:
            j["kind"] = t.kind == TopologyKind::Grid ? "grid" : "torus";
            j["rows"] = t.rows;
            j["cols"] = t.cols;
            break;
    }
    j["link_km"] = t.link_km;
    return j;
}

std::vector<TopologySpec> all_topologies() {
    return {TopologySpec::direct(), TopologySpec::ring(8), TopologySpec::grid(4, 4), TopologySpec::torus(4, 4)};
}

}  // namespace

void ExperimentConfig::validate() const {
    if (bits < 1) throw ConfigError("bits", "bits must be >= 1");
    if (burst_size < 1) throw ConfigError("burst_size", "burst_size must be >= 1");
    if (trials < 1) throw ConfigError("trials", "trials must be >= 1");
    if (workers < 0) throw ConfigError("workers", "workers must be >= 0");
    if (topologies.empty()) throw ConfigError("topologies", "at least one topology is required");
    for (int b : burst_sweep) {
        if (b < 1) throw ConfigError("burst_sweep", "burst_sweep entries must be >= 1");
    }
    for (double d : distance_sweep) {
        if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("distance_sweep", "distance_sweep entries must be >= 0");
    }
    auto check = [](const char* key, double p) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(key, fmt::format("{} out of [0,1]", key));
    };
    check("noise.p_ad", noise.p_ad);
    check("noise.p_dephase", noise.p_dephase);
    check("noise.p_bitflip", noise.p_bitflip);
    check("noise.p_bitphase", noise.p_bitphase);
    if (!(noise.alpha_db_per_km >= 0.0) || !std::isfinite(noise.alpha_db_per_km)) {
        throw ConfigError("noise.alpha_db_per_km", "noise.alpha_db_per_km must be >= 0");
    }
    if (!std::isfinite(noise.cr.theta)) {
        throw ConfigError("noise.collective_rotation.theta", "noise.collective_rotation.theta must be finite");
    }
    if (!(noise.cr.theta_max >= 0.0 && noise.cr.theta_max <= 2.0 * std::numbers::pi)) {
        throw ConfigError("noise.collective_rotation.theta_max", "noise.collective_rotation.theta_max out of [0, 2pi]");
    }
    if (angles.fixed && (!std::isfinite(angles.fixed->theta_a) || !std::isfinite(angles.fixed->theta_b))) {
        throw ConfigError("angles", "fixed angles must be finite");
    }
    for (const auto& t : topologies) {
        try {
            t.validate();
        } catch (const InvalidArgument& e) {
            throw ConfigError("topologies", fmt::format("topology {}: {}", t.label(), e.what()));
        }
    }
}

ExperimentConfig parse_config(std::string_view text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", fmt::format("{}: malformed JSON: {}", origin, e.what()));
    }
    require_object(root, "");
    reject_unknown_keys(root, "",
                        {"schema_version", "name", "bits", "burst_size", "burst_sweep", "topology", "topologies",
                         "distance_sweep", "noise", "angles", "trials", "seed", "attenuation_single_pass", "workers"});

    const auto version = get_int(root, "", "schema_version", kSchemaVersion);
    if (version != kSchemaVersion) {
        throw ConfigError("schema_version", fmt::format("unsupported schema_version {} (expected {})", version, kSchemaVersion));
    }
    if (root.contains("topology") && root.contains("topologies")) {
        throw ConfigError("topologies", "give either 'topology' or 'topologies', not both");
    }

    ExperimentConfig cfg;
    cfg.name = get_string(root, "", "name", cfg.name);
    cfg.bits = get_int(root, "", "bits", cfg.bits);
    cfg.burst_size = get_int(root, "", "burst_size", cfg.burst_size);
    cfg.trials = get_int(root, "", "trials", cfg.trials);
    cfg.workers = get_int(root, "", "workers", cfg.workers);
    if (root.contains("seed")) {
        const auto& s = root.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            throw ConfigError("seed", "'seed' must be a non-negative integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.attenuation_single_pass = get_bool(root, "", "attenuation_single_pass", false);

    if (root.contains("topology")) {
        cfg.topologies = {parse_topology(root.at("topology"), "topology")};
    } else if (root.contains("topologies")) {
        const auto& list = root.at("topologies");
        if (!list.is_array() || list.empty()) throw ConfigError("topologies", "'topologies' must be a non-empty list");
        cfg.topologies.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            cfg.topologies.push_back(parse_topology(list[i], fmt::format("topologies[{}]", i)));
        }
    }
    if (root.contains("burst_sweep")) {
        cfg.burst_sweep = parse_list<int>(root, "burst_sweep");
        if (cfg.burst_sweep.empty()) throw ConfigError("burst_sweep", "'burst_sweep' must not be empty when present");
    }
    if (root.contains("distance_sweep")) {
        cfg.distance_sweep = parse_list<double>(root, "distance_sweep");
        if (cfg.distance_sweep.empty()) throw ConfigError("distance_sweep", "'distance_sweep' must not be empty when present");
    }
    if (root.contains("noise")) cfg.noise = parse_noise(root.at("noise"), "noise");
    if (root.contains("angles")) cfg.angles = parse_angles(root.at("angles"), "angles");

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot read config file '{}'", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

std::string dump_config(const ExperimentConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = cfg.name;
    j["bits"] = cfg.bits;
    j["burst_size"] = cfg.burst_size;
    if (!cfg.burst_sweep.empty()) j["burst_sweep"] = cfg.burst_sweep;
    if (!cfg.distance_sweep.empty()) j["distance_sweep"] = cfg.distance_sweep;
    j["topologies"] = json::array();
    for (const auto& t : cfg.topologies) j["topologies"].push_back(topology_json(t));
    json n;
    n["p_ad"] = cfg.noise.p_ad;
    n["p_dephase"] = cfg.noise.p_dephase;
    n["p_bitflip"] = cfg.noise.p_bitflip;
    n["p_bitphase"] = cfg.noise.p_bitphase;
    n["collective_rotation"] = {{"mode", to_string(cfg.noise.cr.mode)},
                                {"theta", cfg.noise.cr.theta},
                                {"theta_max", cfg.noise.cr.theta_max}};
    n["alpha_db_per_km"] = cfg.noise.alpha_db_per_km;
    n["apply_at_nodes"] = cfg.noise.apply_at_nodes;
    n["apply_on_links"] = cfg.noise.apply_on_links;
    n["stages"] = json::array();
    for (int s = 0; s < 3; ++s) {
        if (cfg.noise.stages[static_cast<std::size_t>(s)]) n["stages"].push_back(s + 1);
    }
    j["noise"] = n;
    if (cfg.angles.fixed) {
        j["angles"] = {{"mode", "fixed"}, {"theta_a", cfg.angles.fixed->theta_a}, {"theta_b", cfg.angles.fixed->theta_b}};
    } else {
        j["angles"] = {{"mode", "per_photon"}};
    }
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["attenuation_single_pass"] = cfg.attenuation_single_pass;
    j["workers"] = cfg.workers;
    return j.dump(2);
}

ExperimentConfig preset(std::string_view name) {
    ExperimentConfig cfg;
    cfg.name = std::string(name);
    cfg.topologies = all_topologies();
    cfg.burst_sweep = {1, 5, 11, 25, 51, 75, 101};
    if (name == "noiseless") {
        cfg.burst_sweep.clear();
    } else if (name == "combined") {
        // "Phase-flip 15%" in the combined run is read as the bit-phase (Y) model.
        cfg.noise.p_ad = 0.3;
        cfg.noise.p_dephase = 0.2;
        cfg.noise.p_bitphase = 0.15;
        cfg.noise.cr.mode = RotationMode::PerTrial;
        cfg.noise.cr.theta_max = 2.0 * std::numbers::pi;
    } else if (name == "amplitude_damping") {
        cfg.noise.p_ad = 0.2;
    } else if (name == "bit_flip") {
        cfg.noise.p_bitflip = 0.3;
    } else if (name == "bit_phase_flip") {
        cfg.noise.p_bitphase = 0.3;
    } else if (name == "attenuation") {
        cfg.burst_sweep.clear();
        cfg.noise.alpha_db_per_km = 0.15;
        cfg.distance_sweep = {0, 5, 10, 20, 30, 40, 60, 80};
    } else {
        throw ConfigError("preset", fmt::format("unknown preset '{}'", name));
    }
    return cfg;
}

std::vector<std::string> preset_names() {
    return {"noiseless", "combined", "amplitude_damping", "bit_flip", "bit_phase_flip", "attenuation"};
}

}  // namespace tsqkd
