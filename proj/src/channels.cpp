#include "tsqkd/channels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "tsqkd/errors.hpp"

namespace tsqkd {
namespace {

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("{} out of [0,1]: {}", what, p));
}

KrausChannel pauli_mixture(std::string label, double p, const ComplexMat2& pauli) {
    const double keep = std::sqrt(1.0 - p);
    const double flip = std::sqrt(p);
    return {std::move(label), {keep * ComplexMat2::identity(), flip * pauli}};
}

}  // namespace

double KrausChannel::completeness_error() const {
    if (ops.empty()) return std::numeric_limits<double>::infinity();
    ComplexMat2 sum;
    for (const auto& e : ops) {
        if (!e.is_finite()) return std::numeric_limits<double>::infinity();
        sum = sum + e.adjoint() * e;
    }
    return (sum - ComplexMat2::identity()).max_abs_entry();
}

KrausChannel amplitude_damping(double p) {
    require_probability(p, "amplitude damping p");
    return {"amplitude_damping",
            {ComplexMat2::diag(1.0, std::sqrt(1.0 - p)), ComplexMat2(0.0, std::sqrt(p), 0.0, 0.0)}};
}

KrausChannel dephasing(double p) {
    require_probability(p, "dephasing p");
    return pauli_mixture("dephasing", p, pauli::z());
}

// Weights are folded into the operators so that sum E^dag E = I.
KrausChannel bit_flip(double p) {
    require_probability(p, "bit flip p");
    return pauli_mixture("bit_flip", p, pauli::x());
}

KrausChannel bit_phase_flip(double p) {
    require_probability(p, "bit-phase flip p");
    return pauli_mixture("bit_phase_flip", p, pauli::y());
}

KrausChannel collective_rotation(double theta) { return {"collective_rotation", {rotation(theta).mat}}; }

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch) {
    const double err = ch.completeness_error();
    if (!(err <= kCompletenessTol)) {
        throw InvalidChannel(fmt::format("channel '{}' violates completeness (error {:.3g})", ch.label, err));
    }
    ComplexMat2 out;
    for (const auto& e : ch.ops) out = out + e * rho.mat * e.adjoint();
    return {out};
}

PureState sample_trajectory(const PureState& s, const KrausChannel& ch, RandomStream& rng) {
    constexpr double kDegenerate = 1e-15;
    const double u = rng.uniform();
    auto weight = [&s](const ComplexMat2& e) {
        const auto v = multiply(e, s);
        return std::norm(v[0]) + std::norm(v[1]);
    };

    double total = 0.0;
    std::size_t last_live = ch.ops.size();
    for (std::size_t i = 0; i < ch.ops.size(); ++i) {
        const double w = weight(ch.ops[i]);
        total += w;
        if (w >= kDegenerate) last_live = i;
    }
    if (last_live == ch.ops.size()) throw NumericalDegeneracy("trajectory branch weights vanish");

    // Scale by the total so round-off in completeness cannot leave u uncovered.
    const double target = u * total;
    double acc = 0.0;
    std::size_t pick = last_live;
    for (std::size_t i = 0; i < last_live; ++i) {
        const double w = weight(ch.ops[i]);
        acc += w;
        if (target < acc && w >= kDegenerate) {
            pick = i;
            break;
        }
    }
    const auto v = multiply(ch.ops[pick], s);
    return {v[0], v[1]};
}

double attenuation_survival(double alpha_db_per_km, double length_km) {
    if (!(alpha_db_per_km >= 0.0) || !std::isfinite(alpha_db_per_km)) {
        throw InvalidArgument(fmt::format("attenuation coefficient must be >= 0: {}", alpha_db_per_km));
    }
    if (!(length_km >= 0.0) || !std::isfinite(length_km)) {
        throw InvalidArgument(fmt::format("fiber length must be >= 0: {}", length_km));
    }
    return std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
}

bool photon_survives(double alpha_db_per_km, double length_km, RandomStream& rng) {
    const double keep = attenuation_survival(alpha_db_per_km, length_km);
    return rng.uniform() < keep;
}

void NoiseConfig::validate() const {
    require_probability(p_ad, "p_ad");
    require_probability(p_dephase, "p_dephase");
    require_probability(p_bitflip, "p_bitflip");
    require_probability(p_bitphase, "p_bitphase");
    if (!(alpha_db_per_km >= 0.0) || !std::isfinite(alpha_db_per_km)) {
        throw InvalidArgument(fmt::format("alpha_db_per_km must be >= 0: {}", alpha_db_per_km));
    }
    if (!std::isfinite(cr.theta)) throw InvalidArgument("collective rotation theta must be finite");
    if (!(cr.theta_max >= 0.0 && cr.theta_max <= 2.0 * std::numbers::pi)) {
        throw InvalidArgument(fmt::format("collective rotation theta_max out of [0, 2pi]: {}", cr.theta_max));
    }
}

bool NoiseConfig::any_kraus_noise() const {
    return cr.mode != RotationMode::Off || p_ad > 0.0 || p_dephase > 0.0 || p_bitflip > 0.0 || p_bitphase > 0.0;
}

std::vector<KrausChannel> noise_stack(const NoiseConfig& cfg, double cr_angle) {
    std::vector<KrausChannel> out;
    if (cfg.cr.mode != RotationMode::Off) out.push_back(collective_rotation(cr_angle));
    if (cfg.p_ad > 0.0) out.push_back(amplitude_damping(cfg.p_ad));
    if (cfg.p_dephase > 0.0) out.push_back(dephasing(cfg.p_dephase));
    if (cfg.p_bitflip > 0.0) out.push_back(bit_flip(cfg.p_bitflip));
    if (cfg.p_bitphase > 0.0) out.push_back(bit_phase_flip(cfg.p_bitphase));
    return out;
}

const std::array<const char*, 5>& noise_stack_order() {
    static const std::array<const char*, 5> order{"collective_rotation", "amplitude_damping", "dephasing", "bit_flip",
                                                  "bit_phase_flip"};
    return order;
}

const char* to_string(RotationMode mode) {
    switch (mode) {
        case RotationMode::Off: return "off";
        case RotationMode::Fixed: return "fixed";
        case RotationMode::PerTrial: return "per_trial";
        case RotationMode::PerApplication: return "per_application";
    }
    return "off";
}

}  // namespace tsqkd
