#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "tsqkd/qcore.hpp"
#include "tsqkd/random.hpp"

namespace tsqkd {

inline constexpr double kCompletenessTol = 1e-12;

struct KrausChannel {
    std::string label;
    std::vector<ComplexMat2> ops;

    // max |sum_i E_i^dag E_i - I|; infinity for an empty or non-finite set.
    double completeness_error() const;
    bool is_complete(double tol = kCompletenessTol) const { return completeness_error() <= tol; }
};

KrausChannel amplitude_damping(double p);
KrausChannel dephasing(double p);
KrausChannel bit_flip(double p);
KrausChannel bit_phase_flip(double p);
KrausChannel collective_rotation(double theta);

// rho' = sum_i E_i rho E_i^dag. Throws InvalidChannel if completeness fails.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch);

// One quantum-trajectory step: branch i with probability |E_i s|^2, result
// renormalized. Consumes exactly one uniform draw.
PureState sample_trajectory(const PureState& s, const KrausChannel& ch, RandomStream& rng);

// Fiber transmission probability 10^(-alpha L / 10).
double attenuation_survival(double alpha_db_per_km, double length_km);

// One uniform draw.
bool photon_survives(double alpha_db_per_km, double length_km, RandomStream& rng);

enum class RotationMode { Off, Fixed, PerTrial, PerApplication };

struct CollectiveRotationSpec {
    RotationMode mode = RotationMode::Off;
    double theta = 0.0;       // Fixed
    double theta_max = 0.0;   // PerTrial / PerApplication: uniform in [0, theta_max]
};

struct NoiseConfig {
    double p_ad = 0.0;
    double p_dephase = 0.0;
    double p_bitflip = 0.0;
    double p_bitphase = 0.0;
    CollectiveRotationSpec cr;
    double alpha_db_per_km = 0.0;
    bool apply_at_nodes = true;
    bool apply_on_links = true;
    // Which of the three protocol passes receive noise events.
    std::array<bool, 3> stages{true, true, true};

    // Throws InvalidArgument naming the field.
    void validate() const;
    bool any_kraus_noise() const;
};

// Fixed order: collective rotation, amplitude damping, dephasing, bit flip,
// bit-phase flip. Channels with zero probability (or rotation off) are
// omitted. cr_angle is the rotation to use when the rotation mode is on.
std::vector<KrausChannel> noise_stack(const NoiseConfig& cfg, double cr_angle);

// Labels of noise_stack's fixed order, for output metadata.
const std::array<const char*, 5>& noise_stack_order();

const char* to_string(RotationMode mode);

}  // namespace tsqkd
