#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsqkd/channels.hpp"
#include "tsqkd/network.hpp"
#include "tsqkd/qcore.hpp"
#include "tsqkd/random.hpp"

namespace tsqkd {

struct StageAngles {
    double theta_a = 0.0;  // Alice
    double theta_b = 0.0;  // Bob
};

// Fresh uniform angles in [0, 2pi) for every photon, or one fixed pair.
struct AnglePolicy {
    std::optional<StageAngles> fixed;

    static AnglePolicy random_per_photon() { return {}; }
    static AnglePolicy fixed_pair(StageAngles a) { return {a}; }
};

// How noise and loss are laid over the path for each protocol pass.
struct TransmissionSettings {
    NoiseConfig noise;
    // Attenuation draws only on the first pass, so distance counts once.
    bool attenuation_single_pass = false;
};

class PhotonOutcome {
public:
    static PhotonOutcome received(Bit b) { return PhotonOutcome(b); }
    static PhotonOutcome lost() { return PhotonOutcome(std::nullopt); }

    bool is_lost() const { return !bit_.has_value(); }
    bool is_received() const { return bit_.has_value(); }
    // Precondition: is_received().
    Bit bit() const { return *bit_; }

    friend bool operator==(const PhotonOutcome&, const PhotonOutcome&) = default;

private:
    explicit PhotonOutcome(std::optional<Bit> b) : bit_(b) {}
    std::optional<Bit> bit_;
};

enum class DecodeStatus { Ok, Tie, Erasure };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::Erasure;
    Bit bit = Bit::Zero;  // meaningful only when status == Ok

    bool ok() const { return status == DecodeStatus::Ok; }
};

const char* to_string(DecodeStatus s);

struct TransmissionRecord {
    Bit sent = Bit::Zero;
    std::vector<PhotonOutcome> outcomes;
    DecodeResult decoded;
    double success_fraction = 0.0;  // received outcomes equal to sent / burst size

    std::size_t received_count() const;
    std::size_t correct_count() const;
    bool decoded_correctly() const { return decoded.ok() && decoded.bit == sent; }
};

PureState encode_bit(Bit b);

// Angle used by the collective-rotation channel for one trial, according to
// cfg.cr.mode: the fixed angle, or (PerTrial) one uniform draw in
// [0, theta_max]. Off and PerApplication return 0 without drawing.
double trial_cr_angle(const NoiseConfig& cfg, RandomStream& rng);

// One photon through the three passes. Draw order on rng:
//   1. attenuation draw per link, in path order, on each pass where loss applies
//      (alpha > 0; first pass only in single-pass mode), taken before the link's noise
//   2. per noise event: one angle draw when the rotation mode is
//      PerApplication, then one trajectory draw per channel in the stack
//   3. one measurement draw
// A noise event happens on each link traversal (apply_on_links) and at each
// intermediate node (apply_at_nodes) during enabled passes. The photon
// stops at the first failed attenuation draw.
PhotonOutcome three_stage_photon(Bit b, StageAngles angles, const Path& path, const TransmissionSettings& settings,
                                 double cr_angle, RandomStream& rng);

// Strict majority of received outcomes; equal counts is a tie, none received
// is an erasure.
DecodeResult majority_decode(const std::vector<PhotonOutcome>& outcomes);

// m photons; photon i uses the stream derived from (burst_key, i). With a
// random angle policy, the first two draws of each photon stream are
// theta_a then theta_b.
TransmissionRecord transmit_burst(Bit b, int m, const AnglePolicy& angles, const Path& path,
                                  const TransmissionSettings& settings, double cr_angle, std::uint64_t burst_key);

}  // namespace tsqkd
