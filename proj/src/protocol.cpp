#include "tsqkd/protocol.hpp"

#include <numbers>

#include "tsqkd/errors.hpp"

namespace tsqkd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class PhotonRun {
public:
    PhotonRun(const Path& path, const TransmissionSettings& settings, double cr_angle, RandomStream& rng)
        : path_(path), settings_(settings), rng_(rng), stack_(noise_stack(settings.noise, cr_angle)) {}

    // Returns false if the photon is lost on this pass.
    bool traverse(PureState& s, int pass) {
        const NoiseConfig& noise = settings_.noise;
        const bool noisy = noise.stages[static_cast<std::size_t>(pass)] && !stack_.empty();
        const bool lossy = noise.alpha_db_per_km > 0.0 && (pass == 0 || !settings_.attenuation_single_pass);
        const int hops = path_.hops();
        for (int hop = 0; hop < hops; ++hop) {
            if (lossy && !photon_survives(noise.alpha_db_per_km, path_.link_km, rng_)) return false;
            if (noisy && noise.apply_on_links) apply_noise(s);
            if (noisy && noise.apply_at_nodes && hop + 1 < hops) apply_noise(s);
        }
        return true;
    }

private:
    void apply_noise(PureState& s) {
        if (settings_.noise.cr.mode == RotationMode::PerApplication) {
            // Stack slot 0 is the rotation whenever the mode is on.
            stack_.front() = collective_rotation(rng_.uniform() * settings_.noise.cr.theta_max);
        }
        for (const auto& ch : stack_) s = sample_trajectory(s, ch, rng_);
    }

    const Path& path_;
    const TransmissionSettings& settings_;
    RandomStream& rng_;
    std::vector<KrausChannel> stack_;
};

}  // namespace

const char* to_string(DecodeStatus s) {
    switch (s) {
        case DecodeStatus::Ok: return "ok";
        case DecodeStatus::Tie: return "tie";
        case DecodeStatus::Erasure: return "erasure";
    }
    return "erasure";
}

std::size_t TransmissionRecord::received_count() const {
    std::size_t n = 0;
    for (const auto& o : outcomes) n += o.is_received() ? 1 : 0;
    return n;
}

std::size_t TransmissionRecord::correct_count() const {
    std::size_t n = 0;
    for (const auto& o : outcomes) n += (o.is_received() && o.bit() == sent) ? 1 : 0;
    return n;
}

PureState encode_bit(Bit b) { return PureState::basis(b); }

double trial_cr_angle(const NoiseConfig& cfg, RandomStream& rng) {
    switch (cfg.cr.mode) {
        case RotationMode::Fixed: return cfg.cr.theta;
        case RotationMode::PerTrial: return rng.uniform() * cfg.cr.theta_max;
        case RotationMode::Off:
        case RotationMode::PerApplication: return 0.0;
    }
    return 0.0;
}

PhotonOutcome three_stage_photon(Bit b, StageAngles angles, const Path& path, const TransmissionSettings& settings,
                                 double cr_angle, RandomStream& rng) {
    const Unitary alice = rotation(angles.theta_a);
    const Unitary bob = rotation(angles.theta_b);
    const std::array<Unitary, 3> before_pass{alice, bob, alice.adjoint()};

    PhotonRun run(path, settings, cr_angle, rng);
    PureState s = encode_bit(b);
    // Passes alternate direction; a path's hops and nodes are symmetric, so
    // each pass walks the same sequence of links.
    for (int pass = 0; pass < 3; ++pass) {
        s = apply_unitary(s, before_pass[static_cast<std::size_t>(pass)]);
        if (!run.traverse(s, pass)) return PhotonOutcome::lost();
    }
    s = apply_unitary(s, bob.adjoint());
    return PhotonOutcome::received(measure_z(s, rng));
}

DecodeResult majority_decode(const std::vector<PhotonOutcome>& outcomes) {
    std::size_t ones = 0;
    std::size_t zeros = 0;
    for (const auto& o : outcomes) {
        if (o.is_lost()) continue;
        (o.bit() == Bit::One ? ones : zeros) += 1;
    }
    if (ones + zeros == 0) return {DecodeStatus::Erasure, Bit::Zero};
    if (ones == zeros) return {DecodeStatus::Tie, Bit::Zero};
    return {DecodeStatus::Ok, ones > zeros ? Bit::One : Bit::Zero};
}

TransmissionRecord transmit_burst(Bit b, int m, const AnglePolicy& angles, const Path& path,
                                  const TransmissionSettings& settings, double cr_angle, std::uint64_t burst_key) {
    if (m < 1) throw InvalidArgument("burst size must be >= 1");
    TransmissionRecord rec;
    rec.sent = b;
    rec.outcomes.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        RandomStream rng = RandomStream::at(burst_key, static_cast<std::uint64_t>(i));
        StageAngles a;
        if (angles.fixed) {
            a = *angles.fixed;
        } else {
            a.theta_a = kTwoPi * rng.uniform();
            a.theta_b = kTwoPi * rng.uniform();
        }
        rec.outcomes.push_back(three_stage_photon(b, a, path, settings, cr_angle, rng));
    }
    rec.decoded = majority_decode(rec.outcomes);
    rec.success_fraction = static_cast<double>(rec.correct_count()) / static_cast<double>(m);
    return rec;
}

}  // namespace tsqkd
