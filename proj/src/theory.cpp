#include "tsqkd/theory.hpp"

#include <cmath>

namespace tsqkd {

CommutatorReport CommutatorReport::of(const ComplexMat2& m) {
    CommutatorReport r;
    r.matrix = m;
    r.max_abs_entry = m.max_abs_entry();
    r.is_zero_at_tolerance = r.max_abs_entry < kIdentityTol;
    return r;
}

CommutatorReport ad_commutator_e0(double p, double theta) {
    const auto ad = amplitude_damping(p);
    return CommutatorReport::of(commutator(ad.ops[0], rotation(theta).mat));
}

CommutatorReport ad_commutator_e1(double p, double theta) {
    const auto ad = amplitude_damping(p);
    return CommutatorReport::of(commutator(ad.ops[1], rotation(theta).mat));
}

double cr_error_probability(double theta) {
    const auto r = rotation(theta).mat;
    const auto out = multiply(r * r * r, PureState::zero());
    return std::norm(out[1]);
}

double cr_error_probability_printed(double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double amp = s * (s * s + 3.0 * c * c);
    return amp * amp;
}

DensityMatrix three_stage_exact(Bit bit, double theta_a, double theta_b, const StageChannels& per_stage_channels) {
    const Unitary ua = rotation(theta_a);
    const Unitary ub = rotation(theta_b);
    const std::array<Unitary, 3> before_stage{ua, ub, ua.adjoint()};

    DensityMatrix rho = density_from_pure(PureState::basis(bit));
    for (std::size_t stage = 0; stage < 3; ++stage) {
        rho = apply_unitary(rho, before_stage[stage]);
        for (const auto& ch : per_stage_channels[stage]) rho = apply_channel(rho, ch);
    }
    return apply_unitary(rho, ub.adjoint());
}

}  // namespace tsqkd
