#pragma once

#include <array>
#include <vector>

#include "tsqkd/channels.hpp"
#include "tsqkd/qcore.hpp"

namespace tsqkd {

struct CommutatorReport {
    ComplexMat2 matrix;
    double max_abs_entry = 0.0;
    bool is_zero_at_tolerance = false;  // max_abs_entry < 1e-12

    static CommutatorReport of(const ComplexMat2& m);
};

// [E_0(p), R(theta)] for amplitude damping. Vanishes iff p = 0 or sin(theta) = 0.
CommutatorReport ad_commutator_e0(double p, double theta);

// [E_1(p), R(theta)]; equals sqrt(p) sin(theta) diag(1, -1).
CommutatorReport ad_commutator_e1(double p, double theta);

// Bob's error probability when the same collective rotation hits all three
// passes of |0>: |<1| R(theta)^3 |0>|^2 = sin^2(3 theta).
double cr_error_probability(double theta);

// The closed form printed alongside the composition,
// |sin(theta)(sin^2(theta) + 3 cos^2(theta))|^2. Not a probability (reaches
// 1.5625 at theta = pi/6); kept only so the discrepancy can be reported.
double cr_error_probability_printed(double theta);

using StageChannels = std::array<std::vector<KrausChannel>, 3>;

// Exact density-matrix evolution of one photon through the protocol:
// U_A, stage-1 channels, U_B, stage-2 channels, U_A^dag, stage-3 channels,
// U_B^dag.
DensityMatrix three_stage_exact(Bit bit, double theta_a, double theta_b, const StageChannels& per_stage_channels);

}  // namespace tsqkd
