#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "tsqkd/errors.hpp"
#include "tsqkd/qcore.hpp"

using namespace tsqkd;

namespace {

constexpr double kPi = std::numbers::pi;

bool matches(const ComplexMat2& m, const oracle::Mat& o, double tol) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(m(i, j) - o[i][j]) > tol) return false;
    return true;
}

PureState random_state(RandomStream& rng) {
    const double theta = kPi * rng.uniform();
    const double phase = 2 * kPi * rng.uniform();
    return {std::cos(theta), std::polar(std::sin(theta), phase)};
}

}  // namespace

TEST_CASE("rotation examples") {
    CHECK(rotation(0.0).mat.approx_equal(ComplexMat2::identity(), 0.0));

    const auto flipped = apply_unitary(PureState::zero(), rotation(kPi / 2));
    CHECK(std::abs(flipped.alpha()) < 1e-15);
    CHECK(std::abs(flipped.beta() - 1.0) < 1e-15);

    // Hand product of the two rotation matrices.
    const auto product = oracle::mul(oracle::rot(kPi / 6), oracle::rot(kPi / 3));
    CHECK(matches((rotation(kPi / 6).mat * rotation(kPi / 3).mat), product, 1e-12));
    CHECK(matches(rotation(kPi / 2).mat, product, 1e-12));

    CHECK_THROWS_AS(rotation(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
    CHECK_THROWS_AS(rotation(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("commutator examples") {
    const ComplexMat2 m{1.0, {2.0, -1.0}, 0.5, {0.0, 3.0}};
    CHECK(commutator(ComplexMat2::identity(), m).max_abs_entry() == 0.0);

    const auto c = commutator(rotation(0.7).mat, rotation(2.1).mat);
    CHECK(c.max_abs_entry() < 1e-12);

    // XZ - ZX = [[0,-1],[1,0]] - [[0,1],[-1,0]].
    const auto xz = commutator(pauli::x(), pauli::z());
    CHECK(xz.approx_equal(ComplexMat2(0.0, -2.0, 2.0, 0.0), 0.0));
}

TEST_CASE("apply_unitary matches the rotated basis states") {
    for (double theta : {0.0, 0.3, 1.2, -2.5, 4.0}) {
        const auto zero = apply_unitary(PureState::zero(), rotation(theta));
        CHECK(std::abs(zero.alpha() - std::cos(theta)) < 1e-12);
        CHECK(std::abs(zero.beta() - std::sin(theta)) < 1e-12);
        const auto one = apply_unitary(PureState::one(), rotation(theta));
        CHECK(std::abs(one.alpha() + std::sin(theta)) < 1e-12);
        CHECK(std::abs(one.beta() - std::cos(theta)) < 1e-12);
    }
    const auto same = apply_unitary(PureState::zero(), rotation(0.0));
    CHECK(same.alpha() == Complex(1.0));
}

TEST_CASE("density_from_pure examples") {
    CHECK(density_from_pure(PureState::zero()).mat.approx_equal(ComplexMat2::diag(1.0, 0.0), 0.0));

    const auto plus = density_from_pure(PureState(1.0, 1.0));
    CHECK(plus.mat.approx_equal(ComplexMat2(0.5, 0.5, 0.5, 0.5), 1e-15));

    const double t = kPi / 6;
    const auto rho = density_from_pure(PureState(std::cos(t), std::sin(t)));
    CHECK(rho.mat.approx_equal(ComplexMat2(0.75, std::sqrt(3.0) / 4, std::sqrt(3.0) / 4, 0.25), 1e-12));
    CHECK(std::abs(rho.purity() - 1.0) < 1e-10);
}

TEST_CASE("prob_one readout") {
    CHECK(prob_one(PureState::zero()) == 0.0);
    CHECK(std::abs(prob_one(PureState(std::cos(kPi / 4), std::sin(kPi / 4))) - 0.5) < 1e-12);
    const DensityMatrix mixed{ComplexMat2::diag(0.7, 0.3)};
    CHECK(prob_one(mixed) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("measure_z") {
    RandomStream rng(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(measure_z(PureState::one(), rng) == Bit::One);
        CHECK(measure_z(PureState::zero(), rng) == Bit::Zero);
    }

    SUBCASE("consumes exactly one draw") {
        RandomStream r(7);
        (void)measure_z(PureState(1.0, 1.0), r);
        CHECK(r.draws() == 1);
    }

    SUBCASE("frequency at theta = pi/3") {
        constexpr std::size_t n = 100000;
        const PureState s(std::cos(kPi / 3), std::sin(kPi / 3));
        RandomStream r(2024);
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) ones += measure_z(s, r) == Bit::One ? 1 : 0;
        const double freq = static_cast<double>(ones) / n;
        CHECK(std::abs(freq - 0.75) <= 3 * oracle::binomial_sigma(0.75, n));
    }
}

TEST_CASE("qcore properties over random inputs") {
    RandomStream rng(99);
    for (int i = 0; i < 100; ++i) {
        const double a = 4 * kPi * (rng.uniform() - 0.5);
        const double b = 4 * kPi * (rng.uniform() - 0.5);
        CHECK(commutator(rotation(a).mat, rotation(b).mat).max_abs_entry() < 1e-12);
        CHECK((rotation(a).mat * rotation(-a).mat).approx_equal(ComplexMat2::identity(), 1e-12));
        CHECK(rotation(a).is_unitary());

        const PureState s = random_state(rng);
        const PureState moved = apply_unitary(s, rotation(b));
        CHECK(std::abs(moved.norm_squared() - 1.0) < 1e-10);

        const DensityMatrix rho = density_from_pure(s);
        CHECK(rho.is_valid());
        CHECK(std::abs(prob_one(rho) - prob_one(s)) < 1e-12);
    }
}

TEST_CASE("pure state rejects degenerate amplitudes") {
    CHECK_THROWS_AS(PureState(0.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(PureState(std::numeric_limits<double>::quiet_NaN(), 1.0), InvalidArgument);
    CHECK(bit_from_int(1) == Bit::One);
    CHECK_THROWS_AS(bit_from_int(2), InvalidArgument);
}

TEST_CASE("density matrix invariant checks catch bad matrices") {
    CHECK_FALSE(DensityMatrix{ComplexMat2(0.5, 1.0, 0.0, 0.5)}.is_hermitian());
    CHECK_FALSE(DensityMatrix{ComplexMat2::diag(0.6, 0.6)}.has_unit_trace());
    CHECK_FALSE(DensityMatrix{ComplexMat2::diag(1.2, -0.2)}.is_psd());
    CHECK_FALSE(ComplexMat2(std::numeric_limits<double>::infinity(), 0.0, 0.0, 1.0).is_finite());
}
