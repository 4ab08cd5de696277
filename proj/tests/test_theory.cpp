#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "tsqkd/channels.hpp"
#include "tsqkd/errors.hpp"
#include "tsqkd/theory.hpp"

using namespace tsqkd;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const ComplexMat2& m, const oracle::Mat& o) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(m(i, j) - o[i][j]));
    return worst;
}

// |<1| R(t) R(t) R(t) |0>|^2 by three explicit matrix-vector products.
double brute_cr_error(double t) {
    oracle::Vec v{1.0, 0.0};
    for (int i = 0; i < 3; ++i) v = oracle::mul(oracle::rot(t), v);
    return std::norm(v[1]);
}

}  // namespace

TEST_CASE("amplitude damping commutators") {
    CHECK(ad_commutator_e0(0.0, 1.3).is_zero_at_tolerance);
    CHECK(ad_commutator_e0(0.5, 0.0).is_zero_at_tolerance);

    SUBCASE("e0 at p = 0.36, theta = pi/2") {
        const auto r = ad_commutator_e0(0.36, kPi / 2);
        CHECK_FALSE(r.is_zero_at_tolerance);
        CHECK(std::abs(r.matrix(0, 0)) < 1e-12);
        CHECK(std::abs(r.matrix(1, 1)) < 1e-12);
        CHECK(std::abs(std::abs(r.matrix(0, 1)) - 0.2) < 1e-12);
        CHECK(std::abs(std::abs(r.matrix(1, 0)) - 0.2) < 1e-12);
        CHECK(r.max_abs_entry == doctest::Approx(0.2));
    }

    CHECK(ad_commutator_e1(0.0, 0.8).is_zero_at_tolerance);
    CHECK(ad_commutator_e1(0.25, kPi).is_zero_at_tolerance);

    SUBCASE("e1 at p = 0.25, theta = pi/2") {
        const auto r = ad_commutator_e1(0.25, kPi / 2);
        CHECK(std::abs(std::abs(r.matrix(0, 0)) - 0.5) < 1e-12);
        CHECK(std::abs(std::abs(r.matrix(1, 1)) - 0.5) < 1e-12);
        CHECK(std::abs(r.matrix(0, 1)) < 1e-12);
        CHECK(std::abs(r.matrix(1, 0)) < 1e-12);
    }

    SUBCASE("entries agree with direct multiplication") {
        RandomStream rng(31);
        for (int i = 0; i < 200; ++i) {
            const double p = rng.uniform();
            const double t = 2 * kPi * rng.uniform();
            const auto ops = oracle::ad_ops(p);
            const auto r = oracle::rot(t);
            for (int k = 0; k < 2; ++k) {
                const auto er = oracle::mul(ops[k], r);
                const auto re = oracle::mul(r, ops[k]);
                oracle::Mat diff{};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) diff[a][b] = er[a][b] - re[a][b];
                const auto ours = k == 0 ? ad_commutator_e0(p, t) : ad_commutator_e1(p, t);
                CHECK(max_diff(ours.matrix, diff) < 1e-12);
            }
        }
    }
}

TEST_CASE("commutators vanish only in the trivial cases") {
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        for (int k = 0; k <= 16; ++k) {
            const double theta = k * kPi / 8;
            const double s = std::sin(theta);
            const bool trivial = p * s * s < 1e-24;
            INFO("p=", p, " theta=", theta);
            CHECK(ad_commutator_e0(p, theta).is_zero_at_tolerance == trivial);
            CHECK(ad_commutator_e1(p, theta).is_zero_at_tolerance == trivial);
        }
    }
}

TEST_CASE("collective rotation error probability") {
    CHECK(cr_error_probability(0.0) == 0.0);
    CHECK(std::abs(cr_error_probability(kPi / 6) - 1.0) < 1e-12);
    CHECK(std::abs(cr_error_probability(kPi / 12) - 0.5) < 1e-12);

    RandomStream rng(17);
    for (int i = 0; i < 1000; ++i) {
        const double t = 4 * kPi * (rng.uniform() - 0.5);
        CHECK(std::abs(cr_error_probability(t) - brute_cr_error(t)) < 1e-12);
        CHECK(std::abs(cr_error_probability(t) - std::pow(std::sin(3 * t), 2)) < 1e-12);
    }

    // The printed closed form is not a probability.
    CHECK(cr_error_probability_printed(kPi / 6) == doctest::Approx(1.5625).epsilon(1e-12));
    CHECK(cr_error_probability_printed(kPi / 6) > 1.0);
}

TEST_CASE("three_stage_exact") {
    const StageChannels none{};
    CHECK(three_stage_exact(Bit::Zero, 0.3, 1.4, none).mat.approx_equal(ComplexMat2::diag(1.0, 0.0), 1e-12));
    CHECK(three_stage_exact(Bit::One, 0.9, 2.2, none).mat.approx_equal(ComplexMat2::diag(0.0, 1.0), 1e-12));

    StageChannels middle{};
    middle[1].push_back(bit_flip(0.3));
    CHECK(prob_one(three_stage_exact(Bit::Zero, 0.0, 0.0, middle)) == doctest::Approx(0.3).epsilon(1e-12));

    StageChannels broken{};
    broken[0].push_back(KrausChannel{"broken", {ComplexMat2::diag(2.0, 1.0)}});
    CHECK_THROWS_AS(three_stage_exact(Bit::Zero, 0.1, 0.2, broken), InvalidChannel);

    SUBCASE("noiseless round trip over random angles") {
        RandomStream rng(19);
        for (int i = 0; i < 100; ++i) {
            const double a = 2 * kPi * rng.uniform();
            const double b = 2 * kPi * rng.uniform();
            CHECK(three_stage_exact(Bit::Zero, a, b, none).mat.approx_equal(ComplexMat2::diag(1.0, 0.0), 1e-12));
            CHECK(three_stage_exact(Bit::One, a, b, none).mat.approx_equal(ComplexMat2::diag(0.0, 1.0), 1e-12));
        }
    }

    SUBCASE("matches the independent evolution and stays a valid state") {
        RandomStream rng(23);
        for (int i = 0; i < 200; ++i) {
            const double p = rng.uniform();
            const double a = 2 * kPi * rng.uniform();
            const double b = 2 * kPi * rng.uniform();
            const std::array<int, 3> events{static_cast<int>(rng.uniform() * 3), static_cast<int>(rng.uniform() * 3),
                                            static_cast<int>(rng.uniform() * 3)};
            StageChannels stages{};
            for (std::size_t s = 0; s < 3; ++s)
                for (int e = 0; e < events[s]; ++e) stages[s].push_back(amplitude_damping(p));
            const Bit bit = i % 2 == 0 ? Bit::Zero : Bit::One;
            const auto rho = three_stage_exact(bit, a, b, stages);
            CHECK(rho.is_valid());
            CHECK(std::abs(prob_one(rho) - oracle::protocol_prob_one(to_int(bit), a, b, oracle::ad_ops(p), events)) <
                  1e-12);
        }
    }
}
