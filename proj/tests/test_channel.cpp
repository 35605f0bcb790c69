#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "abcone/channel.hpp"

using namespace abcone;

TEST_CASE("effective_channel: direct arithmetic") {
    auto c1 = effective_channel({1.0, 0.0, 1, 1});
    CHECK(c1.j == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c1.nu == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c1.g == 0.0);

    auto c2 = effective_channel({1.0, 0.5, 1, 0});
    CHECK(c2.j == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c2.nu == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c2.g == doctest::Approx(0.5).epsilon(1e-15));

    auto c3 = effective_channel({0.5, 0.25, -1, 0});
    CHECK(c3.j == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c3.nu == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c3.g == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("classify follows the sign of the delta coupling") {
    CHECK(classify({0.8, 0.7, 1, 0}) == Scenario::ScatteringOnly);
    CHECK(classify({0.8, 0.7, -1, 0}) == Scenario::BoundAndScattering);
    CHECK(classify({0.8, -0.7, -1, 0}) == Scenario::ScatteringOnly);
    CHECK(classify({0.8, -0.7, 1, 0}) == Scenario::BoundAndScattering);
    CHECK(classify({1.0, 0.0, 1, 3}) == Scenario::Degenerate);

    // depends only on sign(phi*s) for any alpha > 0
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ua(0.05, 1.0), uphi(0.01, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = ua(rng);
        const double phi = uphi(rng);
        const int s = (i % 2 == 0) ? 1 : -1;
        // phi * s > 0 in the first case, < 0 in the second, for either s
        const Scenario got = classify({alpha, phi * s, s, 0});
        CHECK(got == Scenario::ScatteringOnly);
        const Scenario got2 = classify({alpha, -phi * s, s, 0});
        CHECK(got2 == Scenario::BoundAndScattering);
    }
}

TEST_CASE("modified_channels: enumeration and boundary exclusions") {
    CHECK(modified_channels(1.0, 0.5) == std::vector<int>{-1, 0});
    CHECK(modified_channels(1.0, 0.0).empty());
    CHECK(modified_channels(0.9, 0.2) == std::vector<int>{-1, 0});
}

TEST_CASE("modified_channels: window property") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.05, 1.0), uphi(-6.0, 6.0);
    for (int trial = 0; trial < 300; ++trial) {
        const double alpha = ua(rng);
        const double phi = uphi(rng);
        const auto ms = modified_channels(alpha, phi);
        const int limit = static_cast<int>(std::ceil(2.0 * alpha)) + 1;
        CHECK(static_cast<int>(ms.size()) <= limit);
        for (size_t i = 1; i < ms.size(); ++i) CHECK(ms[i - 1] < ms[i]);
        for (int m : ms) {
            const double nu = effective_channel({alpha, phi, 1, m}).nu;
            CHECK(nu > 0.0);
            CHECK(nu < 1.0);
        }
        const int lo = ms.empty() ? static_cast<int>(std::round(-phi)) - 5
                                  : ms.front() - 5;
        const int hi = ms.empty() ? lo + 10 : ms.back() + 5;
        for (int m = lo; m <= hi; ++m) {
            if (std::find(ms.begin(), ms.end(), m) != ms.end()) continue;
            const double nu = effective_channel({alpha, phi, 1, m}).nu;
            CHECK((nu <= 1e-12 || nu >= 1.0 - 1e-12));
        }
    }
}

TEST_CASE("gauge shift (m -> m-1, phi -> phi+1) leaves j and nu unchanged") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ua(0.05, 1.0), uphi(-4.0, 4.0);
    std::uniform_int_distribution<int> um(-5, 5);
    for (int trial = 0; trial < 300; ++trial) {
        ChannelParams p{ua(rng), uphi(rng), trial % 2 ? 1 : -1, um(rng)};
        ChannelParams q{p.alpha, p.phi + 1.0, p.s, p.m - 1};
        const auto a = effective_channel(p);
        const auto b = effective_channel(q);
        CHECK(std::abs(a.j - b.j) <= 1e-14 * (1.0 + std::abs(a.j)));
        CHECK(std::abs(a.nu - b.nu) <= 1e-14 * (1.0 + a.nu));
    }
}

TEST_CASE("bound_existence") {
    // worked channel: R = (-1.5+0.5)/(-1.5-0.5) = 0.5 > 0
    CHECK(bound_existence({1.0, -1.5, 1, 1}));
    CHECK_FALSE(bound_existence({1.0, 0.5, 1, 0}));  // phi*s = 0.5 > -1
    // boundary phi*s = -1 on a channel with nu in (0,1)
    CHECK(bound_existence({0.8, -1.0, 1, 1}));
    // nu outside (0,1): no extension, no bound state (here nu = 1.5)
    CHECK_FALSE(bound_existence({1.0, -1.5, 1, 0}));
}

TEST_CASE("validate rejects unphysical parameters") {
    CHECK_THROWS_AS(validate({1.5, 0.0, 1, 0}), DomainError);
    CHECK_THROWS_AS(validate({0.0, 0.0, 1, 0}), DomainError);
    CHECK_THROWS_AS(validate({0.5, 0.0, 2, 0}), DomainError);
    CHECK_NOTHROW(validate({1.0, -3.2, -1, 4}));
}

TEST_CASE("coupling_ratio: worked value and singular case") {
    CHECK(coupling_ratio({1.0, -1.5, 1, 1}) == doctest::Approx(0.5).epsilon(1e-14));
    // phi*s = |j|: alpha=1, m=0, phi=0.25, s=1 -> j=0.25, phi*s=0.25
    CHECK_THROWS_AS(coupling_ratio({1.0, 0.25, 1, 0}), SingularCoupling);
}
