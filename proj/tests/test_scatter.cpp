#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "abcone/scatter.hpp"

using namespace abcone;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

std::map<int, ExtensionParam> physical_ext_map(double alpha, double phi,
                                               int s, double r0) {
    std::map<int, ExtensionParam> out;
    for (int m : modified_channels(alpha, phi))
        out.emplace(m, extension_param(r0, {alpha, phi, s, m}));
    return out;
}

}  // namespace

TEST_CASE("ab_phase: direct arithmetic") {
    CHECK(ab_phase(0, 0.0) == 0.0);
    CHECK(ab_phase(0, 0.5) == doctest::Approx(-kPi / 4.0).epsilon(1e-15));
    CHECK(ab_phase(-1, 0.5) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
}

TEST_CASE("mu: limits and hand values") {
    // lambda = 0 gives mu = 0 for any k
    for (double k : {0.01, 1.0, 7.0})
        CHECK(mu(ExtensionParam::dirichlet(0.3), k) == 0.0);

    // nu = 1/2: cos(pi nu) = 0 and the formula collapses to mu = lambda k
    for (double k : {0.2, 0.5, 2.0}) {
        CHECK(rel_err(mu(ExtensionParam::user(-2.0, 0.5), k), -2.0 * k) < 1e-13);
        CHECK(rel_err(mu(ExtensionParam::user(0.7, 0.5), k), 0.7 * k) < 1e-13);
    }

    // |lambda| -> infinity limit is tan(pi nu)
    for (double nu : {0.2, 0.7}) {
        const double big = mu(ExtensionParam::user(-1e13, nu), 1.3);
        CHECK(rel_err(big, std::tan(kPi * nu)) < 1e-9);
        CHECK(rel_err(mu(ExtensionParam::infinite_flag(nu), 1.3),
                      std::tan(kPi * nu)) < 1e-15);
    }

    // frozen high-precision value (lambda=-2, nu=0.3, k=0.7)
    CHECK(rel_err(mu(ExtensionParam::user(-2.0, 0.3), 0.7),
                  -13.21232103059892981) < 1e-12);
}

TEST_CASE("mu: pole detection and continued phase shift") {
    // lambda < 0, nu < 1/2: a real pole wavenumber exists
    const ExtensionParam ext = ExtensionParam::user(-2.0, 0.3);
    const double kp = mu_pole_wavenumber(ext);
    CHECK(kp > 0.0);
    CHECK_THROWS_AS(mu(ext, kp), PoleAtK);
    CHECK_NOTHROW(mu(ext, kp * 1.01));

    // delta(k) stays continuous across the pole
    const ChannelParams p{1.0, -1.7, 1, 2};  // j = 0.3 -> nu = 0.3
    const ExtensionParam pe = ExtensionParam::user(-2.0, 0.3);
    const double below = phase_shift(pe, p, kp * (1.0 - 1e-7));
    const double above = phase_shift(pe, p, kp * (1.0 + 1e-7));
    CHECK(std::abs(below - above) < 1e-4);

    // no pole for lambda = 0 / infinite / wrong sign combinations
    CHECK(mu_pole_wavenumber(ExtensionParam::dirichlet(0.3)) == 0.0);
    CHECK(mu_pole_wavenumber(ExtensionParam::user(2.0, 0.3)) == 0.0);
    CHECK(mu_pole_wavenumber(ExtensionParam::user(-2.0, 0.7)) == 0.0);
    CHECK(mu_pole_wavenumber(ExtensionParam::user(2.0, 0.7)) > 0.0);
}

TEST_CASE("phase_shift: Dirichlet case, hand value, low-energy limit") {
    const ChannelParams p{1.0, -1.5, 1, 1};  // worked channel, nu = 1/2
    const double delta0 = phase_shift(ExtensionParam::dirichlet(0.5), p, 0.7);
    CHECK(delta0 == doctest::Approx(ab_phase(1, -1.5)).epsilon(1e-15));

    const ExtensionParam ext = ExtensionParam::user(-2.0, 0.5);
    const double d = phase_shift(ext, p, 0.5);
    CHECK(rel_err(d - ab_phase(1, -1.5), -kPi / 4.0) < 1e-12);

    // k -> 0+ with finite lambda: mu -> 0 and delta -> Delta_AB
    const double d_small = phase_shift(ext, p, 1e-9);
    CHECK(std::abs(d_small - ab_phase(1, -1.5)) < 1e-8);
}

TEST_CASE("s_element: named limits") {
    const ChannelParams p{1.0, -1.5, 1, 1};
    const double delta_ab = ab_phase(1, -1.5);

    // lambda = 0: S = e^{2i Delta_AB} with no floating drift
    for (double k : {1e-3, 0.3, 5.0}) {
        const auto s0 = s_element(ExtensionParam::dirichlet(0.5), p, k);
        CHECK(std::abs(std::arg(s0) - std::remainder(2.0 * delta_ab, 2.0 * kPi)) <
              1e-15);
    }
    // lambda = infinity flag: S = e^{2i(Delta_AB + pi nu)}
    const auto sinf = s_element(ExtensionParam::infinite_flag(0.5), p, 0.8);
    const double want = std::remainder(2.0 * (delta_ab + kPi * 0.5), 2.0 * kPi);
    CHECK(std::abs(std::remainder(std::arg(sinf) - want, 2.0 * kPi)) < 1e-13);
}

TEST_CASE("unitarity over the full grid") {
    std::vector<ExtensionParam> exts;
    for (double nu = 0.1; nu < 0.95; nu += 0.1) {
        for (double lam : {-10.0, -5.0, -2.0, -0.5, 0.0, 0.5, 2.0, 5.0, 10.0})
            exts.push_back(ExtensionParam::user(lam, nu));
        exts.push_back(ExtensionParam::infinite_flag(nu));
    }
    double worst = 0.0;
    for (const auto& ext : exts) {
        for (int i = 0; i < 20; ++i) {
            const double k = 1e-3 * std::pow(1e4, i / 19.0);
            const double m = std::abs(std::abs(s_ratio(ext, k)) - 1.0);
            worst = std::max(worst, m);
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("two-form agreement of the S matrix") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> ulam(-10.0, 10.0), unu(0.05, 0.95),
        uk(0.01, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const ExtensionParam ext = ExtensionParam::user(ulam(rng), unu(rng));
        const double k = uk(rng);
        const std::complex<double> a = s_ratio(ext, k);
        const double m = mu(ext, k);
        const std::complex<double> b =
            std::complex<double>(1.0, m) / std::complex<double>(1.0, -m);
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("pole-bound duality") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> ulam(-10.0, -0.1), unu(0.05, 0.95),
        uM(0.2, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double nu = unu(rng);
        const double lam = ulam(rng);
        const double M = uM(rng);
        const ExtensionParam ext = ExtensionParam::user(lam, nu);
        const auto poles = s_pole_energies(ext, M, 1e6);
        REQUIRE(poles.size() == 1);
        const double e_bg = energy_bg(M, ext).energy;
        CHECK(rel_err(poles[0], e_bg) < 1e-8);
    }
    // lambda > 0 and the infinite flag yield no poles
    CHECK(s_pole_energies(ExtensionParam::user(3.0, 0.4), 1.0, 1e6).empty());
    CHECK(s_pole_energies(ExtensionParam::infinite_flag(0.4), 1.0, 1e6).empty());

    // worked value: lambda = -1, nu = 1/2, M = 1 -> single pole at E = -1/2
    const auto p = s_pole_energies(ExtensionParam::user(-1.0, 0.5), 1.0, 1e3);
    REQUIRE(p.size() == 1);
    CHECK(rel_err(p[0], -0.5) < 1e-10);
}

TEST_CASE("amplitude: flat fluxless space gives exactly zero") {
    for (double k : {0.2, 1.0, 3.0}) {
        for (double th : {-2.5, -0.6, 0.9, 2.9}) {
            const auto res = amplitude({k, th, 2000, 1.0 - 1e-4}, 1.0, 0.0, 1, {});
            CHECK(std::abs(res.f) == 0.0);
        }
    }
}

TEST_CASE("amplitude: mu = 0 reduces the modified terms to pure AB") {
    const double alpha = 1.0, phi = -1.5;
    std::map<int, ExtensionParam> dirichlet;
    for (int m : modified_channels(alpha, phi))
        dirichlet.emplace(
            m, ExtensionParam::dirichlet(
                   effective_channel({alpha, phi, 1, m}).nu));
    const AmplitudeRequest req{1.3, 1.1, 2000, 1.0 - 1e-4};
    const auto a = amplitude(req, alpha, phi, 1, dirichlet);
    // independent sum: every channel treated as pure AB background
    std::complex<double> sum{0.0, 0.0};
    for (int m = -req.m_max; m <= req.m_max; ++m) {
        const bool is_mod = effective_channel({alpha, phi, 1, m}).nu < 1.0 &&
                            effective_channel({alpha, phi, 1, m}).nu > 0.0;
        const double t = is_mod ? 1.0 : std::pow(req.smoothing, std::abs(m));
        sum += (std::polar(1.0, 2.0 * ab_phase(m, phi)) - 1.0) * t *
               std::polar(1.0, m * req.theta_sc);
    }
    const std::complex<double> want =
        std::polar(1.0 / std::sqrt(2.0 * kPi * req.k), -0.25 * kPi) * sum;
    CHECK(std::abs(a.f - want) < 1e-13 * std::abs(want));
}

TEST_CASE("amplitude: smoothing consistency away from the forward direction") {
    // m_max large enough that t^m_max is negligible for both factors,
    // isolating the Abel-smoothing sensitivity from the truncation
    const double alpha = 0.8, phi = -1.3;
    const auto ext = physical_ext_map(alpha, phi, 1, 0.5);
    for (double th : {1.6, 2.2, 2.8}) {
        const auto a = amplitude({1.0, th, 200000, 1.0 - 1e-3}, alpha, phi, 1, ext);
        const auto b = amplitude({1.0, th, 200000, 1.0 - 1e-4}, alpha, phi, 1, ext);
        CHECK(std::abs(a.f - b.f) < 1e-3 * std::abs(b.f));
    }
    // at the spec defaults the last ring still matters and says so
    const auto d = amplitude({1.0, 1.6, 2000, 1.0 - 1e-4}, alpha, phi, 1, ext);
    CHECK(d.truncation_warning);
}

TEST_CASE("amplitude: helicity-nonconservation witness in the k dependence") {
    // for lambda != 0 the combination |f| sqrt(k) must depend on k
    const double alpha = 1.0, phi = -1.5, th = 2.0;
    const auto ext = physical_ext_map(alpha, phi, 1, 1.0);
    const auto f1 = amplitude({0.5, th, 2000, 1.0 - 1e-4}, alpha, phi, 1, ext);
    const auto f2 = amplitude({2.0, th, 2000, 1.0 - 1e-4}, alpha, phi, 1, ext);
    const double a1 = std::abs(f1.f) * std::sqrt(0.5);
    const double a2 = std::abs(f2.f) * std::sqrt(2.0);
    CHECK(std::abs(a1 - a2) > 1e-3 * std::max(a1, a2));

    // the pure AB background (lambda = 0) has no such dependence
    std::map<int, ExtensionParam> dir;
    for (int m : modified_channels(alpha, phi))
        dir.emplace(m, ExtensionParam::dirichlet(
                           effective_channel({alpha, phi, 1, m}).nu));
    const auto g1 = amplitude({0.5, th, 2000, 1.0 - 1e-4}, alpha, phi, 1, dir);
    const auto g2 = amplitude({2.0, th, 2000, 1.0 - 1e-4}, alpha, phi, 1, dir);
    const double b1 = std::abs(g1.f) * std::sqrt(0.5);
    const double b2 = std::abs(g2.f) * std::sqrt(2.0);
    CHECK(std::abs(b1 - b2) < 1e-6 * std::max(b1, b2));
}

TEST_CASE("diff_cross_section: conjugation symmetry at alpha = 1") {
    const double phi = -1.5;
    const auto ext_p = physical_ext_map(1.0, phi, 1, 0.7);
    const auto ext_m = physical_ext_map(1.0, -phi, -1, 0.7);
    for (double th : {0.4, 1.2, 2.1}) {
        const double d1 = diff_cross_section({1.1, th, 2000, 1.0 - 1e-4},
                                             1.0, phi, 1, ext_p);
        const double d2 = diff_cross_section({1.1, -th, 2000, 1.0 - 1e-4},
                                             1.0, -phi, -1, ext_m);
        CHECK(rel_err(d2, d1) < 1e-10);
    }
    const double dd = diff_cross_section({1.0, 0.9, 2000, 1.0 - 1e-4},
                                         1.0, 0.0, 1, {});
    CHECK(dd == 0.0);

    // definition check: |f|^2 recomposed from the real and imaginary parts
    const AmplitudeRequest req{1.1, 0.8, 2000, 1.0 - 1e-4};
    const auto a = amplitude(req, 1.0, phi, 1, ext_p);
    const double want = a.f.real() * a.f.real() + a.f.imag() * a.f.imag();
    CHECK(rel_err(diff_cross_section(req, 1.0, phi, 1, ext_p), want) < 1e-15);
}

TEST_CASE("amplitude: request validation and warnings") {
    const double alpha = 1.0, phi = -1.5;
    const auto ext = physical_ext_map(alpha, phi, 1, 1.0);
    CHECK_THROWS_AS(amplitude({1.0, 1.0, 4, 1.0 - 1e-4}, alpha, phi, 1, ext),
                    DomainError);
    CHECK_THROWS_AS(amplitude({1.0, 1.0, 2000, 0.0}, alpha, phi, 1, ext),
                    DomainError);
    CHECK_THROWS_AS(amplitude({1.0, 1.0, 2000, 1.0 - 1e-4}, alpha, phi, 1, {}),
                    DomainError);
    const auto fwd = amplitude({1.0, 0.01, 2000, 1.0 - 1e-4}, alpha, phi, 1, ext);
    CHECK(fwd.forward_unreliable);
    // a tiny cutoff with no smoothing leaves a visibly contributing last ring
    const auto trunc = amplitude({1.0, 1.0, 8, 1.0}, alpha, phi, 1, ext);
    CHECK(trunc.truncation_warning);
}

TEST_CASE("scatter_record marks the pole instead of throwing") {
    const ChannelParams p{1.0, -1.7, 1, 2};  // nu = 0.3
    const ExtensionParam ext = ExtensionParam::user(-2.0, 0.3);
    const double kp = mu_pole_wavenumber(ext);
    const auto rec = scatter_record(ext, p, kp);
    CHECK(rec.at_pole);
    CHECK(std::isnan(rec.mu));
    CHECK(std::abs(std::abs(rec.s_element) - 1.0) < 1e-12);
    const auto ok = scatter_record(ext, p, kp * 2.0);
    CHECK_FALSE(ok.at_pole);
    CHECK(std::isfinite(ok.delta));
}
