#include "abcone/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abcone/specfun.hpp"

namespace abcone {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_ext(const ExtensionParam& ext) {
    if (!(ext.nu > 0.0 && ext.nu < 1.0))
        throw DomainError("extension parameter must carry nu in (0,1)");
}

void check_consistency(const ExtensionParam& ext, const ChannelParams& p) {
    const double nu = effective_channel(p).nu;
    if (std::abs(nu - ext.nu) > 1e-9 * (1.0 + nu))
        throw DomainError("extension parameter does not match the channel");
}

}  // namespace

double ab_phase(int m, double phi) {
    return 0.5 * kPi * (std::abs(static_cast<double>(m)) - std::abs(m + phi));
}

double mu(const ExtensionParam& ext, double k) {
    check_ext(ext);
    if (!(k > 0.0)) throw DomainError("mu: k must be positive");
    const double nu = ext.nu;
    if (ext.infinite) return std::tan(kPi * nu);
    if (ext.lambda == 0.0) return 0.0;
    const double gm = specfun::gamma_value(1.0 - nu);
    const double gp = specfun::gamma_value(1.0 + nu);
    const double lk = ext.lambda * std::pow(k, 2.0 * nu) * gm;
    const double den = lk * std::cos(kPi * nu) + std::pow(4.0, nu) * gp;
    const double scale =
        std::abs(lk * std::cos(kPi * nu)) + std::pow(4.0, nu) * gp;
    if (std::abs(den) < 1e-14 * scale)
        throw PoleAtK("mu: wavenumber sits on the resonance pole");
    return lk * std::sin(kPi * nu) / den;
}

double mu_pole_wavenumber(const ExtensionParam& ext) {
    check_ext(ext);
    if (ext.infinite || ext.lambda == 0.0) return 0.0;
    const double nu = ext.nu;
    const double c = std::cos(kPi * nu);
    if (ext.lambda * c >= 0.0) return 0.0;  // denominator never vanishes
    const double gm = specfun::gamma_value(1.0 - nu);
    const double gp = specfun::gamma_value(1.0 + nu);
    const double k2nu = -std::pow(4.0, nu) * gp / (ext.lambda * gm * c);
    return std::pow(k2nu, 0.5 / nu);
}

double phase_shift(const ExtensionParam& ext, const ChannelParams& p,
                   double k) {
    check_consistency(ext, p);
    double delta = ab_phase(p.m, p.phi) + std::atan(mu(ext, k));
    const double k_pole = mu_pole_wavenumber(ext);
    if (k_pole > 0.0 && k > k_pole)
        delta += (ext.lambda > 0.0 ? kPi : -kPi);
    return delta;
}

std::complex<double> s_ratio(const ExtensionParam& ext, double k) {
    check_ext(ext);
    if (!(k > 0.0)) throw DomainError("s_ratio: k must be positive");
    const double nu = ext.nu;
    if (ext.infinite) return std::polar(1.0, 2.0 * kPi * nu);
    if (ext.lambda == 0.0) return {1.0, 0.0};
    const double gm = specfun::gamma_value(1.0 - nu);
    const double gp = specfun::gamma_value(1.0 + nu);
    const double lk = ext.lambda * std::pow(k, 2.0 * nu) * gm;
    const double c4 = std::pow(4.0, nu) * gp;
    const std::complex<double> num = lk * std::polar(1.0, kPi * nu) + c4;
    const std::complex<double> den = lk * std::polar(1.0, -kPi * nu) + c4;
    return num / den;
}

std::complex<double> s_element(const ExtensionParam& ext,
                               const ChannelParams& p, double k) {
    check_consistency(ext, p);
    return std::polar(1.0, 2.0 * ab_phase(p.m, p.phi)) * s_ratio(ext, k);
}

ScatterRecord scatter_record(const ExtensionParam& ext, const ChannelParams& p,
                             double k) {
    ScatterRecord rec;
    rec.k = k;
    rec.channel = effective_channel(p);
    rec.s_element = s_element(ext, p, k);
    try {
        rec.mu = mu(ext, k);
        rec.delta = phase_shift(ext, p, k);
    } catch (const PoleAtK&) {
        rec.mu = std::numeric_limits<double>::quiet_NaN();
        rec.delta = std::numeric_limits<double>::quiet_NaN();
        rec.at_pole = true;
    }
    return rec;
}

std::vector<double> s_pole_energies(const ExtensionParam& ext, double M,
                                    double kappa_max) {
    check_ext(ext);
    if (!(M > 0.0) || !(kappa_max > 0.0))
        throw DomainError("s_pole_energies: M and kappa_max must be positive");
    if (ext.infinite || ext.lambda >= 0.0) return {};

    const double nu = ext.nu;
    const double gm = specfun::gamma_value(1.0 - nu);
    const double gp = specfun::gamma_value(1.0 + nu);
    // (i kappa)^(2 nu) e^(-i pi nu) = kappa^(2 nu): the phases cancel and the
    // pole condition reduces to a real equation, monotone in kappa.
    auto h = [&](double kappa) {
        return ext.lambda * std::pow(kappa, 2.0 * nu) * gm +
               std::pow(4.0, nu) * gp;
    };
    double lo = 1e-150;
    if (!(h(lo) > 0.0) || !(h(kappa_max) < 0.0)) return {};
    double log_lo = std::log(lo), log_hi = std::log(kappa_max);
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (h(std::exp(mid)) > 0.0)
            log_lo = mid;
        else
            log_hi = mid;
        if (log_hi - log_lo < 1e-13) break;
    }
    const double kappa = std::exp(0.5 * (log_lo + log_hi));
    return {-kappa * kappa / (2.0 * M)};
}

AmplitudeResult amplitude(const AmplitudeRequest& req, double alpha,
                          double phi, int s,
                          const std::map<int, ExtensionParam>& ext_map) {
    validate(ChannelParams{alpha, phi, s, 0});
    if (!(req.k > 0.0)) throw DomainError("amplitude: k must be positive");
    if (!(req.smoothing > 0.0 && req.smoothing <= 1.0))
        throw DomainError("amplitude: smoothing must lie in (0,1]");
    const auto modified = modified_channels(alpha, phi);
    int need = 0;
    for (int m : modified) need = std::max(need, std::abs(m));
    if (req.m_max < need + 5)
        throw DomainError("amplitude: m_max must exceed the modified set by 5");
    for (int m : modified)
        if (!ext_map.count(m))
            throw DomainError("amplitude: ext_map missing modified channel m=" +
                              std::to_string(m));

    std::complex<double> sum{0.0, 0.0};
    std::complex<double> last_ring{0.0, 0.0};
    for (int m = -req.m_max; m <= req.m_max; ++m) {
        const bool is_modified =
            std::find(modified.begin(), modified.end(), m) != modified.end();
        const std::complex<double> angular = std::polar(1.0, m * req.theta_sc);
        std::complex<double> term;
        if (is_modified) {
            const double mu_m = mu(ext_map.at(m), req.k);
            const std::complex<double> ratio =
                std::complex<double>(1.0, mu_m) /
                std::complex<double>(1.0, -mu_m);
            term = (std::polar(1.0, 2.0 * ab_phase(m, phi)) * ratio - 1.0) *
                   angular;
        } else {
            const std::complex<double> s_bg =
                std::polar(1.0, 2.0 * ab_phase(m, phi));
            term = (s_bg - 1.0) * std::pow(req.smoothing, std::abs(m)) * angular;
        }
        sum += term;
        if (std::abs(m) == req.m_max) last_ring += term;
    }

    AmplitudeResult out;
    // (2 pi i k)^(-1/2) with the principal branch: e^(-i pi/4)/sqrt(2 pi k)
    out.f = std::polar(1.0 / std::sqrt(2.0 * kPi * req.k), -0.25 * kPi) * sum;
    const double fmag = std::abs(out.f);
    const double ring =
        std::abs(last_ring) / std::sqrt(2.0 * kPi * req.k);
    out.truncation_warning = fmag > 0.0 && ring > 1e-6 * fmag;
    out.forward_unreliable =
        std::abs(std::remainder(req.theta_sc, 2.0 * kPi)) < 0.05;
    return out;
}

double diff_cross_section(const AmplitudeRequest& req, double alpha,
                          double phi, int s,
                          const std::map<int, ExtensionParam>& ext_map) {
    return std::norm(amplitude(req, alpha, phi, s, ext_map).f);
}

}  // namespace abcone
