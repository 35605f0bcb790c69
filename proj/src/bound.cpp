#include "abcone/bound.hpp"

#include <cmath>
#include <string>

#include "abcone/quadrature.hpp"
#include "abcone/specfun.hpp"

namespace abcone {

namespace {

constexpr double kBoundaryTol = 1e-12;

void require_modified(const EffectiveChannel& ch) {
    if (!(ch.nu > kBoundaryTol && ch.nu < 1.0 - kBoundaryTol))
        throw NoBoundState("channel has no self-adjoint extension (nu outside (0,1))");
}

}  // namespace

ExtensionParam ExtensionParam::user(double lambda, double nu) {
    ExtensionParam e;
    e.lambda = lambda;
    e.nu = nu;
    e.origin = Origin::UserSupplied;
    return e;
}

ExtensionParam ExtensionParam::dirichlet(double nu) { return user(0.0, nu); }

ExtensionParam ExtensionParam::infinite_flag(double nu) {
    ExtensionParam e = user(0.0, nu);
    e.infinite = true;
    return e;
}

BoundState energy_ks(double M, double r0, const ChannelParams& p) {
    if (!(M > 0.0) || !(r0 > 0.0))
        throw DomainError("energy_ks: M and r0 must be positive");
    const EffectiveChannel ch = effective_channel(p);
    require_modified(ch);
    if (p.phi * p.s > -1.0)
        throw NoBoundState("bound state requires phi*s <= -1");
    const double ratio = coupling_ratio(p);  // throws SingularCoupling
    const double inner = ratio * specfun::gamma_ratio_sym(ch.nu);
    if (!(inner > 0.0))
        throw NoBoundState("realness condition violated: R * gamma ratio <= 0");
    const double energy = -2.0 / (M * r0 * r0) * std::pow(inner, 1.0 / ch.nu);
    return {ch, energy, Method::KsClosedForm};
}

ExtensionParam extension_param(double r0, const ChannelParams& p) {
    if (!(r0 > 0.0)) throw DomainError("extension_param: r0 must be positive");
    const EffectiveChannel ch = effective_channel(p);
    if (!(ch.nu > kBoundaryTol && ch.nu < 1.0 - kBoundaryTol))
        throw DomainError("extension_param: nu must lie in (0,1)");
    const double ratio = coupling_ratio(p);  // throws SingularCoupling
    ExtensionParam e;
    e.nu = ch.nu;
    e.origin = ExtensionParam::Origin::Physical;
    e.r0 = r0;
    e.coupling_ratio = ratio;
    if (ratio == 0.0) {
        e.infinite = true;  // phi*s = -|j|: 1/lambda = 0
        return e;
    }
    e.lambda = -std::pow(r0, 2.0 * ch.nu) / ratio;
    return e;
}

BoundState energy_bg(double M, const ExtensionParam& ext) {
    if (!(M > 0.0)) throw DomainError("energy_bg: M must be positive");
    if (!(ext.nu > kBoundaryTol && ext.nu < 1.0 - kBoundaryTol))
        throw DomainError("energy_bg: nu must lie in (0,1)");
    if (ext.infinite || !(ext.lambda < 0.0))
        throw NoBoundState("energy_bg: bound state requires lambda < 0");
    const double inner = -1.0 / ext.lambda * specfun::gamma_ratio_sym(ext.nu);
    const double energy = -2.0 / M * std::pow(inner, 1.0 / ext.nu);
    EffectiveChannel ch{0.0, ext.nu, 0.0};  // only nu is known here
    return {ch, energy, Method::BgClosedForm};
}

BoundState energy_ks_oracle(double M, double r0, const ChannelParams& p) {
    if (!(M > 0.0) || !(r0 > 0.0))
        throw DomainError("energy_ks_oracle: M and r0 must be positive");
    const EffectiveChannel ch = effective_channel(p);
    require_modified(ch);
    const double nu = ch.nu;
    const double gp = specfun::gamma_value(1.0 + nu);
    const double gm = specfun::gamma_value(1.0 - nu);
    const double r02nu = std::pow(r0, 2.0 * nu);
    const double two_nu = std::pow(2.0, nu);
    const double rhs = p.phi * p.s / p.alpha;

    // Difference of the two sides of the log-derivative matching relation.
    auto f = [&](double energy) {
        const double x = std::pow(-M * energy, nu);
        const double num = nu * (r02nu * gm * x + two_nu * gp);
        const double den = r02nu * gm * x - two_nu * gp;
        return num / den - rhs;
    };

    // Scan |E| upward on a log grid; the first + -> - transition brackets the
    // single root on the monotone branch below the denominator pole.
    const double scale = 1.0 / (M * r0 * r0);
    const double e_min = 1e-12 * scale;
    const double e_max = 1e8 * scale;
    const int points_per_decade = 64;
    const double step = std::pow(10.0, 1.0 / points_per_decade);

    double prev_e = -e_min;
    double prev_f = f(prev_e);
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (double mag = e_min * step; mag <= e_max * step; mag *= step) {
        const double cur_e = -mag;
        const double cur_f = f(cur_e);
        if (prev_f > 0.0 && cur_f <= 0.0) {
            lo = prev_e;
            hi = cur_e;
            bracketed = true;
            break;
        }
        prev_e = cur_e;
        prev_f = cur_f;
    }
    if (!bracketed)
        throw BracketError("energy_ks_oracle: no sign change in the scan window");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
        if (std::abs(hi - lo) <= 1e-12 * std::abs(hi)) break;
    }
    return {ch, 0.5 * (lo + hi), Method::NumericalOracle};
}

std::function<double(double)> bound_wavefunction(const BoundState& state,
                                                 double M) {
    if (!(state.energy < 0.0))
        throw DomainError("bound_wavefunction: energy must be negative");
    if (!(M > 0.0)) throw DomainError("bound_wavefunction: M must be positive");
    const double nu = state.channel.nu;
    const double kappa = std::sqrt(-2.0 * M * state.energy);
    // integral of K_nu(kappa r)^2 r dr = (1/kappa^2) int K_nu(u)^2 u du
    const double u_cut = 46.0;
    const double integral = quadrature::tanh_sinh(
        [nu](double u) {
            const double k = specfun::bessel_k(nu, u);
            return k * k * u;
        },
        0.0, u_cut, 1e-12);
    const double norm = 1.0 / std::sqrt(integral / (kappa * kappa));
    return [norm, nu, kappa](double r) {
        return norm * specfun::bessel_k(nu, kappa * r);
    };
}

}  // namespace abcone
