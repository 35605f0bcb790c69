#include "abcone/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abcone/specfun.hpp"

namespace abcone {

namespace {
constexpr double kBoundaryTol = 1e-12;
}

void validate(const ChannelParams& p) {
    if (!(p.alpha > 0.0 && p.alpha <= 1.0))
        throw DomainError("alpha must lie in (0, 1]");
    if (p.s != 1 && p.s != -1) throw DomainError("spin s must be +1 or -1");
    if (!std::isfinite(p.phi)) throw DomainError("phi must be finite");
}

EffectiveChannel effective_channel(const ChannelParams& p) {
    validate(p);
    const double j = p.m + p.phi + 0.5 * (1.0 - p.alpha);
    return {j, std::abs(j) / p.alpha, p.phi * p.s / p.alpha};
}

Scenario classify(const ChannelParams& p) {
    validate(p);
    const double g = p.phi * p.s / p.alpha;
    if (g > 0.0) return Scenario::ScatteringOnly;
    if (g < 0.0) return Scenario::BoundAndScattering;
    return Scenario::Degenerate;
}

std::vector<int> modified_channels(double alpha, double phi) {
    ChannelParams probe{alpha, phi, 1, 0};
    validate(probe);
    // 0 < |m + phi + (1-alpha)/2| < alpha, i.e. m in (c - alpha, c + alpha)
    const double c = -phi - 0.5 * (1.0 - alpha);
    const int lo = static_cast<int>(std::ceil(c - alpha)) - 1;
    const int hi = static_cast<int>(std::floor(c + alpha)) + 1;
    std::vector<int> out;
    for (int m = lo; m <= hi; ++m) {
        probe.m = m;
        const double nu = effective_channel(probe).nu;
        if (nu > kBoundaryTol && nu < 1.0 - kBoundaryTol) out.push_back(m);
    }
    return out;
}

double coupling_ratio(const ChannelParams& p) {
    const EffectiveChannel ch = effective_channel(p);
    const double fs = p.phi * p.s;
    const double aj = std::abs(ch.j);
    if (std::abs(fs - aj) <= kBoundaryTol * std::max(1.0, std::abs(fs)))
        throw SingularCoupling("phi*s equals |j|: coupling ratio is singular");
    return (fs + aj) / (fs - aj);
}

bool bound_existence(const ChannelParams& p) {
    const EffectiveChannel ch = effective_channel(p);
    if (p.phi * p.s > -1.0) return false;
    if (!(ch.nu > kBoundaryTol && ch.nu < 1.0 - kBoundaryTol)) return false;
    double ratio;
    try {
        ratio = coupling_ratio(p);
    } catch (const SingularCoupling&) {
        return false;
    }
    return ratio * specfun::gamma_ratio_sym(ch.nu) > 0.0;
}

}  // namespace abcone
