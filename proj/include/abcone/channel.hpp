#ifndef ABCONE_CHANNEL_HPP
#define ABCONE_CHANNEL_HPP

#include <vector>

#include "abcone/errors.hpp"

namespace abcone {

// Raw physical inputs: deficit parameter alpha in (0,1], flux phi (in units
// of the flux quantum), twice the spin s = +-1, orbital index m.
struct ChannelParams {
    double alpha = 1.0;
    double phi = 0.0;
    int s = 1;
    int m = 0;
};

// Per-channel derived data: signed effective momentum j = m + phi + (1-alpha)/2,
// effective order nu = |j|/alpha, delta coupling g = phi*s/alpha.
struct EffectiveChannel {
    double j;
    double nu;
    double g;
};

// Physical scenario, fixed by the sign of the delta coupling alone.
enum class Scenario { ScatteringOnly, BoundAndScattering, Degenerate };

// Throws DomainError unless alpha in (0,1] and s in {-1,+1}.
void validate(const ChannelParams& p);

EffectiveChannel effective_channel(const ChannelParams& p);

Scenario classify(const ChannelParams& p);

// The orbital indices whose effective order satisfies 0 < nu < 1: exactly the
// channels that admit a one-parameter family of boundary conditions.
// nu = 0 and nu = 1 resolve to the regular side (tolerance 1e-12).
std::vector<int> modified_channels(double alpha, double phi);

// True when the channel supports a bound state: phi*s <= -1 together with the
// realness condition (coupling ratio times gamma ratio positive) on a channel
// with 0 < nu < 1.
bool bound_existence(const ChannelParams& p);

// Coupling ratio R = (phi*s + |j|) / (phi*s - |j|).
// Throws SingularCoupling when phi*s equals |j| within 1e-12.
double coupling_ratio(const ChannelParams& p);

}  // namespace abcone

#endif
