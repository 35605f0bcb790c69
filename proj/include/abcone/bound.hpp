#ifndef ABCONE_BOUND_HPP
#define ABCONE_BOUND_HPP

#include <functional>

#include "abcone/channel.hpp"

namespace abcone {

// Flux-tube regularization radius (length units), validated on construction.
// Converts implicitly from double so call sites stay plain.
struct RegularizedFlux {
    double r0;
    RegularizedFlux(double r) : r0(r) {
        if (!(r > 0.0)) throw DomainError("flux-tube radius must be positive");
    }
};

enum class Method { KsClosedForm, BgClosedForm, NumericalOracle };

// Boundary-condition parameter lambda (units r0^(2 nu)) for one channel,
// together with where it came from.
struct ExtensionParam {
    double lambda = 0.0;
    double nu = 0.0;
    bool infinite = false;  // the named lambda = infinity boundary case

    enum class Origin { Physical, UserSupplied };
    Origin origin = Origin::UserSupplied;
    double r0 = 0.0;             // set when Physical
    double coupling_ratio = 0.0; // set when Physical

    static ExtensionParam user(double lambda, double nu);
    static ExtensionParam dirichlet(double nu);      // lambda = 0
    static ExtensionParam infinite_flag(double nu);  // lambda = infinity
};

struct BoundState {
    EffectiveChannel channel;
    double energy;  // E_b < 0, units with hbar = c = 1 and explicit mass M
    Method method;
};

// Closed-form bound energy from the zero-energy matching of the regularized
// flux tube:  E_b = -(2/(M r0^2)) [ R Gamma(1+nu)/Gamma(1-nu) ]^(1/nu).
BoundState energy_ks(double M, RegularizedFlux flux, const ChannelParams& p);

// Physical extension parameter: 1/lambda = -(1/r0^(2 nu)) R.
ExtensionParam extension_param(RegularizedFlux flux, const ChannelParams& p);

// Closed-form bound energy from the boundary-condition parameter:
//   E_b = -(2/M) [ -(1/lambda) Gamma(1+nu)/Gamma(1-nu) ]^(1/nu).
BoundState energy_bg(double M, const ExtensionParam& ext);

// Independent numerical oracle: bisection root of the logarithmic-derivative
// matching relation, scanned over E in [-1e8, -1e-12]/(M r0^2).
BoundState energy_ks_oracle(double M, double r0, const ChannelParams& p);

// L^2(r dr)-normalized radial wavefunction r -> N K_nu(kappa r).
std::function<double(double)> bound_wavefunction(const BoundState& state,
                                                 double M);

}  // namespace abcone

#endif
