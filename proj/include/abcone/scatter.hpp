#ifndef ABCONE_SCATTER_HPP
#define ABCONE_SCATTER_HPP

#include <complex>
#include <map>
#include <vector>

#include "abcone/bound.hpp"
#include "abcone/channel.hpp"

namespace abcone {

// One scattering data point for a single channel.
struct ScatterRecord {
    double k;
    EffectiveChannel channel;
    double mu;
    double delta;  // radians, branch continued across the mu pole
    std::complex<double> s_element;
    bool at_pole = false;
};

// Pure Aharonov-Bohm phase shift (pi/2)(|m| - |m + phi|).
double ab_phase(int m, double phi);

// mu = lambda k^(2 nu) Gamma(1-nu) sin(pi nu)
//      / [lambda k^(2 nu) Gamma(1-nu) cos(pi nu) + 4^nu Gamma(1+nu)].
// Throws PoleAtK within 1e-14 of the denominator zero. The infinite-lambda
// flag gives the k-independent limit tan(pi nu).
double mu(const ExtensionParam& ext, double k);

// Wavenumber of the mu pole, or 0 when no pole exists for this channel.
double mu_pole_wavenumber(const ExtensionParam& ext);

// delta = Delta_AB(m, phi) + arctan(mu), continued by +-pi past the mu pole
// so that delta(k) is continuous.
double phase_shift(const ExtensionParam& ext, const ChannelParams& p, double k);

// Unit-modulus scattering factor (1 + i mu)/(1 - i mu), evaluated through the
// pole-safe gamma-ratio form.
std::complex<double> s_ratio(const ExtensionParam& ext, double k);

// Full S-matrix element e^(2i Delta_AB) * s_ratio.
std::complex<double> s_element(const ExtensionParam& ext,
                               const ChannelParams& p, double k);

// Record assembly; marks at_pole (with null mu/delta) instead of throwing.
ScatterRecord scatter_record(const ExtensionParam& ext, const ChannelParams& p,
                             double k);

// Bound-state energies from S-matrix poles on the positive imaginary k axis,
// located by bisection of lambda kappa^(2 nu) Gamma(1-nu) + 4^nu Gamma(1+nu).
// Empty for lambda >= 0.
std::vector<double> s_pole_energies(const ExtensionParam& ext, double M,
                                    double kappa_max);

struct AmplitudeRequest {
    double k;
    double theta_sc;             // scattering angle, radians
    int m_max = 2000;            // truncation of the regular partial-wave sum
    double smoothing = 1.0 - 1e-4;  // Abel factor t^{|m|}
};

struct AmplitudeResult {
    std::complex<double> f;
    bool truncation_warning = false;   // last ring contributes > 1e-6 of |f|
    bool forward_unreliable = false;   // |theta_sc| < 0.05 rad
};

// Partial-wave scattering amplitude: Abel-smoothed truncated sum over the
// regular channels plus the exact finite sum over the modified channels.
AmplitudeResult amplitude(const AmplitudeRequest& req, double alpha,
                          double phi, int s,
                          const std::map<int, ExtensionParam>& ext_map);

double diff_cross_section(const AmplitudeRequest& req, double alpha,
                          double phi, int s,
                          const std::map<int, ExtensionParam>& ext_map);

}  // namespace abcone

#endif
