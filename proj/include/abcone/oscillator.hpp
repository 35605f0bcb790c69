#ifndef ABCONE_OSCILLATOR_HPP
#define ABCONE_OSCILLATOR_HPP

#include <functional>
#include <vector>

#include "abcone/bound.hpp"
#include "abcone/channel.hpp"

namespace abcone {

// Isotropic two-dimensional oscillator on top of the flux-cone channel.
struct HoParams {
    double omega;
    double M;
    double r0;
    ChannelParams channel;
};

enum class HoBranch { Regular, Irregular, Mixed };

struct HoLevel {
    int n;          // bracket index, counted from the lowest level
    double energy;  // raw units; energy/omega is the dimensionless form
    HoBranch branch;
};

// Limiting spectra E = (2n + 1 +- nu) omega. The Regular branch holds for
// any nu >= 0; the Irregular branch requires nu in (0,1).
double ho_limit_spectrum(int n, double nu, double omega, HoBranch branch);

// Gamma-ratio spectral function Gamma((1+nu)/2 - E/2w)/Gamma((1-nu)/2 - E/2w)
// with the location of the nearest pole (2n+1+nu)w and zero (2n+1-nu)w.
struct SpectralValue {
    double value;
    double nearest_pole;
    double nearest_zero;
};
SpectralValue spectral_lhs(double E, double nu, double omega);

// Spectral levels with the physical (zero-energy-matched) right-hand side
//   RHS = R * Gamma(1+nu)/Gamma(1-nu) / ((M w)^nu r0^(2 nu)).
// One root per bracket of the pole/zero ladder, bisected to relative 1e-11.
std::vector<HoLevel> solve_ho_ks(const HoParams& h, int levels);

// Same ladder solve with RHS = -Gamma(1+nu)/Gamma(1-nu) / (lambda (M w)^nu).
// lambda = 0 returns the Regular limits exactly; the infinite flag returns
// the Irregular limits exactly.
std::vector<HoLevel> solve_ho_bg(const HoParams& h, const ExtensionParam& ext,
                                 int levels);

// Boundary-condition parameter printed for the oscillator problem:
//   1/lambda = (2/r0^(2 nu)) R.
// Note the sign and factor differ from extension_param (ratio -2); both
// conventions are reported side by side by the CLI.
ExtensionParam extension_param_ho(double r0, const ChannelParams& p);

// L^2(r dr)-normalized radial level wavefunction.
std::function<double(double)> ho_wavefunction(const HoLevel& level,
                                              const HoParams& h);

}  // namespace abcone

#endif
