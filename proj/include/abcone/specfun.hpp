#ifndef ABCONE_SPECFUN_HPP
#define ABCONE_SPECFUN_HPP

#include "abcone/errors.hpp"

namespace abcone::specfun {

// Natural log of |Gamma(x)| together with the sign of Gamma(x).
// exp(log_abs) * sign reproduces Gamma(x) wherever Gamma is finite.
struct LogGammaValue {
    double log_abs;
    int sign;  // +1 or -1
};

// Termination policy for the power-series evaluators.
struct SeriesControl {
    double rel_tol = 1e-15;  // stop when |term / partial_sum| < rel_tol
    int max_terms = 500;
};

// True when x is within tol of an integer (default pole tolerance 1e-12).
bool near_integer(double x, double tol = 1e-12);

// Signed log-gamma. Stirling series for x >= 10, upward recurrence below,
// reflection for x < 0.5. Throws PoleError at non-positive integers.
LogGammaValue ln_gamma_signed(double x);

// Gamma(x) recomposed from ln_gamma_signed; overflows to +-inf for x > ~171.6.
double gamma_value(double x);

// 1/Gamma(x); returns 0 at non-positive integers instead of throwing.
double inv_gamma(double x);

// Gamma(1+nu)/Gamma(1-nu) for nu in (0,1). Throws DomainError outside.
double gamma_ratio_sym(double nu);

// Kummer confluent hypergeometric M(a,b,z). Taylor series for |z| <= 50
// (after the Kummer transform for z < 0), scaled asymptotic branch above.
double kummer_m(double a, double b, double z, const SeriesControl& ctl = {});

// Tricomi confluent hypergeometric U(a,b,z), z > 0, b non-integer.
// Connection formula for small z, Laplace-integral quadrature midrange,
// asymptotic branch for large z.
double tricomi_u(double a, double b, double z, const SeriesControl& ctl = {});

// Modified Bessel K_nu(x) for fractional nu in (0,1), x > 0.
// Symmetric in the sign of nu. Series path below x = 2, integral
// representation midrange, asymptotic expansion from x = 30 up.
double bessel_k(double nu, double x);

}  // namespace abcone::specfun

#endif
