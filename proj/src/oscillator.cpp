#include "abcone/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abcone/quadrature.hpp"
#include "abcone/specfun.hpp"

namespace abcone {

namespace {

constexpr double kBoundaryTol = 1e-12;

void check_ho(const HoParams& h) {
    if (!(h.omega > 0.0) || !(h.M > 0.0) || !(h.r0 > 0.0))
        throw DomainError("HoParams: omega, M, r0 must be positive");
    validate(h.channel);
}

double require_modified_nu(const ChannelParams& p) {
    const double nu = effective_channel(p).nu;
    if (!(nu > kBoundaryTol && nu < 1.0 - kBoundaryTol))
        throw DomainError("channel is not in the modified set (nu outside (0,1))");
    return nu;
}

// Ladder bookkeeping: poles at (2n+1+nu) w, zeros at (2n+1-nu) w, n >= 0.
double ladder_pole(int n, double nu, double omega) {
    return (2.0 * n + 1.0 + nu) * omega;
}
double ladder_zero(int n, double nu, double omega) {
    return (2.0 * n + 1.0 - nu) * omega;
}

// Root of spectral_lhs(E) = rhs inside (lo, hi), where the spectral function
// runs monotonically from one bracket edge to the other. Endpoints are a
// zero and a pole of the spectral function (lo = -inf for the lowest
// positive-rhs bracket).
double bisect_bracket(double lo, double hi, double rhs, double nu,
                      double omega) {
    auto f = [&](double e) { return spectral_lhs(e, nu, omega).value - rhs; };

    // inset the endpoints until the signs straddle: + on the side where the
    // spectral function blows up toward rhs's sign, - at the zero edge
    const bool lowest = !std::isfinite(lo);
    double a, fa;
    if (lowest) {
        a = hi - omega;
        fa = f(a);
        for (int i = 0; i < 200 && !(fa > 0.0) && std::isfinite(a); ++i) {
            a = hi - 2.0 * (hi - a);
            fa = f(a);
        }
        if (!(fa > 0.0))
            throw BracketError("spectral bracket: no sign change below the first zero");
    } else {
        double inset = 1e-3 * (hi - lo);
        a = lo + inset;
        fa = f(a);
        while (!(fa > 0.0) && inset > 1e-15 * omega) {
            inset /= 16.0;
            a = lo + inset;
            fa = f(a);
        }
        if (!(fa > 0.0)) throw BracketError("spectral bracket: pole-side sign missing");
    }
    double inset = 1e-3 * (lowest ? omega : hi - lo);
    double b = hi - inset;
    double fb = f(b);
    while (!(fb < 0.0) && inset > 1e-15 * omega) {
        inset /= 16.0;
        b = hi - inset;
        fb = f(b);
    }
    if (!(fb < 0.0)) throw BracketError("spectral bracket: zero-side sign missing");

    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (a + b);
        if (f(mid) > 0.0)
            a = mid;
        else
            b = mid;
        if (std::abs(b - a) <= 1e-12 * std::max(std::abs(mid), omega)) break;
    }
    return 0.5 * (a + b);
}

// All roots of spectral_lhs(E) = rhs, lowest first. For rhs > 0 the ladder
// brackets are (-inf, z0), (p0, z1), (p1, z2), ...; for rhs < 0 they are
// (z0, p0), (z1, p1), ...
std::vector<HoLevel> solve_ladder(double rhs, double nu, double omega,
                                  int levels) {
    if (levels <= 0) return {};
    std::vector<HoLevel> out;
    out.reserve(levels);
    for (int n = 0; n < levels; ++n) {
        double lo, hi;
        if (rhs > 0.0) {
            lo = (n == 0) ? -std::numeric_limits<double>::infinity()
                          : ladder_pole(n - 1, nu, omega);
            hi = ladder_zero(n, nu, omega);
        } else {
            lo = ladder_zero(n, nu, omega);
            hi = ladder_pole(n, nu, omega);
        }
        out.push_back({n, bisect_bracket(lo, hi, rhs, nu, omega), HoBranch::Mixed});
    }
    return out;
}

}  // namespace

double ho_limit_spectrum(int n, double nu, double omega, HoBranch branch) {
    if (n < 0) throw DomainError("ho_limit_spectrum: n must be >= 0");
    if (!(omega > 0.0)) throw DomainError("ho_limit_spectrum: omega must be positive");
    if (branch == HoBranch::Regular) {
        if (!(nu >= 0.0)) throw DomainError("ho_limit_spectrum: nu must be >= 0");
        return (2.0 * n + 1.0 + nu) * omega;
    }
    if (branch == HoBranch::Irregular) {
        if (!(nu > 0.0 && nu < 1.0))
            throw DomainError("ho_limit_spectrum: Irregular branch needs nu in (0,1)");
        return (2.0 * n + 1.0 - nu) * omega;
    }
    throw DomainError("ho_limit_spectrum: branch must be Regular or Irregular");
}

SpectralValue spectral_lhs(double E, double nu, double omega) {
    if (!(omega > 0.0)) throw DomainError("spectral_lhs: omega must be positive");
    if (!(nu > 0.0 && nu < 1.0)) throw DomainError("spectral_lhs: nu must lie in (0,1)");
    const double a_plus = 0.5 * (1.0 + nu) - E / (2.0 * omega);
    const double a_minus = 0.5 * (1.0 - nu) - E / (2.0 * omega);

    SpectralValue out{};
    const double t = (E / omega - 1.0) / 2.0;
    const int np = std::max(0, static_cast<int>(std::round(t - nu / 2.0)));
    const int nz = std::max(0, static_cast<int>(std::round(t + nu / 2.0)));
    auto closer = [E](double x, double y) {
        return std::abs(x - E) < std::abs(y - E) ? x : y;
    };
    out.nearest_pole = ladder_pole(np, nu, omega);
    if (np > 0)
        out.nearest_pole = closer(out.nearest_pole, ladder_pole(np - 1, nu, omega));
    out.nearest_pole = closer(out.nearest_pole, ladder_pole(np + 1, nu, omega));
    out.nearest_zero = ladder_zero(nz, nu, omega);
    if (nz > 0)
        out.nearest_zero = closer(out.nearest_zero, ladder_zero(nz - 1, nu, omega));
    out.nearest_zero = closer(out.nearest_zero, ladder_zero(nz + 1, nu, omega));

    if (specfun::near_integer(a_plus) && std::round(a_plus) <= 0.0)
        throw PoleError("spectral_lhs: E sits on a numerator gamma pole");
    if (specfun::near_integer(a_minus) && std::round(a_minus) <= 0.0) {
        out.value = 0.0;
        return out;
    }
    const auto gp = specfun::ln_gamma_signed(a_plus);
    const auto gm = specfun::ln_gamma_signed(a_minus);
    out.value = gp.sign * gm.sign * std::exp(gp.log_abs - gm.log_abs);
    return out;
}

std::vector<HoLevel> solve_ho_ks(const HoParams& h, int levels) {
    check_ho(h);
    const double nu = require_modified_nu(h.channel);
    const double ratio = coupling_ratio(h.channel);  // throws SingularCoupling
    const double rhs = ratio * specfun::gamma_ratio_sym(nu) /
                       (std::pow(h.M * h.omega, nu) * std::pow(h.r0, 2.0 * nu));
    if (rhs == 0.0)
        throw DomainError("solve_ho_ks: vanishing coupling ratio");
    return solve_ladder(rhs, nu, h.omega, levels);
}

std::vector<HoLevel> solve_ho_bg(const HoParams& h, const ExtensionParam& ext,
                                 int levels) {
    check_ho(h);
    const double nu = require_modified_nu(h.channel);
    if (std::abs(nu - ext.nu) > 1e-9 * (1.0 + nu))
        throw DomainError("solve_ho_bg: extension parameter does not match the channel");
    if (levels <= 0) return {};
    std::vector<HoLevel> out;
    if (ext.infinite) {  // RHS = 0: the spectral zeros, the irregular limits
        for (int n = 0; n < levels; ++n)
            out.push_back({n, ladder_zero(n, nu, h.omega), HoBranch::Irregular});
        return out;
    }
    if (ext.lambda == 0.0) {  // |RHS| -> inf: the spectral poles, regular limits
        for (int n = 0; n < levels; ++n)
            out.push_back({n, ladder_pole(n, nu, h.omega), HoBranch::Regular});
        return out;
    }
    const double rhs = -specfun::gamma_ratio_sym(nu) /
                       (ext.lambda * std::pow(h.M * h.omega, nu));
    return solve_ladder(rhs, nu, h.omega, levels);
}

ExtensionParam extension_param_ho(double r0, const ChannelParams& p) {
    if (!(r0 > 0.0)) throw DomainError("extension_param_ho: r0 must be positive");
    const double nu = require_modified_nu(p);
    const double ratio = coupling_ratio(p);  // throws SingularCoupling
    ExtensionParam e;
    e.nu = nu;
    e.origin = ExtensionParam::Origin::Physical;
    e.r0 = r0;
    e.coupling_ratio = ratio;
    if (ratio == 0.0) {
        e.infinite = true;
        return e;
    }
    e.lambda = std::pow(r0, 2.0 * nu) / (2.0 * ratio);
    return e;
}

std::function<double(double)> ho_wavefunction(const HoLevel& level,
                                              const HoParams& h) {
    check_ho(h);
    const double nu = require_modified_nu(h.channel);
    const double mw = h.M * h.omega;

    std::function<double(double)> shape;
    switch (level.branch) {
        case HoBranch::Regular:
            shape = [nu, mw, n = level.n](double r) {
                const double z = mw * r * r;
                return std::pow(r, nu) * std::exp(-0.5 * z) *
                       specfun::kummer_m(-static_cast<double>(n), 1.0 + nu, z);
            };
            break;
        case HoBranch::Irregular:
            shape = [nu, mw, n = level.n](double r) {
                const double z = mw * r * r;
                return std::pow(r, -nu) * std::exp(-0.5 * z) *
                       specfun::kummer_m(-static_cast<double>(n), 1.0 - nu, z);
            };
            break;
        case HoBranch::Mixed: {
            const double d = 0.5 * (1.0 + nu) - level.energy / (2.0 * h.omega);
            shape = [nu, mw, d](double r) {
                const double z = mw * r * r;
                return std::pow(r, nu) * std::exp(-0.5 * z) *
                       specfun::tricomi_u(d, 1.0 + nu, z);
            };
            break;
        }
    }

    const double r_cut = std::sqrt(90.0 / mw);
    const double norm2 = quadrature::tanh_sinh(
        [&](double r) {
            const double v = shape(r);
            return v * v * r;
        },
        0.0, r_cut, 1e-12);
    const double norm = 1.0 / std::sqrt(norm2);
    return [shape, norm](double r) { return norm * shape(r); };
}

}  // namespace abcone
