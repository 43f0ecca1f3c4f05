#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mittleff/params.hpp"
#include "mittleff/types.hpp"

namespace mittleff {

// Guard distance for the simple pole at zeta = 1. The contour keeps distance
// epsilon from it by construction, so contact indicates a caller bug.
inline constexpr double pole_guard = 1e-9;

/// Three-piece integration path: ray S1 traversed inward from r_trunc to
/// 1+epsilon at angle -delta1-pi, arc C of radius 1+epsilon swept
/// counterclockwise from -delta1-pi to delta2-pi, ray S2 outward at angle
/// delta2-pi. The pieces share endpoints exactly.
struct ContourPath {
    double s1_angle;
    double s2_angle;
    double arc_radius;
    double r_trunc;
    ContourSpec spec;
};

inline ContourPath build_contour(const MLParameters& p, const ContourSpec& spec,
                                 double r_trunc) {
    validate_contour(p, spec.delta1, spec.delta2, spec.epsilon);
    if (!(r_trunc > 1.0 + spec.epsilon))
        fail(errc::truncation_too_small,
             "r_trunc must exceed 1 + epsilon = " +
                 std::to_string(1.0 + spec.epsilon));
    return ContourPath{-spec.delta1 - M_PI, spec.delta2 - M_PI,
                       1.0 + spec.epsilon, r_trunc, spec};
}

/// Exponential factor rho/(2*pi*i) * exp{(zeta z)^rho} with declared-angle
/// powers: (zeta z)^rho = (r t)^rho * e^{i rho (phi+psi)}. The exponent is
/// assembled in 80-bit extended: its magnitude legitimately reaches several
/// hundred on the arc, and the sample's relative error scales with it.
inline Complex f1(const MLParameters& p, const PolarPoint& zeta,
                  const PolarPoint& z) {
    const long double w = std::pow(
        static_cast<long double>(zeta.radius) * z.radius,
        static_cast<long double>(p.rho));
    const long double phase =
        p.rho * (static_cast<long double>(zeta.angle) + z.angle);
    const long double ex = w * std::cos(phase);
    if (ex > 709.0L)
        fail(errc::overflow,
             "exp{(zeta z)^rho} exceeds double range (contour/decay violation)");
    constexpr long double pi_l = 3.141592653589793238462643383279503L;
    const std::complex<long double> e =
        std::exp(std::complex<long double>{ex, w * std::sin(phase)});
    const std::complex<long double> v =
        std::complex<long double>{0.0L, -p.rho / (2.0L * pi_l)} * e;
    return Complex{static_cast<double>(v.real()),
                   static_cast<double>(v.imag())};
}

/// Power factor (zeta z)^{rho(1-mu)} expanded with declared angles:
/// (rt)^{rho(1-muR)} * e^{rho muI (phi+psi)} * e^{i Theta},
/// Theta = rho(1-muR)(phi+psi) - rho muI ln(rt).
inline Complex f2(const MLParameters& p, const PolarPoint& zeta,
                  const PolarPoint& z) {
    const long double rt =
        static_cast<long double>(zeta.radius) * z.radius;
    const long double a = p.rho * (1.0L - static_cast<long double>(p.mu_re));
    if (rt == 0.0L) {
        if (a > 0.0L) return Complex{0.0, 0.0};  // modulus -> 0
        fail(errc::zero_modulus,
             "(zeta z) = 0 with rho(1-Re mu) <= 0 (pole/branch contact)");
    }
    const long double ang =
        static_cast<long double>(zeta.angle) + z.angle;
    const long double log_rt = std::log(rt);
    const long double mu_im = p.mu_im;
    const long double log_mod = a * log_rt + p.rho * mu_im * ang;
    if (log_mod > 709.0L)
        fail(errc::overflow, "|(zeta z)^{rho(1-mu)}| exceeds double range");
    const long double theta = a * ang - p.rho * mu_im * log_rt;
    const long double mod = std::exp(log_mod);
    return Complex{static_cast<double>(mod * std::cos(theta)),
                   static_cast<double>(mod * std::sin(theta))};
}

/// Pole factor exposed exactly as the factorization writes it: (1-zeta)^{-1}.
/// The assembled integrand carries the opposite sign through 1/(zeta-1);
/// the factorization test absorbs it.
inline Complex f3(const PolarPoint& zeta) {
    const Complex c = zeta.to_complex();
    if (std::abs(c - 1.0) < pole_guard)
        fail(errc::pole_contact, "zeta within guard distance of the pole at 1");
    return 1.0 / (1.0 - c);
}

/// Full integrand rho/(2*pi*i) * exp{(zeta z)^rho} (zeta z)^{rho(1-mu)} / (zeta-1),
/// equal to f1*f2/(zeta-1) with the prefactor carried inside f1.
inline Complex phi_integrand(const MLParameters& p, const PolarPoint& zeta,
                             const PolarPoint& z) {
    const Complex c = zeta.to_complex();
    if (std::abs(c - 1.0) < pole_guard)
        fail(errc::pole_contact, "zeta within guard distance of the pole at 1");
    return f1(p, zeta, z) * f2(p, zeta, z) / (c - 1.0);
}

namespace detail {

// Decay coefficients cos(rho*(ray angle + psi)) on the two rays. Both must
// be negative (below -1e-12; at an exact sector boundary floating-point
// round-off makes the sign indeterminate and the required radius diverges).
struct RayDecay {
    double c1;
    double c2;
    double worst;  // max(c1, c2): slowest decay
};

inline RayDecay ray_decay(const MLParameters& p, const PolarPoint& z,
                          const ContourSpec& spec) {
    const double a1 = -spec.delta1 - M_PI;
    const double a2 = spec.delta2 - M_PI;
    RayDecay d;
    d.c1 = std::cos(p.rho * (a1 + z.angle));
    d.c2 = std::cos(p.rho * (a2 + z.angle));
    d.worst = std::max(d.c1, d.c2);
    return d;
}

}  // namespace detail

/// Smallest truncation radius R such that (R t)^rho * c <= ln(tol_abs) -
/// margin on both rays, margin = ln(1 + B) with B a bound on the
/// non-exponential prefactor and tail measure. Solved by fixed-point
/// iteration (B depends on R only logarithmically). Guarantees each
/// discarded ray tail contributes < tol_abs.
inline double truncation_radius(const MLParameters& p, const PolarPoint& z,
                                const ContourSpec& spec, double tol_abs) {
    if (!(tol_abs > 0.0)) fail(errc::invalid_tol, "tol_abs must be > 0");
    if (z.radius == 0.0) fail(errc::zero_modulus, "z = 0 has no ray decay");

    const auto d = detail::ray_decay(p, z, spec);
    if (d.worst > -1e-12) {
        std::ostringstream os;
        os << "no exponential decay along the rays (cos = " << d.c1 << ", "
           << d.c2 << "); arg z = " << z.angle
           << " violates the sector condition or the deltas are degenerate";
        fail(errc::no_decay, os.str());
    }

    const double t = z.radius;
    const double a = p.rho * (1.0 - p.mu_re);
    const double a1 = -spec.delta1 - M_PI;
    const double a2 = spec.delta2 - M_PI;
    const double mu_i_factor = std::max(p.rho * p.mu_im * (a1 + z.angle),
                                        p.rho * p.mu_im * (a2 + z.angle));
    const double r_min = 2.0 * (1.0 + spec.epsilon);

    double r = r_min;
    for (int it = 0; it < 64; ++it) {
        // Prefactor bound along the tails at radius >= r: modulus of
        // rho/(2 pi) * (rt)^{rho(1-muR)} * e^{rho muI (phi+psi)} / |zeta-1|
        // with |zeta-1| >= epsilon, times max(r, 1) for the tail measure.
        const double alg =
            std::pow(std::max(r * t, 1.0), std::max(a, 0.0));
        const double b = p.rho / (2.0 * M_PI * spec.epsilon) * alg *
                         std::exp(std::min(mu_i_factor, 700.0)) *
                         std::max(r, 1.0);
        const double need = std::log1p(b) - std::log(tol_abs);
        const double r_new =
            std::max(std::pow(need / -d.worst, 1.0 / p.rho) / t, r_min);
        if (std::abs(r_new - r) <= 1e-9 * r) {
            r = r_new;
            break;
        }
        r = r_new;
    }
    return r;
}

}  // namespace mittleff
