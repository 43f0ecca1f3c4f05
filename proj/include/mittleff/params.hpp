#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mittleff/types.hpp"

namespace mittleff {

/// Contour tunables: the two ray angles are -delta1-pi and delta2-pi, the
/// joining arc has radius 1+epsilon. Valid against a given rho when
/// pi/(2*rho) < delta <= min(pi, pi/rho) for both deltas and epsilon > 0.
struct ContourSpec {
    double delta1;
    double delta2;
    double epsilon;
};

/// Open interval of admissible arg z for the integral representation.
struct SectorCondition {
    double lower;
    double upper;

    bool contains(double angle) const noexcept {
        return lower < angle && angle < upper;
    }
};

/// Singular-point verdict for the integrand Phi at zeta=1 and zeta=0.
/// zeta=1 is always a simple pole for rho > 1/2. zeta=0 is regular exactly
/// when rho is a positive integer, mu is real, and rho*(1-mu) is a
/// nonnegative integer m1; a pole of order m2 when rho*(1-mu) = -m2 < 0
/// under the same integrality conditions; a branch point otherwise.
struct SingularityReport {
    enum class AtOne { SimplePole };
    enum class AtZero { Regular, Pole, BranchPoint };

    AtOne at_one = AtOne::SimplePole;
    AtZero at_zero = AtZero::BranchPoint;
    long long pole_order = 0;     // m2, valid when at_zero == Pole
    long long regular_index = 0;  // m1, valid when at_zero == Regular
    long long rho_integer = 0;    // n, valid when at_zero != BranchPoint
    std::string branch;           // which classification branch fired
};

inline ContourSpec validate_contour(const MLParameters& p, double delta1,
                                    double delta2, double epsilon) {
    if (p.rho <= 0.5)
        fail(errc::rho_out_of_range,
             "integral representation requires rho > 1/2 (rho = " +
                 std::to_string(p.rho) + ")");
    const double lo = M_PI / (2.0 * p.rho);
    const double hi = std::min(M_PI, M_PI / p.rho);
    auto check_delta = [&](double d, const char* name) {
        if (!is_finite(d) || d <= lo || d > hi) {
            std::ostringstream os;
            os << name << " = " << d << " outside (" << lo << ", " << hi
               << "] for rho = " << p.rho;
            fail(errc::delta_out_of_range, os.str());
        }
    };
    check_delta(delta1, "delta1");
    check_delta(delta2, "delta2");
    if (!is_finite(epsilon) || epsilon <= 0.0)
        fail(errc::epsilon_non_positive, "epsilon must be > 0");
    return ContourSpec{delta1, delta2, epsilon};
}

/// Default contour when the caller does not choose: delta1 = delta2 =
/// min(pi, pi/rho) shaved by a relative 1e-9 to stay inside the admissible
/// half-open interval, except rho snapping to 1 where exactly pi is used so
/// the closed-contour residue regime applies.
inline ContourSpec default_contour(const MLParameters& p, double epsilon = 0.5) {
    long long n = 0;
    double d;
    if (snaps_to_integer(p.rho, n) && n == 1) {
        d = M_PI;
    } else {
        d = std::min(M_PI, M_PI / p.rho) * (1.0 - 1e-9);
    }
    return validate_contour(p, d, d, epsilon);
}

inline SectorCondition sector_bounds(const MLParameters& p,
                                     const ContourSpec& spec) {
    const double half = M_PI / (2.0 * p.rho);
    SectorCondition s{half - spec.delta2 + M_PI, -half + spec.delta1 + M_PI};
    if (s.lower >= s.upper)
        fail(errc::empty_sector,
             "delta1 + delta2 <= pi/rho leaves no admissible arg z");
    return s;
}

/// Strict test of the declared angle against the open sector. The angle is
/// used as given; no 2*pi reduction.
inline bool z_in_sector(const PolarPoint& z, const SectorCondition& sector) {
    if (z.radius == 0.0)
        fail(errc::zero_modulus, "z = 0 has no argument");
    return sector.contains(z.angle);
}

inline SingularityReport classify_singularities(const MLParameters& p) {
    if (p.rho <= 0.5)
        fail(errc::rho_out_of_range,
             "classification requires rho > 1/2 (rho = " +
                 std::to_string(p.rho) + ")");
    SingularityReport rep;
    rep.at_one = SingularityReport::AtOne::SimplePole;

    long long n = 0;
    const bool rho_is_int = snaps_to_integer(p.rho, n) && n >= 1;
    const bool mu_is_real = std::abs(p.mu_im) <= tau_int;
    long long m = 0;
    const bool exponent_is_int =
        snaps_to_integer(p.rho * (1.0 - p.mu_re), m);

    if (mu_is_real && rho_is_int && exponent_is_int && m >= 0) {
        rep.at_zero = SingularityReport::AtZero::Regular;
        rep.regular_index = m;
        rep.rho_integer = n;
        rep.branch = "regular: rho = " + std::to_string(n) +
                     ", mu real, rho*(1-mu) = " + std::to_string(m);
    } else if (mu_is_real && rho_is_int && exponent_is_int && m < 0) {
        rep.at_zero = SingularityReport::AtZero::Pole;
        rep.pole_order = -m;
        rep.rho_integer = n;
        rep.branch = "pole: rho = " + std::to_string(n) +
                     ", mu real, rho*(1-mu) = -" + std::to_string(-m);
    } else {
        rep.at_zero = SingularityReport::AtZero::BranchPoint;
        if (!mu_is_real)
            rep.branch = "branch point: Im(mu) != 0";
        else if (!rho_is_int)
            rep.branch = "branch point: rho not a positive integer";
        else
            rep.branch = "branch point: rho*(1-mu) not an integer";
    }
    return rep;
}

}  // namespace mittleff
