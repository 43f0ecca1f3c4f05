#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "mittleff/contour.hpp"
#include "mittleff/params.hpp"
#include "mittleff/quadrature.hpp"
#include "mittleff/types.hpp"

namespace mittleff {

/// A residue proper: NOT scaled by 2*pi*i. The scaling is applied at the
/// call site, matching the residue-theorem bookkeeping and preventing
/// double-scaling bugs.
struct ResidueValue {
    enum class Location { AtZero, AtOne };
    Complex value{0.0, 0.0};
    Location location = Location::AtOne;
};

namespace detail {

// Max of cos over the phase interval swept by the arc.
inline double max_cos_over(double lo, double hi) {
    const double k = std::ceil(lo / (2.0 * M_PI));
    if (2.0 * M_PI * k <= hi) return 1.0;
    return std::max(std::cos(lo), std::cos(hi));
}

}  // namespace detail

/// Residue of Phi at zeta = 1: (rho/(2*pi*i)) * exp{z^rho} * z^{rho(1-mu)}
/// with declared-angle powers; 2*pi*i times this is its contribution to a
/// closed contour.
inline ResidueValue residue_at_one(const MLParameters& p, const PolarPoint& z) {
    if (z.radius == 0.0) fail(errc::zero_argument, "residue needs z != 0");
    const PolarPoint one{1.0, 0.0};
    return ResidueValue{f1(p, one, z) * f2(p, one, z),
                        ResidueValue::Location::AtOne};
}

/// n-th derivative of e^{zeta z}/(zeta-1) by the closed formula
///   e^{zeta z} * sum_{k=0}^{n} (-1)^{n-k} (n!/k!) z^k / (zeta-1)^{n-k+1}.
/// Terms are built by the ratio t_{k+1} = t_k * (-(zeta-1) z / (k+1)), which
/// also handles z = 0.
inline Complex deriv_exp_over_linear(long long n, Complex z, Complex zeta) {
    if (n < 0) fail(errc::invalid_interval, "derivative order must be >= 0");
    if (n > 170) fail(errc::overflow, "derivative order beyond double factorial range");
    const Complex d = zeta - 1.0;
    if (std::abs(d) < pole_guard)
        fail(errc::pole_contact, "zeta within guard distance of the pole at 1");

    // k = 0 term: (-1)^n * n! / (zeta-1)^{n+1}
    double fact = 1.0;
    for (long long j = 2; j <= n; ++j) fact *= static_cast<double>(j);
    Complex term = ((n % 2 == 0) ? fact : -fact) / ipow(d, n + 1);
    Complex sum = term;
    for (long long k = 0; k < n; ++k) {
        term *= -z * d / static_cast<double>(k + 1);
        sum += term;
    }
    Complex v = std::exp(zeta * z) * sum;
    if (!is_finite(v)) fail(errc::overflow, "derivative value exceeds double range");
    return v;
}

/// Residue of Phi_{1,1+m2} at zeta = 0, computed through the derivative
/// limit formula (exact at zeta = 0) and cross-checked against the explicit
/// sum -(z^{-m2}/(2*pi*i)) * sum_{k=0}^{m2-1} z^k/k!. The second path exists
/// purely as a tripwire; disagreement raises InternalInconsistency.
inline ResidueValue residue_at_zero_rho1(long long m2, Complex z) {
    if (m2 < 1) fail(errc::invalid_interval, "pole order m2 must be >= 1");
    if (m2 > 170) fail(errc::overflow, "pole order beyond double factorial range");
    if (z == Complex{0.0, 0.0}) fail(errc::zero_argument, "residue needs z != 0");

    const Complex two_pi_i{0.0, 2.0 * M_PI};
    const Complex z_pow = 1.0 / ipow(z, m2);

    double fact = 1.0;
    for (long long j = 2; j <= m2 - 1; ++j) fact *= static_cast<double>(j);
    const Complex via_limit =
        z_pow / (two_pi_i * fact) * deriv_exp_over_linear(m2 - 1, z, {0.0, 0.0});

    Complex partial{0.0, 0.0};
    Complex term{1.0, 0.0};
    for (long long k = 0; k < m2; ++k) {
        partial += term;
        term *= z / static_cast<double>(k + 1);
    }
    const Complex via_sum = -z_pow / two_pi_i * partial;

    const double scale =
        std::max({std::abs(via_limit), std::abs(via_sum),
                  std::numeric_limits<double>::min()});
    if (std::abs(via_limit - via_sum) > 1e-12 * scale)
        fail(errc::internal_inconsistency,
             "residue-at-zero limit formula and explicit sum disagree");
    return ResidueValue{via_limit, ResidueValue::Location::AtZero};
}

/// Closed forms at rho = 1, integer mu = n:
///   n <= 1: E_{1,n}(z) = e^z z^{1-n}
///   n >= 2: E_{1,n}(z) = z^{1-n} (e^z - sum_{k=0}^{n-2} z^k/k!)
/// Valid for all z (the series derivation extends the contour proof's
/// sector); diagnostics.in_corollary_sector records whether arg z lay in
/// (pi/2, 3pi/2), where the residue route applies as well.
inline EvaluationResult eval_closed_form_rho1(long long n, Complex z) {
    if (!is_finite(z)) fail(errc::non_finite, "z must be finite");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    EvaluationResult r;
    r.method = Method::ClosedForm;

    if (z == Complex{0.0, 0.0}) {
        if (n != 1)
            fail(errc::zero_argument,
                 "closed form needs z != 0 for mu != 1 (z^{1-n} is singular "
                 "or the limit is taken elsewhere)");
        r.value = {1.0, 0.0};
        r.abs_err_est = 0.0;
        r.diagnostics["in_corollary_sector"] = 0.0;
        return r;
    }

    if (std::abs(n) > 170)
        fail(errc::overflow, "|mu| beyond double power range");

    const Complex ez = std::exp(z);
    if (n <= 1) {
        r.value = ez * ipow(z, 1 - n);
        r.abs_err_est = 8.0 * eps * std::abs(r.value);
    } else {
        Complex partial{0.0, 0.0};
        double partial_abs = 0.0;
        Complex term{1.0, 0.0};
        for (long long k = 0; k <= n - 2; ++k) {
            partial += term;
            partial_abs += std::abs(term);
            term *= z / static_cast<double>(k + 1);
        }
        const Complex zpow = ipow(z, n - 1);
        r.value = (ez - partial) / zpow;
        // Cancellation in (e^z - partial) dominates the rounding budget.
        r.abs_err_est = 8.0 * eps * (std::abs(ez) + partial_abs) /
                            std::abs(zpow) +
                        4.0 * eps * std::abs(r.value);
    }
    if (!is_finite(r.value))
        fail(errc::overflow, "closed-form value exceeds double range");

    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * M_PI;
    r.diagnostics["in_corollary_sector"] =
        (a > M_PI / 2.0 && a < 3.0 * M_PI / 2.0) ? 1.0 : 0.0;
    return r;
}

/// Contour-integral evaluator: quadrature of Phi over the truncated
/// three-piece path. Requires rho > 1/2, a valid spec, and the declared
/// angle of z strictly inside the sector of the spec.
inline EvaluationResult eval_integral(const MLParameters& p, const PolarPoint& z,
                                      const ContourSpec& spec, double tol) {
    validate_contour(p, spec.delta1, spec.delta2, spec.epsilon);
    if (!(tol > 0.0)) fail(errc::invalid_tol, "tol must be > 0");
    if (z.radius == 0.0) fail(errc::zero_modulus, "integral representation needs z != 0");

    const SectorCondition sector = sector_bounds(p, spec);
    if (!z_in_sector(z, sector)) {
        std::ostringstream os;
        os << "arg z = " << z.angle << " outside the admissible sector ("
           << sector.lower << ", " << sector.upper << ")";
        fail(errc::sector_violation, os.str());
    }

    // The arc passes through the phase where exp{(zeta z)^rho} peaks; if the
    // peak exceeds double range the representation cannot be quadratured in
    // this precision at all.
    const double theta1 = -spec.delta1 - M_PI;
    const double theta2 = spec.delta2 - M_PI;
    const double cmax = detail::max_cos_over(p.rho * (theta1 + z.angle),
                                             p.rho * (theta2 + z.angle));
    const double arc_peak =
        std::pow((1.0 + spec.epsilon) * z.radius, p.rho) * cmax;
    if (arc_peak > 700.0) {
        std::ostringstream os;
        os << "arc integrand reaches exp(" << arc_peak
           << "), beyond double range; |z|^rho too large for the contour "
              "representation in double precision";
        fail(errc::overflow, os.str());
    }

    const double r_trunc = truncation_radius(p, z, spec, tol / 8.0);
    const ContourPath path = build_contour(p, spec, r_trunc);
    const QuadratureOutcome q = integrate_path(p, z, path, tol);

    EvaluationResult r;
    r.value = q.value;
    // Node-position rounding turns into sample error proportional to the
    // oscillation scale of exp{(zeta z)^rho}; the noise floor must grow with
    // the arc exponent peak or huge-|z|^rho results would claim accuracy
    // they cannot have.
    r.abs_err_est = q.abs_err_est +
                    std::max(arc_peak, 1.0) *
                        std::numeric_limits<double>::epsilon() * q.l1;
    r.method = Method::Integral;
    r.diagnostics["panels"] = static_cast<double>(q.panels);
    r.diagnostics["truncation_radius"] = r_trunc;
    r.diagnostics["arc_exponent_peak"] = arc_peak;
    return r;
}

}  // namespace mittleff
