#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "mittleff/error.hpp"

namespace mittleff {

using Complex = std::complex<double>;

// Shared integer-snap tolerance: a floating-point quantity is treated as an
// integer when within tau_int of one. The singularity classification is
// discontinuous in (rho, mu), so the snap is explicit and documented instead
// of exact comparison.
inline constexpr double tau_int = 1e-12;

inline bool is_finite(double x) noexcept { return std::isfinite(x); }
inline bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Nearest integer if x lies within tau_int of one, otherwise nullopt-like
// sentinel via the bool.
inline bool snaps_to_integer(double x, long long& n) noexcept {
    double r = std::nearbyint(x);
    if (std::abs(x - r) <= tau_int && std::abs(r) < 9e15) {
        n = static_cast<long long>(r);
        return true;
    }
    return false;
}

// Integer power by repeated multiplication. Keeps conjugate symmetry exact
// and avoids exp/log branch issues for the residue and closed-form paths.
inline Complex ipow(Complex z, long long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    Complex r{1.0, 0.0};
    Complex b = z;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

/// Parameter pair (rho, mu) of E_{rho,mu}. rho > 0; the integral
/// representation additionally needs rho > 1/2, checked at those operations
/// so the series can accept any rho > 0.
struct MLParameters {
    double rho;
    double mu_re;
    double mu_im;

    MLParameters(double rho_, double mu_re_, double mu_im_ = 0.0)
        : rho(rho_), mu_re(mu_re_), mu_im(mu_im_) {
        if (!is_finite(rho) || !is_finite(mu_re) || !is_finite(mu_im))
            fail(errc::non_finite, "rho and mu must be finite");
        if (rho <= 0.0)
            fail(errc::rho_out_of_range, "rho must be > 0");
    }

    Complex mu() const noexcept { return {mu_re, mu_im}; }
};

/// Complex number carried as (radius, declared angle). The angle is never
/// reduced mod 2*pi: the contour lives at angles below -pi and the monodromy
/// identities need the declared value. Raising to a real power p follows
/// (radius^p, p*angle), the only power rule used on contour points.
struct PolarPoint {
    double radius;
    double angle;

    PolarPoint(double radius_, double angle_) : radius(radius_), angle(angle_) {
        if (!is_finite(radius) || !is_finite(angle))
            fail(errc::non_finite, "polar point must be finite");
        if (radius < 0.0)
            fail(errc::non_finite, "polar radius must be >= 0");
    }

    Complex to_complex() const noexcept {
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    PolarPoint pow(double p) const {
        return PolarPoint{std::pow(radius, p), p * angle};
    }

    friend PolarPoint operator*(const PolarPoint& a, const PolarPoint& b) {
        return PolarPoint{a.radius * b.radius, a.angle + b.angle};
    }

    /// Principal argument lifted into [0, 2*pi). Every admissible sector of
    /// the integral representation is a sub-window of (0, 2*pi) around pi,
    /// and sector widths never exceed pi, so this is the one candidate lift.
    static PolarPoint from_cartesian_lifted(Complex z) {
        double a = std::arg(z);
        if (a < 0.0) a += 2.0 * M_PI;
        return PolarPoint{std::abs(z), a};
    }
};

enum class Method { Series, Integral, ClosedForm };

inline const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::Series:     return "series";
        case Method::Integral:   return "integral";
        case Method::ClosedForm: return "closed_form";
    }
    return "unknown";
}

/// One evaluation: value, an absolute-error estimate, the backend that
/// produced it, and named per-method diagnostics (documented in README):
///   series:      terms_used, condition_estimate, cancellation_warning
///   integral:    panels, truncation_radius, arc_exponent_peak
///   closed_form: in_corollary_sector
struct EvaluationResult {
    Complex value{0.0, 0.0};
    double abs_err_est = 0.0;
    Method method = Method::Series;
    std::map<std::string, double> diagnostics;
};

}  // namespace mittleff
