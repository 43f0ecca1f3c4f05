#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "mittleff/gamma.hpp"
#include "mittleff/types.hpp"

namespace mittleff {

inline constexpr double default_series_tol = 1e-12;
inline constexpr int default_series_kmax = 2000;

/// Defining power series: partial sums of t_k = z^k / Gamma(mu + k/rho).
///
/// Stop rule: |t_k| <= tol * max(|S_k|, 1) for 3 consecutive k: individual
/// terms vanish exactly whenever mu + k/rho hits a nonpositive integer
/// (reciprocal-gamma zeros), so a single small term is not evidence of
/// convergence. The counter only engages once Re(mu) + k/rho > 1/2, past the
/// last reachable gamma zero; otherwise the exact-zero prefix at nonpositive
/// integer mu would stop the sum before the series produces its first
/// nonzero term.
///
/// Terms and accumulation run in 80-bit long double with powers z^k by
/// iterated multiplication (conjugate symmetry stays exact and the
/// cancellation floor drops well below the double target). abs_err_est =
/// truncation (last term + geometric tail when the term ratio < 1) + the
/// round-off floor of the extended accumulation. diagnostics:
/// terms_used, condition_estimate = sum|t_k| / max(|S_K|, tiny), and
/// cancellation_warning once the condition passes 1e6 (large |z| near the
/// negative axis; the integral backend is the cure).
inline EvaluationResult eval_series(const MLParameters& p, Complex z,
                                    double tol = default_series_tol,
                                    int kmax = default_series_kmax) {
    using CLD = std::complex<long double>;
    if (!is_finite(z)) fail(errc::non_finite, "z must be finite");
    if (!(tol > 0.0)) fail(errc::invalid_tol, "tol must be > 0");
    if (kmax < 1) fail(errc::invalid_tol, "kmax must be >= 1");

    const CLD zl{static_cast<long double>(z.real()),
                 static_cast<long double>(z.imag())};
    const long double rho = p.rho;
    const long double tol_l = tol;

    CLD sum{0.0L, 0.0L};
    CLD zk{1.0L, 0.0L};
    long double sum_abs = 0.0L;
    long double prev_mag = -1.0L;
    long double last_mag = 0.0L;
    int consecutive_small = 0;
    int k = 0;
    bool converged = false;

    for (; k < kmax; ++k) {
        const CLD w{p.mu_re + static_cast<long double>(k) / rho,
                    static_cast<long double>(p.mu_im)};
        const CLD t = zk * detail::recip_gamma_t<long double>(w);
        sum += t;
        const long double mag = std::abs(t);
        sum_abs += mag;
        if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()) ||
            !std::isfinite(sum_abs))
            fail(errc::no_convergence,
                 "series terms exceed floating range before the stop rule fired");

        const bool counter_active = w.real() > 0.5L;
        if (counter_active &&
            mag <= tol_l * std::max(std::abs(sum), 1.0L)) {
            if (++consecutive_small >= 3) {
                prev_mag = last_mag;
                last_mag = mag;
                converged = true;
                ++k;
                break;
            }
        } else {
            consecutive_small = 0;
        }
        prev_mag = last_mag;
        last_mag = mag;
        zk *= zl;
    }

    if (!converged)
        fail(errc::no_convergence,
             "stop rule did not fire within kmax = " + std::to_string(kmax) +
                 " terms");

    // Truncation bound: last term plus a geometric tail when terms decay.
    long double err = last_mag;
    if (prev_mag > 0.0L && last_mag > 0.0L) {
        const long double ratio = last_mag / prev_mag;
        if (ratio < 1.0L) err += last_mag * ratio / (1.0L - ratio);
    }
    // Round-off floor: per-term kernel error at the Lanczos intrinsic level
    // times the accumulated magnitudes, plus the double rounding of the
    // result itself.
    err += 4e-17L * sum_abs +
           std::numeric_limits<double>::epsilon() * std::abs(sum);

    EvaluationResult r;
    r.value = Complex{static_cast<double>(sum.real()),
                      static_cast<double>(sum.imag())};
    r.abs_err_est = static_cast<double>(err);
    r.method = Method::Series;
    const long double tiny = std::numeric_limits<double>::min();
    const double cond =
        static_cast<double>(sum_abs / std::max(std::abs(sum), tiny));
    r.diagnostics["terms_used"] = static_cast<double>(k);
    r.diagnostics["condition_estimate"] = cond;
    if (cond > 1e6) r.diagnostics["cancellation_warning"] = 1.0;
    return r;
}

}  // namespace mittleff
