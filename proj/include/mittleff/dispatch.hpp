#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mittleff/integral.hpp"
#include "mittleff/params.hpp"
#include "mittleff/series.hpp"
#include "mittleff/types.hpp"

namespace mittleff {

enum class MethodRequest { Auto, Series, Integral, ClosedForm };

inline const char* method_request_name(MethodRequest r) noexcept {
    switch (r) {
        case MethodRequest::Auto:       return "auto";
        case MethodRequest::Series:     return "series";
        case MethodRequest::Integral:   return "integral";
        case MethodRequest::ClosedForm: return "closed_form";
    }
    return "unknown";
}

/// Below this |z| the series is preferred outright; calibrated so the series
/// condition estimate stays under ~1e4 for rho >= 0.6.
inline constexpr double default_z_switch = 5.0;

struct MethodChoice {
    MethodRequest requested = MethodRequest::Auto;
    Method chosen = Method::Series;
    std::string reason;
};

namespace detail {

inline bool snaps_to_closed_form(const MLParameters& p, long long& n_out) {
    long long nr = 0;
    if (!(snaps_to_integer(p.rho, nr) && nr == 1)) return false;
    if (std::abs(p.mu_im) > tau_int) return false;
    return snaps_to_integer(p.mu_re, n_out);
}

inline bool integral_applicable(const MLParameters& p, const PolarPoint& z,
                                const std::optional<ContourSpec>& spec,
                                std::string& why_not) {
    if (p.rho <= 0.5) {
        why_not = "integral representation requires rho > 1/2";
        return false;
    }
    if (z.radius == 0.0) {
        why_not = "integral representation needs z != 0";
        return false;
    }
    try {
        const ContourSpec s = spec ? *spec : default_contour(p);
        const SectorCondition sector = sector_bounds(p, s);
        if (!z_in_sector(z, sector)) {
            why_not = "arg z = " + std::to_string(z.angle) +
                      " outside the admissible sector (" +
                      std::to_string(sector.lower) + ", " +
                      std::to_string(sector.upper) + ")";
            return false;
        }
    } catch (const Error& e) {
        why_not = e.what();
        return false;
    }
    return true;
}

}  // namespace detail

/// Deterministic method selection. The declared angle of z is honored for
/// all sector decisions. Auto policy:
///   0. z = 0: series (single surviving term, exact);
///   1. closed form when rho snaps to 1 and mu snaps to a real integer;
///   2. series when |z| <= z_switch, or rho <= 1/2 (integral unavailable);
///   3. integral when rho > 1/2 and arg z fits the sector of the given (or
///      default) deltas;
///   4. otherwise series; the cancellation diagnostics carry the warning.
/// An explicit request bypasses the closed-form snap routing but must meet
/// its own preconditions, else MethodUnavailable.
inline MethodChoice choose_method(const MLParameters& p, const PolarPoint& z,
                                  MethodRequest req,
                                  const std::optional<ContourSpec>& spec = {},
                                  double z_switch = default_z_switch) {
    MethodChoice c;
    c.requested = req;
    std::string why_not;

    switch (req) {
        case MethodRequest::Series:
            c.chosen = Method::Series;
            c.reason = "explicit request";
            return c;
        case MethodRequest::Integral:
            if (!detail::integral_applicable(p, z, spec, why_not))
                fail(errc::method_unavailable, why_not);
            c.chosen = Method::Integral;
            c.reason = "explicit request";
            return c;
        case MethodRequest::ClosedForm: {
            long long n = 0;
            if (!detail::snaps_to_closed_form(p, n))
                fail(errc::method_unavailable,
                     "closed form requires rho = 1 and integer real mu");
            c.chosen = Method::ClosedForm;
            c.reason = "explicit request";
            return c;
        }
        case MethodRequest::Auto:
            break;
    }

    if (z.radius == 0.0) {
        c.chosen = Method::Series;
        c.reason = "z = 0: single surviving series term";
        return c;
    }
    long long n = 0;
    if (detail::snaps_to_closed_form(p, n)) {
        c.chosen = Method::ClosedForm;
        c.reason = "rho = 1 with integer mu = " + std::to_string(n);
        return c;
    }
    if (z.radius <= z_switch || p.rho <= 0.5) {
        c.chosen = Method::Series;
        c.reason = p.rho <= 0.5 ? "rho <= 1/2: integral unavailable"
                                : "|z| below series/integral switch";
        return c;
    }
    if (detail::integral_applicable(p, z, spec, why_not)) {
        c.chosen = Method::Integral;
        c.reason = "large |z| with arg z in the integral sector";
        return c;
    }
    c.chosen = Method::Series;
    c.reason = "no other backend applicable (" + why_not +
               "); series may be ill-conditioned here";
    return c;
}

inline MethodChoice choose_method(const MLParameters& p, Complex z,
                                  MethodRequest req,
                                  const std::optional<ContourSpec>& spec = {},
                                  double z_switch = default_z_switch) {
    if (!is_finite(z)) fail(errc::non_finite, "z must be finite");
    return choose_method(p, PolarPoint::from_cartesian_lifted(z), req, spec,
                         z_switch);
}

/// Single public evaluation entry point (declared-angle form).
inline EvaluationResult evaluate(const MLParameters& p, const PolarPoint& z,
                                 MethodRequest req = MethodRequest::Auto,
                                 double tol = 1e-10,
                                 std::optional<ContourSpec> spec = {}) {
    if (!(tol > 0.0)) fail(errc::invalid_tol, "tol must be > 0");
    const MethodChoice choice = choose_method(p, z, req, spec);
    switch (choice.chosen) {
        case Method::Series:
            return eval_series(p, z.to_complex(), std::min(tol, default_series_tol));
        case Method::ClosedForm: {
            long long n = 0;
            detail::snaps_to_closed_form(p, n);
            return eval_closed_form_rho1(n, z.to_complex());
        }
        case Method::Integral: {
            const ContourSpec s = spec ? *spec : default_contour(p);
            return eval_integral(p, z, s, tol);
        }
    }
    fail(errc::method_unavailable, "unreachable");
}

inline EvaluationResult evaluate(const MLParameters& p, Complex z,
                                 MethodRequest req = MethodRequest::Auto,
                                 double tol = 1e-10,
                                 std::optional<ContourSpec> spec = {}) {
    if (!is_finite(z)) fail(errc::non_finite, "z must be finite");
    return evaluate(p, PolarPoint::from_cartesian_lifted(z), req, tol, spec);
}

struct CrossCheckEntry {
    Method method = Method::Series;
    bool evaluated = false;
    EvaluationResult result;
    std::string skip_reason;
};

struct CrossCheckPair {
    Method a = Method::Series;
    Method b = Method::Series;
    double abs_delta = 0.0;
    double combined_err = 0.0;
    bool flagged = false;
};

struct CrossCheckReport {
    std::vector<CrossCheckEntry> entries;
    std::vector<CrossCheckPair> pairs;
    bool any_flagged = false;
};

/// Evaluates every applicable backend at (p, z) and reports pairwise
/// absolute deltas; a pair is flagged when its delta exceeds ten times the
/// combined error estimates. Inapplicable or failing backends are skipped
/// with their reason recorded.
inline CrossCheckReport cross_check(const MLParameters& p, const PolarPoint& z,
                                    double tol = 1e-10,
                                    std::optional<ContourSpec> spec = {}) {
    CrossCheckReport rep;
    auto attempt = [&](Method m, bool applicable, const std::string& why_not) {
        CrossCheckEntry e;
        e.method = m;
        if (!applicable) {
            e.skip_reason = why_not;
            rep.entries.push_back(e);
            return;
        }
        try {
            switch (m) {
                case Method::Series:
                    e.result = eval_series(p, z.to_complex(),
                                           std::min(tol, default_series_tol));
                    break;
                case Method::ClosedForm: {
                    long long n = 0;
                    detail::snaps_to_closed_form(p, n);
                    e.result = eval_closed_form_rho1(n, z.to_complex());
                    break;
                }
                case Method::Integral: {
                    const ContourSpec s = spec ? *spec : default_contour(p);
                    e.result = eval_integral(p, z, s, tol);
                    break;
                }
            }
            e.evaluated = true;
        } catch (const Error& err) {
            e.skip_reason = err.what();
        }
        rep.entries.push_back(e);
    };

    long long n = 0;
    std::string why_not;
    attempt(Method::Series, true, "");
    attempt(Method::ClosedForm, detail::snaps_to_closed_form(p, n),
            "closed form requires rho = 1 and integer real mu");
    const bool integral_ok = detail::integral_applicable(p, z, spec, why_not);
    attempt(Method::Integral, integral_ok, why_not);

    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.entries.size(); ++j) {
            const auto& a = rep.entries[i];
            const auto& b = rep.entries[j];
            if (!a.evaluated || !b.evaluated) continue;
            CrossCheckPair pair;
            pair.a = a.method;
            pair.b = b.method;
            pair.abs_delta = std::abs(a.result.value - b.result.value);
            pair.combined_err = a.result.abs_err_est + b.result.abs_err_est;
            pair.flagged = pair.abs_delta > 10.0 * pair.combined_err;
            rep.any_flagged = rep.any_flagged || pair.flagged;
            rep.pairs.push_back(pair);
        }
    }
    return rep;
}

inline CrossCheckReport cross_check(const MLParameters& p, Complex z,
                                    double tol = 1e-10,
                                    std::optional<ContourSpec> spec = {}) {
    if (!is_finite(z)) fail(errc::non_finite, "z must be finite");
    return cross_check(p, PolarPoint::from_cartesian_lifted(z), tol, spec);
}

}  // namespace mittleff
