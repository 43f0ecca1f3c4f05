#pragma once

#include <cmath>
#include <concepts>
#include <limits>
#include <vector>

#include "mittleff/contour.hpp"
#include "mittleff/types.hpp"

namespace mittleff {

struct QuadratureOutcome {
    Complex value{0.0, 0.0};
    double abs_err_est = 0.0;
    int panels = 0;
    double l1 = 0.0;  // integral of |f| (Kronrod-weighted), for noise models
};

/// Raised when the bisection depth cap is hit; carries the accumulated value
/// and its (honest) error estimate.
class DepthExceededError : public Error {
public:
    DepthExceededError(const QuadratureOutcome& partial, const std::string& msg)
        : Error(errc::depth_exceeded, msg), partial_(partial) {}
    const QuadratureOutcome& partial() const noexcept { return partial_; }

private:
    QuadratureOutcome partial_;
};

namespace detail {

// Gauss 7 / Kronrod 15 node pair, QUADPACK dqk15 abscissae and weights.
// xgk holds the positive half; Gauss points are xgk[1], xgk[3], xgk[5] and
// the centre.
inline constexpr double gk_xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
inline constexpr double gk_wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    Complex value{0.0, 0.0};
    double err = 0.0;
    double l1 = 0.0;  // integral of |f|, Kronrod-weighted
};

// Symmetric pairwise evaluation: each node pair is summed before weighting,
// so a reversed parameterization reproduces the value bit-for-bit.
template <class F>
PanelResult g7k15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const Complex fc = f(center);
    if (!is_finite(fc)) fail(errc::non_finite, "integrand returned NaN/Inf");
    Complex resk = gk_wgk[7] * fc;
    Complex resg = gk_wg[3] * fc;
    double resabs = gk_wgk[7] * std::abs(fc);

    for (int j = 0; j < 7; ++j) {
        const double dx = half * gk_xgk[j];
        const Complex flo = f(center - dx);
        const Complex fhi = f(center + dx);
        if (!is_finite(flo) || !is_finite(fhi))
            fail(errc::non_finite, "integrand returned NaN/Inf");
        const Complex fsum = flo + fhi;
        resk += gk_wgk[j] * fsum;
        resabs += gk_wgk[j] * (std::abs(flo) + std::abs(fhi));
        if (j % 2 == 1) resg += gk_wg[j / 2] * fsum;
    }

    PanelResult r;
    r.value = resk * half;
    r.err = std::abs(resk - resg) * half;
    r.l1 = resabs * half;
    return r;
}

}  // namespace detail

/// Adaptive bisection with the nested G7/K15 pair; |K15-G7| drives the local
/// estimate. Each sub-interval receives a budget proportional to its length,
/// so the accepted local estimates sum to <= tol_abs. Panels whose estimate
/// reaches the round-off floor (eps-scale of the local L1 norm) are accepted
/// as-is: subdividing cannot improve them. abs_err_est = sum of accepted
/// local estimates + eps * total L1 (round-off of the accumulation itself).
template <class F>
    requires std::invocable<F&, double>
QuadratureOutcome integrate_segment(F&& f, double a, double b, double tol_abs,
                                    int max_depth = 40) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        fail(errc::invalid_interval, "need finite a < b");
    if (!(tol_abs > 0.0)) fail(errc::invalid_tol, "tol_abs must be > 0");

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double inv_total = 1.0 / (b - a);

    struct Interval {
        double a, b;
        int depth;
    };
    std::vector<Interval> stack;
    stack.push_back({a, b, 0});

    QuadratureOutcome out;
    double l1_total = 0.0;
    bool depth_hit = false;

    while (!stack.empty()) {
        const Interval iv = stack.back();
        stack.pop_back();
        const auto panel = detail::g7k15(f, iv.a, iv.b);
        const double budget = tol_abs * (iv.b - iv.a) * inv_total;
        const double floor = 100.0 * eps * panel.l1;

        if (panel.err <= budget || panel.err <= floor ||
            iv.depth >= max_depth) {
            out.value += panel.value;
            double contribution = panel.err;
            if (iv.depth >= max_depth && panel.err > budget &&
                panel.err > floor) {
                depth_hit = true;
                // An unresolved panel's |K-G| is not trustworthy (e.g. an
                // integrable singularity); report its own mass instead.
                contribution = std::max(panel.err, panel.l1);
            }
            out.abs_err_est += contribution;
            l1_total += panel.l1;
            ++out.panels;
            continue;
        }
        const double mid = 0.5 * (iv.a + iv.b);
        // Push right first so the left half is processed next: panels are
        // accumulated in ascending parameter order, deterministically.
        stack.push_back({mid, iv.b, iv.depth + 1});
        stack.push_back({iv.a, mid, iv.depth + 1});
        if (out.panels > 1000000)
            fail(errc::depth_exceeded, "panel budget exhausted");
    }

    out.l1 = l1_total;
    out.abs_err_est += eps * (l1_total + std::abs(out.value));
    if (depth_hit)
        throw DepthExceededError(
            out, "depth_exceeded: bisection depth cap reached; value and "
                 "error estimate cover the full interval");
    return out;
}

/// Contour integral of an integrand given in declared polar coordinates:
/// sum of the three segment integrals with the complex line element. Rays
/// are parameterized by radius (d zeta = e^{i theta} dr, S1 entering with
/// inward orientation), the arc by angle (d zeta = i (1+eps) e^{i theta}
/// d theta). Fixed summation order S1, arc, S2. Each segment receives
/// tol_abs/4; the remaining quarter covers the two discarded ray tails,
/// bounded here by a local exponential-decay model at r_trunc.
template <class Phi>
    requires std::invocable<Phi&, const PolarPoint&>
QuadratureOutcome integrate_path_with(Phi&& phi, const MLParameters& p,
                                      const PolarPoint& z,
                                      const ContourPath& path, double tol_abs) {
    if (!(tol_abs > 0.0)) fail(errc::invalid_tol, "tol_abs must be > 0");
    const double seg_tol = 0.25 * tol_abs;
    const double r0 = path.arc_radius;

    const Complex dir1{std::cos(path.s1_angle), std::sin(path.s1_angle)};
    const Complex dir2{std::cos(path.s2_angle), std::sin(path.s2_angle)};

    auto ray1 = [&](double r) { return phi(PolarPoint{r, path.s1_angle}); };
    auto ray2 = [&](double r) { return phi(PolarPoint{r, path.s2_angle}); };
    auto arc = [&](double theta) {
        const Complex tangent =
            Complex{0.0, r0} * Complex{std::cos(theta), std::sin(theta)};
        return phi(PolarPoint{r0, theta}) * tangent;
    };

    const auto q1 = integrate_segment(ray1, r0, path.r_trunc, seg_tol);
    const auto qa = integrate_segment(arc, path.s1_angle, path.s2_angle, seg_tol);
    const auto q2 = integrate_segment(ray2, r0, path.r_trunc, seg_tol);

    QuadratureOutcome out;
    out.value = -dir1 * q1.value + qa.value + dir2 * q2.value;
    out.abs_err_est = q1.abs_err_est + qa.abs_err_est + q2.abs_err_est;
    out.panels = q1.panels + qa.panels + q2.panels;
    out.l1 = q1.l1 + qa.l1 + q2.l1;  // tangent moduli already inside

    // Discarded tail bound per ray: |phi(R)| / |d/dr exponent| at R, with a
    // safety factor for the algebraic prefactor.
    const auto d = detail::ray_decay(p, z, path.spec);
    const double t = z.radius;
    const double lambda_scale =
        p.rho * std::pow(t, p.rho) * std::pow(path.r_trunc, p.rho - 1.0);
    for (const auto& [angle, c] :
         {std::pair{path.s1_angle, d.c1}, std::pair{path.s2_angle, d.c2}}) {
        const double lambda = lambda_scale * -c;
        if (lambda > 0.0) {
            const double g = std::abs(phi(PolarPoint{path.r_trunc, angle}));
            out.abs_err_est += 2.0 * g / lambda;
        }
    }
    return out;
}

inline QuadratureOutcome integrate_path(const MLParameters& p,
                                        const PolarPoint& z,
                                        const ContourPath& path,
                                        double tol_abs) {
    return integrate_path_with(
        [&](const PolarPoint& zeta) { return phi_integrand(p, zeta, z); }, p, z,
        path, tol_abs);
}

}  // namespace mittleff
