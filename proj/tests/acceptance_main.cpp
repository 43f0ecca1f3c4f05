// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed here, not tunable from outside.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mittleff/mittleff.hpp"

using namespace mittleff;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

void report(int id, const char* title, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %s -- %s (%.2f s)\n",
                pass ? "PASS" : "FAIL", id, title, detail.c_str(), seconds);
    if (!pass) ++failures;
}

const Complex two_pi_i{0.0, 2.0 * M_PI};

// --- criterion 1: closed form vs series -----------------------------------
void criterion_1() {
    Timer timer;
    const double radii[] = {0.25, 1.0, 2.0, 4.0, 8.0};
    const double angles[] = {0.6 * M_PI, 0.8 * M_PI, M_PI, 1.2 * M_PI,
                             1.4 * M_PI};
    int checked = 0, bad = 0;
    double worst = 0.0;
    for (long long n = -3; n <= 5; ++n) {
        const MLParameters p{1.0, static_cast<double>(n)};
        for (double r : radii) {
            for (double ang : angles) {
                const Complex z = PolarPoint{r, ang}.to_complex();
                const auto closed = eval_closed_form_rho1(n, z);
                const auto series = eval_series(p, z, 1e-13);
                const double tol = 1e-10 * (1.0 + std::abs(closed.value));
                const double diff = std::abs(closed.value - series.value);
                worst = std::max(worst, diff / tol);
                ++checked;
                if (diff > tol) ++bad;
            }
        }
    }
    const double sec = timer.seconds();
    const bool pass = bad == 0 && sec < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d points, %d over tolerance, worst deviation %.2fx of "
                  "1e-10*(1+|E|)",
                  checked, bad, worst);
    report(1, "closed-form vs series agreement", pass, detail, sec);
}

// --- criterion 2: integral vs series ---------------------------------------
void criterion_2() {
    Timer timer;
    const double rhos[] = {0.6, 0.75, 1.0, 2.0, 5.0};
    const Complex mus[] = {{1.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}, {1.0, 0.5},
                           {-1.0, 0.0}};
    const double angles[] = {0.75 * M_PI, M_PI, 1.25 * M_PI};
    const double radii[] = {0.5, 2.0, 5.0};

    int compared = 0, bad = 0, skipped = 0;
    std::vector<std::string> skip_notes;
    for (double rho : rhos) {
        const MLParameters probe{rho, 1.0};
        const ContourSpec spec = default_contour(probe);
        for (const Complex mu : mus) {
            const MLParameters p{rho, mu.real(), mu.imag()};
            const SectorCondition sector = sector_bounds(p, spec);
            for (double ang : angles) {
                if (!(sector.lower < ang && ang < sector.upper)) continue;
                for (double r : radii) {
                    const PolarPoint zp{r, ang};
                    bool have_series = false, have_integral = false;
                    EvaluationResult s, q;
                    std::string why;
                    try {
                        s = eval_series(p, zp.to_complex(), 1e-14);
                        have_series = true;
                    } catch (const Error& e) {
                        why = std::string("series: ") + e.code_name();
                    }
                    try {
                        q = eval_integral(p, zp, spec, 1e-10);
                        have_integral = true;
                    } catch (const Error& e) {
                        if (!why.empty()) why += ", ";
                        why += std::string("integral: ") + e.code_name();
                    }
                    if (!have_series || !have_integral) {
                        ++skipped;
                        char buf[200];
                        std::snprintf(buf, sizeof(buf),
                                      "rho=%g mu=(%g,%g) r=%g ang=%.2fpi: %s",
                                      rho, mu.real(), mu.imag(), r,
                                      ang / M_PI, why.c_str());
                        skip_notes.push_back(buf);
                        continue;
                    }
                    ++compared;
                    const double tol = std::max(
                        1e-8, 10.0 * (s.abs_err_est + q.abs_err_est));
                    if (std::abs(s.value - q.value) > tol) ++bad;
                }
            }
        }
    }
    const double sec = timer.seconds();
    const bool pass = bad == 0 && sec < 30.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d compared, %d over tolerance, %d skipped "
                  "(unrepresentable in double)",
                  compared, bad, skipped);
    report(2, "integral vs series agreement", pass, detail, sec);
    for (const auto& note : skip_notes)
        std::printf("       skip: %s\n", note.c_str());
}

// --- criterion 3: residue identity -----------------------------------------
void criterion_3() {
    Timer timer;
    const ContourSpec spec{M_PI, M_PI, 0.5};
    const Complex zs[] = {{-1.0, 0.0}, {-2.0, 1.0}, {-0.5, -0.5}};
    int checked = 0, bad = 0;
    double worst = 0.0;
    for (long long n = -2; n <= 4; ++n) {
        const MLParameters p{1.0, static_cast<double>(n)};
        for (const Complex zc : zs) {
            const PolarPoint z = PolarPoint::from_cartesian_lifted(zc);
            const auto quad = eval_integral(p, z, spec, 1e-10);
            Complex residues = residue_at_one(p, z).value;
            if (n >= 2)
                residues += residue_at_zero_rho1(n - 1, z.to_complex()).value;
            const double diff = std::abs(quad.value - two_pi_i * residues);
            worst = std::max(worst, diff);
            ++checked;
            if (diff > 1e-8) ++bad;
        }
    }
    const double sec = timer.seconds();
    const bool pass = bad == 0 && sec < 5.0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d cases, %d over 1e-8, worst |quad - 2pi i sum Res| = %.2e",
                  checked, bad, worst);
    report(3, "closed-contour residue identity", pass, detail, sec);
}

// --- criterion 4: derivative induction formula ------------------------------
void criterion_4() {
    Timer timer;
    std::mt19937_64 rng(20240819);
    std::uniform_real_distribution<double> box(-2.0, 2.0);

    auto leibniz = [](long long n, Complex z, Complex zeta) {
        Complex sum{0.0, 0.0};
        const Complex d = zeta - 1.0;
        double binom = 1.0;
        for (long long j = 0; j <= n; ++j) {
            double fact = 1.0;
            for (long long t = 2; t <= n - j; ++t)
                fact *= static_cast<double>(t);
            const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
            sum += binom * ipow(z, j) * sign * fact / ipow(d, n - j + 1);
            binom *= static_cast<double>(n - j) / static_cast<double>(j + 1);
        }
        return std::exp(zeta * z) * sum;
    };

    int bad_fd = 0, bad_leibniz = 0, checked = 0;
    for (int i = 0; i < 20; ++i) {
        const Complex z{box(rng), box(rng)};
        Complex zeta{box(rng), box(rng)};
        if (std::abs(zeta - 1.0) < 0.35) zeta -= 1.0;
        for (long long n = 1; n <= 6; ++n) {
            ++checked;
            auto lower = [&](Complex zz) {
                return deriv_exp_over_linear(n - 1, z, zz);
            };
            auto fd = [&](double h) {
                return (lower(zeta + h) - lower(zeta - h)) / (2.0 * h);
            };
            const Complex richardson = (4.0 * fd(5e-5) - fd(1e-4)) / 3.0;
            const Complex direct = deriv_exp_over_linear(n, z, zeta);
            const double scale = std::max(std::abs(direct), 1e-300);
            if (std::abs(direct - richardson) / scale > 1e-6) ++bad_fd;
            if (std::abs(direct - leibniz(n, z, zeta)) / scale > 1e-10)
                ++bad_leibniz;
        }
    }
    const double sec = timer.seconds();
    const bool pass = bad_fd == 0 && bad_leibniz == 0;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d (n, z, zeta) cases: %d FD mismatches (>1e-6), %d "
                  "Leibniz mismatches (>1e-10)",
                  checked, bad_fd, bad_leibniz);
    report(4, "derivative induction formula", pass, detail, sec);
}

// --- criterion 5: classification truth table --------------------------------
void criterion_5() {
    Timer timer;
    enum K { REG, POLE, BRANCH };
    struct Row {
        double rho, mu_re;
        K kind;
        long long order;  // m1 for REG, m2 for POLE
    };
    // Hand-derived table for mu_I = 0. Regular/pole demand integer rho and
    // integer rho*(1-mu_R); non-integer rho is a branch point throughout.
    const Row table[] = {
        {0.6, -2.0, BRANCH, 0}, {0.6, -1.0, BRANCH, 0}, {0.6, 0.0, BRANCH, 0},
        {0.6, 1.0, BRANCH, 0},  {0.6, 2.0, BRANCH, 0},  {0.6, 3.0, BRANCH, 0},
        {0.6, 4.0, BRANCH, 0},  {0.6, 0.5, BRANCH, 0},  {0.6, 1.5, BRANCH, 0},

        {1.0, -2.0, REG, 3},    {1.0, -1.0, REG, 2},    {1.0, 0.0, REG, 1},
        {1.0, 1.0, REG, 0},     {1.0, 2.0, POLE, 1},    {1.0, 3.0, POLE, 2},
        {1.0, 4.0, POLE, 3},    {1.0, 0.5, BRANCH, 0},  {1.0, 1.5, BRANCH, 0},

        {1.5, -2.0, BRANCH, 0}, {1.5, -1.0, BRANCH, 0}, {1.5, 0.0, BRANCH, 0},
        {1.5, 1.0, BRANCH, 0},  {1.5, 2.0, BRANCH, 0},  {1.5, 3.0, BRANCH, 0},
        {1.5, 4.0, BRANCH, 0},  {1.5, 0.5, BRANCH, 0},  {1.5, 1.5, BRANCH, 0},

        {2.0, -2.0, REG, 6},    {2.0, -1.0, REG, 4},    {2.0, 0.0, REG, 2},
        {2.0, 1.0, REG, 0},     {2.0, 2.0, POLE, 2},    {2.0, 3.0, POLE, 4},
        {2.0, 4.0, POLE, 6},    {2.0, 0.5, REG, 1},     {2.0, 1.5, POLE, 1},

        {3.0, -2.0, REG, 9},    {3.0, -1.0, REG, 6},    {3.0, 0.0, REG, 3},
        {3.0, 1.0, REG, 0},     {3.0, 2.0, POLE, 3},    {3.0, 3.0, POLE, 6},
        {3.0, 4.0, POLE, 9},    {3.0, 0.5, BRANCH, 0},  {3.0, 1.5, BRANCH, 0},
    };

    int checked = 0, bad = 0;
    for (const Row& row : table) {
        for (double mu_im : {0.0, 0.5}) {
            ++checked;
            const auto rep =
                classify_singularities(MLParameters{row.rho, row.mu_re, mu_im});
            if (rep.at_one != SingularityReport::AtOne::SimplePole) {
                ++bad;
                continue;
            }
            const K want = (mu_im != 0.0) ? BRANCH : row.kind;
            bool ok = false;
            switch (want) {
                case REG:
                    ok = rep.at_zero == SingularityReport::AtZero::Regular &&
                         rep.regular_index == row.order;
                    break;
                case POLE:
                    ok = rep.at_zero == SingularityReport::AtZero::Pole &&
                         rep.pole_order == row.order;
                    break;
                case BRANCH:
                    ok = rep.at_zero == SingularityReport::AtZero::BranchPoint;
                    break;
            }
            if (!ok) {
                ++bad;
                std::printf("       mismatch at rho=%g mu=%g+%gi\n", row.rho,
                            row.mu_re, mu_im);
            }
        }
    }
    const double sec = timer.seconds();
    char detail[120];
    std::snprintf(detail, sizeof(detail), "%d lattice cases, %d mismatches",
                  checked, bad);
    report(5, "singularity truth table", bad == 0, detail, sec);
}

// --- criterion 6: monodromy identities --------------------------------------
void criterion_6() {
    Timer timer;
    std::mt19937_64 rng(20240820);
    std::uniform_real_distribution<double> ur(0.2, 3.0);
    std::uniform_real_distribution<double> uang(-M_PI, M_PI);
    std::uniform_real_distribution<double> umu(-2.0, 2.0);
    std::uniform_real_distribution<double> urho(0.55, 4.0);

    int bad_f2 = 0;
    for (int i = 0; i < 200; ++i) {
        const MLParameters p{urho(rng), umu(rng), umu(rng)};
        const PolarPoint zeta{ur(rng), uang(rng)};
        const PolarPoint z{ur(rng), uang(rng)};
        const Complex lhs =
            f2(p, PolarPoint{zeta.radius, zeta.angle + 2.0 * M_PI}, z);
        const double grow = std::exp(2.0 * M_PI * p.rho * p.mu_im);
        const double phase = 2.0 * M_PI * p.rho * (1.0 - p.mu_re);
        const Complex rhs = f2(p, zeta, z) * grow *
                            Complex{std::cos(phase), std::sin(phase)};
        if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs)) ++bad_f2;
    }

    int bad_f1 = 0;
    const PolarPoint z{1.3, 0.4};
    for (double rho : {1.0, 2.0, 3.0, 4.0}) {
        const MLParameters p{rho, 1.0};
        const PolarPoint zeta{1.4, 0.7};
        const Complex a =
            f1(p, PolarPoint{zeta.radius, zeta.angle + 2.0 * M_PI}, z);
        const Complex b = f1(p, zeta, z);
        if (std::abs(a - b) > 1e-12 * std::abs(b)) ++bad_f1;
    }
    for (double rho : {0.6, 0.9, 1.5, 2.5, 3.3, M_SQRT2}) {
        const MLParameters p{rho, 1.0};
        const PolarPoint zeta{1.4, 0.7};
        const Complex a =
            f1(p, PolarPoint{zeta.radius, zeta.angle + 2.0 * M_PI}, z);
        const Complex b = f1(p, zeta, z);
        if (std::abs(a - b) <= 1e-6 * std::abs(b)) ++bad_f1;
    }

    const double sec = timer.seconds();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "f2: %d/200 over 1e-12; f1 periodicity iff integer rho: %d "
                  "violations",
                  bad_f2, bad_f1);
    report(6, "monodromy identities", bad_f2 == 0 && bad_f1 == 0, detail, sec);
}

// --- criterion 7: gamma kernel ----------------------------------------------
void criterion_7() {
    Timer timer;
    std::mt19937_64 rng(20240821);
    std::uniform_real_distribution<double> box(-50.0, 50.0);
    int bad = 0, tested = 0;
    while (tested < 400) {
        const Complex w{box(rng), box(rng)};
        const double a = std::abs(w);
        if (a < 0.1 || a > 50.0) continue;
        if (std::abs(w.imag()) < 0.05 && w.real() < 0.5 &&
            std::abs(w.real() - std::nearbyint(w.real())) < 0.05)
            continue;
        ++tested;
        const Complex rec_l = recip_gamma(w + 1.0);
        const Complex rec_r = recip_gamma(w) / w;
        if (std::abs(rec_l - rec_r) >
            1e-12 * std::max(std::abs(rec_r), 1e-300))
            ++bad;
        const Complex refl = recip_gamma(w) * recip_gamma(1.0 - w);
        const Complex want = std::sin(M_PI * w) / M_PI;
        if (std::abs(refl - want) > 1e-12 * std::max(std::abs(want), 1e-300))
            ++bad;
    }
    int bad_zeros = 0;
    for (int k = 0; k <= 20; ++k)
        if (recip_gamma({-static_cast<double>(k), 0.0}) != Complex{0.0, 0.0})
            ++bad_zeros;

    const double sec = timer.seconds();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d recurrence+reflection samples, %d over 1e-12; %d "
                  "nonzero values at nonpositive integers",
                  tested, bad, bad_zeros);
    report(7, "gamma kernel identities", bad == 0 && bad_zeros == 0, detail,
           sec);
}

// --- criterion 8: sector enforcement ----------------------------------------
void criterion_8() {
    Timer timer;
    std::mt19937_64 rng(20240822);
    std::uniform_real_distribution<double> urho(0.55, 4.0);
    std::uniform_real_distribution<double> ufrac(0.05, 0.95);
    std::uniform_real_distribution<double> uradius(0.3, 4.0);

    int silent = 0, wrong_error = 0;
    for (int i = 0; i < 100; ++i) {
        const double rho = urho(rng);
        const MLParameters p{rho, 1.0};
        const double lo = M_PI / (2.0 * rho);
        const double hi = std::min(M_PI, M_PI / rho);
        const double d1 = lo + ufrac(rng) * (hi - lo);
        const double d2 = lo + ufrac(rng) * (hi - lo);
        ContourSpec spec;
        try {
            spec = validate_contour(p, d1, d2, 0.5);
        } catch (const Error&) {
            continue;
        }
        SectorCondition sector;
        try {
            sector = sector_bounds(p, spec);
        } catch (const Error&) {
            continue;  // empty sector: nothing to violate
        }
        // an angle in the complementary arc, margin 0.05 rad off the edges
        const double gap = 2.0 * M_PI - (sector.upper - sector.lower);
        const double ang =
            sector.upper + 0.05 + ufrac(rng) * std::max(gap - 0.1, 1e-3);
        const PolarPoint z{uradius(rng), ang};
        try {
            (void)eval_integral(p, z, spec, 1e-8);
            ++silent;
        } catch (const Error& e) {
            if (e.code() != errc::sector_violation &&
                e.code() != errc::no_decay)
                ++wrong_error;
        }
    }
    const double sec = timer.seconds();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "100 out-of-sector attempts: %d silent values, %d "
                  "unexpected error kinds",
                  silent, wrong_error);
    report(8, "sector enforcement", silent == 0 && wrong_error == 0, detail,
           sec);
}

// --- dispatch invariant: auto choices survive cross-checking ---------------
void dispatch_lattice() {
    Timer timer;
    int evaluated = 0, flagged = 0, auto_failures = 0;
    const double rhos[] = {0.6, 1.0, 2.0};
    const Complex mus[] = {{1.0, 0.0}, {0.5, 0.0}, {2.0, 0.0}};
    const Complex zs[] = {{-0.5, 0.0}, {-2.0, 0.0}, {-6.0, 0.0},
                          {-6.0, 2.0}, {3.0, 0.0},  {0.0, 0.0}};
    for (double rho : rhos) {
        for (const Complex mu : mus) {
            const MLParameters p{rho, mu.real(), mu.imag()};
            for (const Complex z : zs) {
                try {
                    (void)evaluate(p, z);
                } catch (const Error&) {
                    ++auto_failures;
                    continue;
                }
                ++evaluated;
                const auto rep = cross_check(p, z);
                if (rep.any_flagged) ++flagged;
            }
        }
    }
    const double sec = timer.seconds();
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d lattice points evaluated, %d with flagged pairs, %d "
                  "auto failures",
                  evaluated, flagged, auto_failures);
    std::printf("[%s] dispatch invariant: auto never contradicts cross_check "
                "-- %s (%.2f s)\n",
                (flagged == 0 && auto_failures == 0) ? "PASS" : "FAIL", detail,
                sec);
    if (flagged != 0 || auto_failures != 0) ++failures;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    dispatch_lattice();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
