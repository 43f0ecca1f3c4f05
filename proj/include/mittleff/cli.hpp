#pragma once

// Command implementations behind the mittleff CLI. Everything here is plain
// functions over streams so the command surface is unit-testable without a
// process boundary; tools/mittleff_main.cpp only maps argv onto these.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mittleff/dispatch.hpp"
#include "mittleff/error.hpp"
#include "mittleff/integral.hpp"
#include "mittleff/params.hpp"
#include "mittleff/types.hpp"

namespace mittleff::cli {

// ---------------------------------------------------------------------------
// Formatting: every number in every emission goes through fmt17, so CSV and
// JSON carry byte-identical, round-trip-safe numerics.
// ---------------------------------------------------------------------------

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Input parsing
// ---------------------------------------------------------------------------

/// Complex literal: Cartesian "a+bi" (also "a", "bi", "i", "-i") or polar
/// "r@theta" with a declared angle in radians, unrestricted. Whitespace is
/// ignored.
struct ComplexInput {
    bool polar = false;
    double a = 0.0;  // re | radius
    double b = 0.0;  // im | angle

    Complex to_complex() const {
        return polar ? PolarPoint{a, b}.to_complex() : Complex{a, b};
    }
    /// Declared angle when polar; lifted principal argument otherwise.
    PolarPoint to_polar() const {
        return polar ? PolarPoint{a, b}
                     : PolarPoint::from_cartesian_lifted(Complex{a, b});
    }
};

namespace detail {

inline double parse_real(std::string_view s, const char* what) {
    if (s.empty()) fail(errc::parse_error, std::string("empty ") + what);
    std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(v))
        fail(errc::parse_error,
             std::string("cannot parse ") + what + " from '" + buf + "'");
    return v;
}

inline std::string strip_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

}  // namespace detail

inline ComplexInput parse_complex(std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    if (s.empty()) fail(errc::parse_error, "empty complex literal");

    if (auto at = s.find('@'); at != std::string::npos) {
        ComplexInput c;
        c.polar = true;
        c.a = detail::parse_real(std::string_view(s).substr(0, at), "radius");
        c.b = detail::parse_real(std::string_view(s).substr(at + 1), "angle");
        if (c.a < 0.0) fail(errc::parse_error, "polar radius must be >= 0");
        return c;
    }

    ComplexInput c;
    if (s.back() == 'i' || s.back() == 'I') {
        const std::string body = s.substr(0, s.size() - 1);
        // Split at the last sign that is not an exponent sign.
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        std::string re_part, im_part;
        if (split == std::string::npos) {
            im_part = body;
        } else {
            re_part = body.substr(0, split);
            im_part = body.substr(split);
        }
        c.a = re_part.empty() ? 0.0 : detail::parse_real(re_part, "real part");
        if (im_part.empty() || im_part == "+")
            c.b = 1.0;
        else if (im_part == "-")
            c.b = -1.0;
        else
            c.b = detail::parse_real(im_part, "imaginary part");
    } else {
        c.a = detail::parse_real(s, "real value");
        c.b = 0.0;
    }
    return c;
}

/// Grid specification "re0:re1:n,im0:im1:m"; n and m are point counts
/// (inclusive endpoints, count 1 collapses to the left endpoint, count 0
/// yields an empty axis).
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    long long count = 0;

    double at(long long i) const {
        if (count <= 1) return lo;
        return lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(count - 1);
    }
};

struct GridSpec {
    GridAxis re;
    GridAxis im;
};

inline GridSpec parse_grid(std::string_view text) {
    const std::string s = detail::strip_spaces(text);
    auto parse_axis = [](std::string_view part, const char* what) {
        GridAxis ax;
        const auto c1 = part.find(':');
        const auto c2 = part.find(':', c1 == std::string_view::npos ? 0 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            fail(errc::parse_error,
                 std::string("grid axis '") + std::string(part) +
                     "' must be lo:hi:count (" + what + ")");
        ax.lo = detail::parse_real(part.substr(0, c1), what);
        ax.hi = detail::parse_real(part.substr(c1 + 1, c2 - c1 - 1), what);
        const double n = detail::parse_real(part.substr(c2 + 1), "grid count");
        if (n < 0 || n != std::floor(n) || n > 1e7)
            fail(errc::parse_error, "grid count must be an integer in [0, 1e7]");
        ax.count = static_cast<long long>(n);
        return ax;
    };
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        fail(errc::parse_error, "grid must be re0:re1:n,im0:im1:m");
    GridSpec g;
    g.re = parse_axis(std::string_view(s).substr(0, comma), "re axis");
    g.im = parse_axis(std::string_view(s).substr(comma + 1), "im axis");
    return g;
}

inline MethodRequest parse_method(std::string_view s) {
    if (s == "auto") return MethodRequest::Auto;
    if (s == "series") return MethodRequest::Series;
    if (s == "integral") return MethodRequest::Integral;
    if (s == "closed") return MethodRequest::ClosedForm;
    fail(errc::parse_error,
         "method must be auto|series|integral|closed, got '" + std::string(s) +
             "'");
}

enum class Emit { Json, Csv };

inline Emit parse_emit(std::string_view s) {
    if (s == "json") return Emit::Json;
    if (s == "csv") return Emit::Csv;
    fail(errc::parse_error, "emit must be json|csv, got '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Record emission
// ---------------------------------------------------------------------------

/// One evaluation record; the schema is identical across eval and sweep.
struct OutputRecord {
    double rho = 0.0, mu_re = 0.0, mu_im = 0.0, z_re = 0.0, z_im = 0.0;
    bool has_value = false;
    double value_re = 0.0, value_im = 0.0, abs_err_est = 0.0;
    std::string method;                                     // empty if failed
    std::string status = "ok";                              // ok | errc name
    std::vector<std::pair<std::string, double>> diagnostics;  // flattened
};

inline OutputRecord make_record(const MLParameters& p, Complex z,
                                const EvaluationResult& r) {
    OutputRecord rec;
    rec.rho = p.rho;
    rec.mu_re = p.mu_re;
    rec.mu_im = p.mu_im;
    rec.z_re = z.real();
    rec.z_im = z.imag();
    rec.has_value = true;
    rec.value_re = r.value.real();
    rec.value_im = r.value.imag();
    rec.abs_err_est = r.abs_err_est;
    rec.method = method_name(r.method);
    rec.diagnostics.assign(r.diagnostics.begin(), r.diagnostics.end());
    return rec;
}

inline std::string to_json_line(const OutputRecord& r) {
    std::string s = "{";
    auto num = [&](const char* k, double v) {
        s += '"';
        s += k;
        s += "\":";
        s += fmt17(v);
        s += ',';
    };
    auto str = [&](const char* k, const std::string& v) {
        s += '"';
        s += k;
        s += "\":\"";
        s += v;
        s += "\",";
    };
    num("rho", r.rho);
    num("mu_re", r.mu_re);
    num("mu_im", r.mu_im);
    num("z_re", r.z_re);
    num("z_im", r.z_im);
    if (r.has_value) {
        num("value_re", r.value_re);
        num("value_im", r.value_im);
        num("abs_err_est", r.abs_err_est);
    } else {
        s += "\"value_re\":null,\"value_im\":null,\"abs_err_est\":null,";
    }
    str("method", r.method);
    str("status", r.status);
    s += "\"diagnostics\":{";
    for (std::size_t i = 0; i < r.diagnostics.size(); ++i) {
        if (i) s += ',';
        s += '"';
        s += r.diagnostics[i].first;
        s += "\":";
        s += fmt17(r.diagnostics[i].second);
    }
    s += "}}";
    return s;
}

inline std::string record_csv_header() {
    return "rho,mu_re,mu_im,z_re,z_im,value_re,value_im,abs_err_est,method,"
           "status,diagnostics";
}

inline std::string to_csv_row(const OutputRecord& r) {
    std::string s;
    s += fmt17(r.rho) + "," + fmt17(r.mu_re) + "," + fmt17(r.mu_im) + "," +
         fmt17(r.z_re) + "," + fmt17(r.z_im) + ",";
    if (r.has_value)
        s += fmt17(r.value_re) + "," + fmt17(r.value_im) + "," +
             fmt17(r.abs_err_est);
    else
        s += ",,";
    s += "," + r.method + "," + r.status + ",";
    for (std::size_t i = 0; i < r.diagnostics.size(); ++i) {
        if (i) s += ';';
        s += r.diagnostics[i].first + "=" + fmt17(r.diagnostics[i].second);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Commands. Each returns the process exit code and writes records to `out`,
// human diagnostics to `err`.
// ---------------------------------------------------------------------------

inline int exit_code_for(const Error& e) {
    if (is_parameter_error(e.code())) return 2;
    if (is_contour_violation(e.code())) return 3;
    if (is_convergence_failure(e.code())) return 4;
    return 2;
}

struct EvalOptions {
    MLParameters params{1.0, 1.0, 0.0};
    ComplexInput z;
    MethodRequest method = MethodRequest::Auto;
    double tol = 1e-10;
    std::optional<ContourSpec> spec;
    Emit emit = Emit::Json;
};

inline int cmd_eval(const EvalOptions& opt, std::ostream& out,
                    std::ostream& err) {
    try {
        const PolarPoint zp = opt.z.to_polar();
        const EvaluationResult r =
            evaluate(opt.params, zp, opt.method, opt.tol, opt.spec);
        OutputRecord rec = make_record(opt.params, opt.z.to_complex(), r);
        if (opt.emit == Emit::Csv)
            out << record_csv_header() << "\n" << to_csv_row(rec) << "\n";
        else
            out << to_json_line(rec) << "\n";
        if (auto it = r.diagnostics.find("condition_estimate");
            it != r.diagnostics.end() && it->second > 1e6)
            err << "warning: series condition estimate " << fmt17(it->second)
                << " (heavy cancellation); consider the integral backend\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

struct ClassifyOptions {
    MLParameters params{1.0, 1.0, 0.0};
    Emit emit = Emit::Json;
};

inline int cmd_classify(const ClassifyOptions& opt, std::ostream& out,
                        std::ostream& err) {
    try {
        const SingularityReport rep = classify_singularities(opt.params);
        const char* at_zero =
            rep.at_zero == SingularityReport::AtZero::Regular ? "regular"
            : rep.at_zero == SingularityReport::AtZero::Pole ? "pole"
                                                             : "branch_point";
        if (opt.emit == Emit::Csv) {
            out << "rho,mu_re,mu_im,at_one,at_zero,pole_order,regular_index,"
                   "branch\n";
            out << fmt17(opt.params.rho) << "," << fmt17(opt.params.mu_re)
                << "," << fmt17(opt.params.mu_im) << ",simple_pole,"
                << at_zero << "," << rep.pole_order << "," << rep.regular_index
                << ",\"" << rep.branch << "\"\n";
        } else {
            out << "{\"rho\":" << fmt17(opt.params.rho)
                << ",\"mu_re\":" << fmt17(opt.params.mu_re)
                << ",\"mu_im\":" << fmt17(opt.params.mu_im)
                << ",\"at_one\":\"simple_pole\",\"at_zero\":\"" << at_zero
                << "\",\"pole_order\":" << rep.pole_order
                << ",\"regular_index\":" << rep.regular_index
                << ",\"branch\":\"" << rep.branch << "\"}\n";
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

struct SweepOptions {
    MLParameters params{1.0, 1.0, 0.0};
    GridSpec grid;
    MethodRequest method = MethodRequest::Auto;
    double tol = 1e-10;
    std::optional<ContourSpec> spec;
    Emit emit = Emit::Json;
};

/// Row-major over the grid: re is the outer axis, im the inner. Failures are
/// per-row (status column); the process exits 0 unless the sweep itself is
/// malformed.
inline int cmd_sweep(const SweepOptions& opt, std::ostream& out,
                     std::ostream& err) {
    (void)err;
    if (opt.emit == Emit::Csv) out << record_csv_header() << "\n";
    for (long long i = 0; i < opt.grid.re.count; ++i) {
        for (long long j = 0; j < opt.grid.im.count; ++j) {
            const Complex z{opt.grid.re.at(i), opt.grid.im.at(j)};
            OutputRecord rec;
            try {
                const EvaluationResult r =
                    evaluate(opt.params, z, opt.method, opt.tol, opt.spec);
                rec = make_record(opt.params, z, r);
            } catch (const Error& e) {
                rec.rho = opt.params.rho;
                rec.mu_re = opt.params.mu_re;
                rec.mu_im = opt.params.mu_im;
                rec.z_re = z.real();
                rec.z_im = z.imag();
                rec.has_value = false;
                rec.status = e.code_name();
            }
            out << (opt.emit == Emit::Csv ? to_csv_row(rec) : to_json_line(rec))
                << "\n";
        }
    }
    return 0;
}

struct CheckOptions {
    MLParameters params{1.0, 1.0, 0.0};
    ComplexInput z;
    double tol = 1e-10;
    std::optional<ContourSpec> spec;
    Emit emit = Emit::Json;
};

inline int cmd_check(const CheckOptions& opt, std::ostream& out,
                     std::ostream& err) {
    try {
        const CrossCheckReport rep =
            cross_check(opt.params, opt.z.to_polar(), opt.tol, opt.spec);
        int evaluated = 0;
        for (const auto& e : rep.entries) evaluated += e.evaluated ? 1 : 0;

        if (opt.emit == Emit::Csv) {
            for (const auto& e : rep.entries) {
                if (e.evaluated)
                    out << "# " << method_name(e.method) << ": value=("
                        << fmt17(e.result.value.real()) << ","
                        << fmt17(e.result.value.imag())
                        << ") abs_err_est=" << fmt17(e.result.abs_err_est)
                        << "\n";
                else
                    out << "# " << method_name(e.method)
                        << ": skipped: " << e.skip_reason << "\n";
            }
            out << "method_a,method_b,abs_delta,combined_err,flagged\n";
            for (const auto& pr : rep.pairs)
                out << method_name(pr.a) << "," << method_name(pr.b) << ","
                    << fmt17(pr.abs_delta) << "," << fmt17(pr.combined_err)
                    << "," << (pr.flagged ? "true" : "false") << "\n";
        } else {
            const Complex z = opt.z.to_complex();
            out << "{\"rho\":" << fmt17(opt.params.rho)
                << ",\"mu_re\":" << fmt17(opt.params.mu_re)
                << ",\"mu_im\":" << fmt17(opt.params.mu_im)
                << ",\"z_re\":" << fmt17(z.real())
                << ",\"z_im\":" << fmt17(z.imag()) << ",\"methods\":[";
            for (std::size_t i = 0; i < rep.entries.size(); ++i) {
                const auto& e = rep.entries[i];
                if (i) out << ",";
                if (e.evaluated)
                    out << "{\"method\":\"" << method_name(e.method)
                        << "\",\"value_re\":" << fmt17(e.result.value.real())
                        << ",\"value_im\":" << fmt17(e.result.value.imag())
                        << ",\"abs_err_est\":" << fmt17(e.result.abs_err_est)
                        << "}";
                else {
                    std::string reason = e.skip_reason;
                    std::replace(reason.begin(), reason.end(), '"', '\'');
                    out << "{\"method\":\"" << method_name(e.method)
                        << "\",\"skipped\":\"" << reason << "\"}";
                }
            }
            out << "],\"pairs\":[";
            for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
                const auto& pr = rep.pairs[i];
                if (i) out << ",";
                out << "{\"a\":\"" << method_name(pr.a) << "\",\"b\":\""
                    << method_name(pr.b)
                    << "\",\"abs_delta\":" << fmt17(pr.abs_delta)
                    << ",\"combined_err\":" << fmt17(pr.combined_err)
                    << ",\"flagged\":" << (pr.flagged ? "true" : "false")
                    << "}";
            }
            out << "],\"ok\":" << (rep.any_flagged ? "false" : "true")
                << "}\n";
        }
        if (evaluated < 2)
            err << "warning: only " << evaluated
                << " backend(s) applicable; nothing to cross-check\n";
        return rep.any_flagged ? 1 : 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

struct ContourOptions {
    MLParameters params{1.0, 1.0, 0.0};
    ComplexInput z;
    double tol = 1e-10;
    std::optional<ContourSpec> spec;
    long long samples = 100;
    Emit emit = Emit::Json;
};

/// Emits N samples of (zeta_radius, zeta_angle, Phi_re, Phi_im, |Phi|) along
/// the built contour, preceded by a header record carrying the truncation
/// radius and sector bounds. Samples are spaced by arc length, S1 start
/// first.
inline int cmd_contour(const ContourOptions& opt, std::ostream& out,
                       std::ostream& err) {
    try {
        if (opt.samples < 1)
            fail(errc::parse_error, "samples must be >= 1");
        const ContourSpec spec =
            opt.spec ? *opt.spec : default_contour(opt.params);
        const SectorCondition sector = sector_bounds(opt.params, spec);
        const PolarPoint zp = opt.z.to_polar();
        if (!z_in_sector(zp, sector))
            fail(errc::sector_violation,
                 "arg z = " + std::to_string(zp.angle) +
                     " outside the admissible sector (" +
                     std::to_string(sector.lower) + ", " +
                     std::to_string(sector.upper) + ")");
        const double r_trunc =
            truncation_radius(opt.params, zp, spec, opt.tol / 8.0);
        const ContourPath path = build_contour(opt.params, spec, r_trunc);

        const double r0 = path.arc_radius;
        const double len_ray = path.r_trunc - r0;
        const double len_arc = r0 * (spec.delta1 + spec.delta2);
        const double total = 2.0 * len_ray + len_arc;

        auto point_at = [&](double u) -> PolarPoint {
            if (u <= len_ray) return PolarPoint{path.r_trunc - u, path.s1_angle};
            if (u <= len_ray + len_arc)
                return PolarPoint{r0, path.s1_angle + (u - len_ray) / r0};
            return PolarPoint{r0 + (u - len_ray - len_arc), path.s2_angle};
        };

        const Complex z = opt.z.to_complex();
        if (opt.emit == Emit::Csv) {
            out << "# contour_header rho=" << fmt17(opt.params.rho)
                << " mu_re=" << fmt17(opt.params.mu_re)
                << " mu_im=" << fmt17(opt.params.mu_im)
                << " z_re=" << fmt17(z.real()) << " z_im=" << fmt17(z.imag())
                << " delta1=" << fmt17(spec.delta1)
                << " delta2=" << fmt17(spec.delta2)
                << " epsilon=" << fmt17(spec.epsilon)
                << " r_trunc=" << fmt17(r_trunc)
                << " sector_lower=" << fmt17(sector.lower)
                << " sector_upper=" << fmt17(sector.upper)
                << " samples=" << opt.samples << "\n";
            out << "zeta_radius,zeta_angle,phi_re,phi_im,phi_abs\n";
        } else {
            out << "{\"record\":\"contour_header\",\"rho\":"
                << fmt17(opt.params.rho)
                << ",\"mu_re\":" << fmt17(opt.params.mu_re)
                << ",\"mu_im\":" << fmt17(opt.params.mu_im)
                << ",\"z_re\":" << fmt17(z.real())
                << ",\"z_im\":" << fmt17(z.imag())
                << ",\"delta1\":" << fmt17(spec.delta1)
                << ",\"delta2\":" << fmt17(spec.delta2)
                << ",\"epsilon\":" << fmt17(spec.epsilon)
                << ",\"r_trunc\":" << fmt17(r_trunc)
                << ",\"sector_lower\":" << fmt17(sector.lower)
                << ",\"sector_upper\":" << fmt17(sector.upper)
                << ",\"samples\":" << opt.samples << "}\n";
        }

        for (long long i = 0; i < opt.samples; ++i) {
            const double u =
                opt.samples == 1
                    ? 0.0
                    : total * static_cast<double>(i) /
                          static_cast<double>(opt.samples - 1);
            const PolarPoint zeta = point_at(u);
            const Complex phi = phi_integrand(opt.params, zeta, zp);
            if (opt.emit == Emit::Csv) {
                out << fmt17(zeta.radius) << "," << fmt17(zeta.angle) << ","
                    << fmt17(phi.real()) << "," << fmt17(phi.imag()) << ","
                    << fmt17(std::abs(phi)) << "\n";
            } else {
                out << "{\"record\":\"contour_sample\",\"zeta_radius\":"
                    << fmt17(zeta.radius)
                    << ",\"zeta_angle\":" << fmt17(zeta.angle)
                    << ",\"phi_re\":" << fmt17(phi.real())
                    << ",\"phi_im\":" << fmt17(phi.imag())
                    << ",\"phi_abs\":" << fmt17(std::abs(phi)) << "}\n";
            }
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace mittleff::cli
