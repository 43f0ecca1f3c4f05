// mittleff: evaluate the two-parameter Mittag-Leffler function, classify the
// singular points of its contour integrand, sweep z grids, cross-check
// backends, and dump contour samples. See README for the record schemas and
// exit codes.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mittleff/cli.hpp"
#include "mittleff/mittleff.hpp"

namespace {

using namespace mittleff;

struct CommonArgs {
    std::optional<double> rho;
    std::optional<double> alpha;
    std::string mu = "1";
    std::string method = "auto";
    double tol = 1e-10;
    std::optional<double> delta1;
    std::optional<double> delta2;
    std::optional<double> epsilon;
    std::string emit = "json";
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_method = true) {
    auto* rho =
        cmd->add_option("--rho", a.rho, "rho parameter (series convention)");
    auto* alpha = cmd->add_option("--alpha", a.alpha,
                                  "alpha = 1/rho (Bateman convention)");
    rho->excludes(alpha);
    alpha->excludes(rho);
    cmd->add_option("--mu", a.mu, "mu parameter, complex literal (default 1)");
    if (with_method)
        cmd->add_option("--method", a.method,
                        "auto|series|integral|closed (default auto)");
    cmd->add_option("--tol", a.tol, "absolute tolerance (default 1e-10)");
    cmd->add_option("--delta1", a.delta1, "contour ray angle override (rad)");
    cmd->add_option("--delta2", a.delta2, "contour ray angle override (rad)");
    cmd->add_option("--epsilon", a.epsilon, "contour arc radius minus 1");
    cmd->add_option("--emit", a.emit, "json|csv (default json)");
}

MLParameters params_from(const CommonArgs& a) {
    double rho = 0.0;
    if (a.rho)
        rho = *a.rho;
    else if (a.alpha) {
        if (*a.alpha <= 0.0)
            fail(errc::rho_out_of_range, "alpha must be > 0");
        rho = 1.0 / *a.alpha;
    } else {
        fail(errc::parse_error, "one of --rho / --alpha is required");
    }
    const cli::ComplexInput mu = cli::parse_complex(a.mu);
    const Complex muc = mu.to_complex();
    return MLParameters(rho, muc.real(), muc.imag());
}

std::optional<ContourSpec> spec_from(const MLParameters& p,
                                     const CommonArgs& a) {
    if (!a.delta1 && !a.delta2 && !a.epsilon) return std::nullopt;
    const double eps = a.epsilon ? *a.epsilon : 0.5;
    if (a.delta1 || a.delta2) {
        const ContourSpec defaults = default_contour(p, eps);
        return validate_contour(p, a.delta1 ? *a.delta1 : defaults.delta1,
                                a.delta2 ? *a.delta2 : defaults.delta2, eps);
    }
    return default_contour(p, eps);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-parameter Mittag-Leffler function evaluator"};
    app.require_subcommand(1);

    CommonArgs eval_args, classify_args, sweep_args, check_args, contour_args;
    std::string eval_z, check_z, contour_z, sweep_grid;
    long long contour_samples = 100;

    auto* c_eval = app.add_subcommand("eval", "evaluate E_{rho,mu}(z)");
    add_common(c_eval, eval_args);
    c_eval->add_option("--z", eval_z, "evaluation point, \"a+bi\" or \"r@theta\"")
        ->required();

    auto* c_classify = app.add_subcommand(
        "classify", "classify the integrand's singular points");
    add_common(c_classify, classify_args, /*with_method=*/false);

    auto* c_sweep = app.add_subcommand("sweep", "evaluate over a z grid");
    add_common(c_sweep, sweep_args);
    c_sweep->add_option("--grid", sweep_grid, "re0:re1:n,im0:im1:m")->required();

    auto* c_check =
        app.add_subcommand("check", "cross-check all applicable backends");
    add_common(c_check, check_args, /*with_method=*/false);
    c_check->add_option("--z", check_z, "evaluation point")->required();

    auto* c_contour =
        app.add_subcommand("contour", "sample the integrand along the contour");
    add_common(c_contour, contour_args, /*with_method=*/false);
    c_contour->add_option("--z", contour_z, "evaluation point")->required();
    c_contour->add_option("--samples", contour_samples,
                          "number of contour samples (default 100)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_eval->parsed()) {
            cli::EvalOptions opt{params_from(eval_args),
                                 cli::parse_complex(eval_z),
                                 cli::parse_method(eval_args.method),
                                 eval_args.tol,
                                 {},
                                 cli::parse_emit(eval_args.emit)};
            opt.spec = spec_from(opt.params, eval_args);
            return cli::cmd_eval(opt, std::cout, std::cerr);
        }
        if (c_classify->parsed()) {
            cli::ClassifyOptions opt{params_from(classify_args),
                                     cli::parse_emit(classify_args.emit)};
            return cli::cmd_classify(opt, std::cout, std::cerr);
        }
        if (c_sweep->parsed()) {
            cli::SweepOptions opt{params_from(sweep_args),
                                  cli::parse_grid(sweep_grid),
                                  cli::parse_method(sweep_args.method),
                                  sweep_args.tol,
                                  {},
                                  cli::parse_emit(sweep_args.emit)};
            opt.spec = spec_from(opt.params, sweep_args);
            return cli::cmd_sweep(opt, std::cout, std::cerr);
        }
        if (c_check->parsed()) {
            cli::CheckOptions opt{params_from(check_args),
                                  cli::parse_complex(check_z),
                                  check_args.tol,
                                  {},
                                  cli::parse_emit(check_args.emit)};
            opt.spec = spec_from(opt.params, check_args);
            return cli::cmd_check(opt, std::cout, std::cerr);
        }
        if (c_contour->parsed()) {
            cli::ContourOptions opt{params_from(contour_args),
                                    cli::parse_complex(contour_z),
                                    contour_args.tol,
                                    {},
                                    contour_samples,
                                    cli::parse_emit(contour_args.emit)};
            opt.spec = spec_from(opt.params, contour_args);
            return cli::cmd_contour(opt, std::cout, std::cerr);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::exit_code_for(e);
    }
    return 2;
}
