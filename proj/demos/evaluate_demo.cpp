// Minimal library walkthrough: evaluate E_{rho,mu}(z) with each backend and
// show the classifier. Build target: demo_evaluate.

#include <cstdio>

#include "mittleff/mittleff.hpp"

using namespace mittleff;

int main() {
    const Complex z{-2.0, 0.5};

    std::printf("E_{rho,mu}(-2+0.5i) by backend\n");
    for (const auto& [rho, mu] : {std::pair{1.0, 2.0}, {0.8, 1.0}, {2.0, 1.0}}) {
        const MLParameters p{rho, mu};
        const auto r = evaluate(p, z);
        std::printf("  rho=%-4g mu=%-4g -> % .15g %+.15gi  (%s, est %.1e)\n",
                    rho, mu, r.value.real(), r.value.imag(),
                    method_name(r.method), r.abs_err_est);
    }

    std::printf("\ncross-check at rho=1, mu=3, z=-2\n");
    const auto rep = cross_check(MLParameters{1.0, 3.0}, Complex{-2.0, 0.0});
    for (const auto& e : rep.entries) {
        if (e.evaluated)
            std::printf("  %-11s % .15g %+.15gi\n", method_name(e.method),
                        e.result.value.real(), e.result.value.imag());
        else
            std::printf("  %-11s skipped: %s\n", method_name(e.method),
                        e.skip_reason.c_str());
    }

    std::printf("\nintegrand singularities at zeta=0 across parameters\n");
    for (const auto& [rho, mu] : {std::pair{1.0, 3.0}, {0.7, 1.0}, {2.0, 0.5}}) {
        const auto s = classify_singularities(MLParameters{rho, mu});
        std::printf("  rho=%-4g mu=%-4g -> %s\n", rho, mu, s.branch.c_str());
    }
    return 0;
}
