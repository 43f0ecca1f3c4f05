#pragma once

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>

#include "mittleff/error.hpp"
#include "mittleff/types.hpp"

namespace testutil {

inline double rel_err(mittleff::Complex got, mittleff::Complex want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

inline void check_close(mittleff::Complex got, mittleff::Complex want,
                        double rel_tol) {
    INFO("got  = " << got.real() << " + " << got.imag() << "i");
    INFO("want = " << want.real() << " + " << want.imag() << "i");
    CHECK(rel_err(got, want) <= rel_tol);
}

template <class F>
void expect_error(mittleff::errc code, F&& f) {
    try {
        f();
        FAIL("expected error " << mittleff::errc_name(code));
    } catch (const mittleff::Error& e) {
        INFO("message: " << e.what());
        CHECK(e.code() == code);
    }
}

}  // namespace testutil
