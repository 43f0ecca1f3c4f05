#pragma once

// Umbrella header: two-parameter Mittag-Leffler function E_{rho,mu}(z) by
// power series, contour-integral quadrature, and residue-based closed forms,
// plus the singular-point classifier for the contour integrand.

#include "mittleff/contour.hpp"
#include "mittleff/dispatch.hpp"
#include "mittleff/error.hpp"
#include "mittleff/gamma.hpp"
#include "mittleff/integral.hpp"
#include "mittleff/params.hpp"
#include "mittleff/quadrature.hpp"
#include "mittleff/series.hpp"
#include "mittleff/types.hpp"
