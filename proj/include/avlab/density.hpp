#pragma once

#include <span>
#include <vector>

#include "avlab/zeta.hpp"

namespace avlab {

struct CurveSample {
    double t = 0.0;
    cplx z;  // zeta(sigma + i t)
    cplx zp; // zeta'(sigma + i t)
    double sigma = 0.0;
};

struct IdentityResidual {
    double t = 0.0;
    double residual = 0.0; // |2 Re zeta'/zeta(1/2 + it) + log(t/2pi)|, O(1/t)
};

// The functional equation forces 2 Re zeta'/zeta(1/2+it) = -log(t/2pi) +
// O(1/t); returns the deviation. Requires t >= 2; throws NearZeroOfZeta when
// the first-order distance to a zero, |zeta|/|zeta'|, is below 1e-3 (the
// quotient would exceed ~1e3 there and the residual would be meaningless).
IdentityResidual critical_line_identity(double t, const EvalConfig& cfg = {});

// min over t = 2, 2+step, ... <= t_max of max(|zeta(1/2+it) - a|,
// |zeta'(1/2+it) - a|): how far the curve stays from simultaneously hitting
// the value a with derivative a. Requires real |a| >= 10 and step > 0.
double nondensity_margin(double a, double t_max, double step, const EvalConfig& cfg = {});

// empirical constant of the left-half-plane growth bound: min over the grid
// of |zeta(sigma+it)| log|t| / |t|^(1/2-sigma). Requires sigma <= 0 and every
// |t| >= 2.
double left_lower_bound(double sigma, std::span<const double> t_grid,
                        const EvalConfig& cfg = {});

// evenly spaced kernel samples from t_min to the grid point nearest t_max,
// strictly increasing in t
std::vector<CurveSample> sample_curve(double sigma, double t_min, double t_max, double step,
                                      const EvalConfig& cfg = {});

} // namespace avlab
