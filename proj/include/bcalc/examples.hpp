#pragma once

#include "bcalc/b_calculus.hpp"
#include "bcalc/phg_numeric.hpp"

namespace bcalc::examples {

/// exp(-t^2 / (1 - t^2)) on [0, 1), 0 beyond; flat at t = 1, value 1 at t = 0.
double flat_bump(double t);

/// exp(-1 / (1 - (log s / log 2)^2)) on [1/2, 2].
double log_bump(double s);

/// u = sqrt(x^2 + y^2) on y in (0, 1].
SampledFunction2D sqrt_distance();
/// 1/2 sqrt(1 + x^2) + (x^2/2) log(1 + sqrt(1 + x^2)) - (x^2/2) log x
double sqrt_distance_pushforward(double x);

/// u = y^{-1} v(x/y, y) with v(xi, eta) = flat_bump(xi) flat_bump(eta).
SampledFunction2D hyperbola_kernel();
double hyperbola_v(double xi, double eta);

/// Bump supported in [lo, hi].
HalflineFunction test_bump(double lo, double hi);

/// p(x d/dx) with real rational coefficients, lowest degree first.
BDiffOp constant_operator(const std::vector<Rational>& coeffs);

}  // namespace bcalc::examples
