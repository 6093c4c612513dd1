#pragma once

#include "bcalc/quadrature.hpp"

#include <vector>

namespace bcalc {

/// Finite-difference weights w[d][i] for the d-th derivative at x0 from
/// values at nodes[i], d = 0..max_order (Fornberg's recursion).
std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& nodes,
                                                  int max_order);

/// (x d/dx)^j u at x for j = 0..max_order, from a centred stencil of
/// 2 * half_width + 1 points equally spaced by `step` in log x.
std::vector<double> log_derivatives(const RealFunction& u, double x, int max_order, double step,
                                    int half_width);

}  // namespace bcalc
