#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace bcalc {

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod subdivision to max_depth levels.
struct QuadratureSpec {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_depth = 18;

  void validate() const;
};

struct QuadResult {
  double value = 0;
  double error = 0;
  bool converged = true;
  bool divergent = false;
};

/// Integral over [a, b], split at the given interior break points.
QuadResult integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec,
                     const std::vector<double>& breaks = {});

/// Integral over (0, hi]. Works in unit shells of log y from hi downward,
/// passing all break points, and stops once shells fall below tolerance.
/// Shells that stop shrinking flag divergence; a stable geometric decay
/// is summed in closed form.
QuadResult integrate_to_zero(const RealFunction& f, double hi, const QuadratureSpec& spec,
                             const std::vector<double>& breaks = {});

/// Integral over [lo, infinity), by y = 1/u.
QuadResult integrate_to_infinity(const RealFunction& f, double lo, const QuadratureSpec& spec,
                                 const std::vector<double>& breaks = {});

/// Function on (0, infinity) with support in [lo, hi]; hi may be infinite.
struct HalflineFunction {
  RealFunction f;
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
};

/// x_k = start * ratio^k, k = 0..count-1 (decreasing towards 0).
struct GeometricGrid {
  double start = 0.2;
  double ratio = 0.8;
  int count = 60;

  std::vector<double> points() const;
  std::string describe() const;
};

struct Samples {
  std::vector<double> x;
  std::vector<double> values;
  std::vector<bool> ok;  // per-point convergence flag
  std::string meta;

  bool all_ok() const;
};

}  // namespace bcalc
