#include "bcalc/examples.hpp"

#include <cmath>

namespace bcalc::examples {

double flat_bump(double t) {
  if (t < 0 || t >= 1) return 0.0;
  return std::exp(-t * t / (1.0 - t * t));
}

double log_bump(double s) {
  const double r = std::log(s) / std::log(2.0);
  if (std::abs(r) >= 1) return 0.0;
  return std::exp(-1.0 / (1.0 - r * r));
}

SampledFunction2D sqrt_distance() {
  return {[](double x, double y) { return std::sqrt(x * x + y * y); }, 1.0, "sqrt(x^2+y^2): conormal at the corner"};
}

double sqrt_distance_pushforward(double x) {
  const double r = std::sqrt(1.0 + x * x);
  return 0.5 * r + 0.5 * x * x * std::log(1.0 + r) - 0.5 * x * x * std::log(x);
}

double hyperbola_v(double xi, double eta) { return flat_bump(xi) * flat_bump(eta); }

SampledFunction2D hyperbola_kernel() {
  return {[](double x, double y) { return hyperbola_v(x / y, y) / y; }, 1.0,
          "y^{-1} v(x/y, y): smooth on the blown-up corner"};
}

HalflineFunction test_bump(double lo, double hi) {
  const double mid = 0.5 * (std::log(lo) + std::log(hi));
  const double half = 0.5 * (std::log(hi) - std::log(lo));
  return {[mid, half](double x) {
            const double r = (std::log(x) - mid) / half;
            return std::abs(r) >= 1 ? 0.0 : std::exp(-1.0 / (1.0 - r * r));
          },
          lo, hi};
}

BDiffOp constant_operator(const std::vector<Rational>& coeffs) {
  std::vector<ExactComplex> c;
  for (const auto& r : coeffs) c.emplace_back(r);
  return BDiffOp::from_polynomial(Polynomial(std::move(c)));
}

}  // namespace bcalc::examples
