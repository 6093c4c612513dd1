#include "bcalc/stencil.hpp"

#include <cmath>
#include <stdexcept>

namespace bcalc {

std::vector<std::vector<double>> fornberg_weights(double x0, const std::vector<double>& nodes,
                                                  int max_order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || max_order < 0) throw std::invalid_argument("fornberg_weights: empty stencil");
  const auto m = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(nodes.size(), 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[ui] - x0;
    for (int j = 0; j < i; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const double c3 = nodes[ui] - nodes[uj];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k > 0; --k) {
          const auto uk = static_cast<std::size_t>(k);
          c[uk][ui] = c1 * (k * c[uk - 1][ui - 1] - c5 * c[uk][ui - 1]) / c2;
        }
        c[0][ui] = -c1 * c5 * c[0][ui - 1] / c2;
      }
      for (int k = mn; k > 0; --k) {
        const auto uk = static_cast<std::size_t>(k);
        c[uk][uj] = (c4 * c[uk][uj] - k * c[uk - 1][uj]) / c3;
      }
      c[0][uj] = c4 * c[0][uj] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> log_derivatives(const RealFunction& u, double x, int max_order, double step,
                                    int half_width) {
  if (!(x > 0)) throw std::invalid_argument("log_derivatives: x must be positive");
  if (2 * half_width < max_order) throw std::invalid_argument("log_derivatives: stencil too short");
  std::vector<double> nodes;
  std::vector<double> values;
  for (int k = -half_width; k <= half_width; ++k) {
    nodes.push_back(k * step);
    values.push_back(u(x * std::exp(k * step)));
  }
  const auto w = fornberg_weights(0.0, nodes, max_order);
  std::vector<double> out;
  for (const auto& row : w) {
    double acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * values[i];
    out.push_back(acc);
  }
  return out;
}

}  // namespace bcalc
