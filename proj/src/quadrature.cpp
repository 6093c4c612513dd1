#include "bcalc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bcalc {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 61>;

struct Panel {
  double a, b, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel panel(const RealFunction& f, double a, double b, int depth) {
  double err = 0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err, depth};
}

/// Globally adaptive bisection of the worst panel.
QuadResult adaptive(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  heap.push(panel(f, a, b, 0));
  double value = heap.top().value;
  double error = heap.top().error;
  std::vector<Panel> finished;
  const int max_panels = 4000;
  int panels = 1;
  while (!heap.empty()) {
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) break;
    Panel worst = heap.top();
    heap.pop();
    if (worst.depth >= spec.max_depth || panels >= max_panels) {
      finished.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = panel(f, worst.a, mid, worst.depth + 1);
    Panel right = panel(f, mid, worst.b, worst.depth + 1);
    panels += 2;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute the sums to avoid drift from incremental updates.
  double v = 0;
  double e = 0;
  for (const auto& p : finished) v += p.value, e += p.error;
  while (!heap.empty()) v += heap.top().value, e += heap.top().error, heap.pop();
  QuadResult out;
  out.value = v;
  out.error = e;
  out.converged = std::isfinite(v) && e <= std::max(spec.abs_tol, spec.rel_tol * std::abs(v));
  return out;
}

void accumulate(QuadResult& into, const QuadResult& piece) {
  into.value += piece.value;
  into.error += piece.error;
  into.converged = into.converged && piece.converged;
  into.divergent = into.divergent || piece.divergent;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0)) throw std::invalid_argument("quadrature tolerances must be positive");
  if (max_depth < 0) throw std::invalid_argument("quadrature max_depth must be non-negative");
}

QuadResult integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec,
                     const std::vector<double>& breaks) {
  spec.validate();
  if (!(a < b)) return {};
  std::vector<double> cuts{a};
  for (double c : breaks) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  QuadResult out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) accumulate(out, adaptive(f, cuts[i], cuts[i + 1], spec));
  }
  return out;
}

QuadResult integrate_to_zero(const RealFunction& f, double hi, const QuadratureSpec& spec,
                             const std::vector<double>& breaks) {
  spec.validate();
  if (!(hi > 0)) throw std::invalid_argument("integrate_to_zero: upper limit must be positive");
  const double t_hi = std::log(hi);
  double t_break = t_hi;
  std::vector<double> tbreaks;
  for (double c : breaks) {
    if (c > 0 && c < hi) {
      tbreaks.push_back(std::log(c));
      t_break = std::min(t_break, tbreaks.back());
    }
  }
  const RealFunction g = [&f](double t) {
    const double y = std::exp(t);
    return f(y) * y;
  };
  const QuadratureSpec shell_spec{spec.abs_tol * 1e-2, spec.rel_tol, spec.max_depth};

  QuadResult out;
  std::vector<double> shells;
  const double t_floor = -700.0;
  for (int j = 0;; ++j) {
    const double t1 = t_hi - j;
    const double t0 = t1 - 1.0;
    if (t0 < t_floor) {
      out.converged = false;
      return out;
    }
    const QuadResult s = integrate(g, t0, t1, shell_spec, tbreaks);
    accumulate(out, s);
    if (!std::isfinite(s.value)) {
      out.divergent = true;
      out.converged = false;
      return out;
    }
    if (t0 > t_break) continue;
    shells.push_back(s.value);
    const std::size_t n = shells.size();
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    if (n >= 2 && std::abs(shells[n - 1]) <= 0.1 * tol && std::abs(shells[n - 2]) <= 0.1 * tol) {
      return out;
    }
    if (n < 5) continue;
    double ratios[4];
    bool defined = true;
    for (int k = 0; k < 4; ++k) {
      const double prev = shells[n - 2 - static_cast<std::size_t>(k)];
      if (prev == 0) {
        defined = false;
        break;
      }
      ratios[k] = shells[n - 1 - static_cast<std::size_t>(k)] / prev;
    }
    if (!defined) continue;
    bool growing = true;
    bool stable = true;
    for (int k = 0; k < 4; ++k) {
      growing = growing && std::abs(ratios[k]) >= 1.0 - 1e-9;
      if (k > 0) stable = stable && std::abs(ratios[k] - ratios[0]) <= 1e-9;
    }
    if (growing) {
      out.divergent = true;
      out.converged = false;
      return out;
    }
    const double r = ratios[0];
    if (stable && r > 0 && r < 1.0 - 1e-9) {
      out.value += shells[n - 1] * r / (1.0 - r);
      return out;
    }
  }
}

QuadResult integrate_to_infinity(const RealFunction& f, double lo, const QuadratureSpec& spec,
                                 const std::vector<double>& breaks) {
  if (!(lo > 0)) throw std::invalid_argument("integrate_to_infinity: lower limit must be positive");
  std::vector<double> ubreaks;
  for (double c : breaks) {
    if (c > lo) ubreaks.push_back(1.0 / c);
  }
  const RealFunction g = [&f](double u) { return f(1.0 / u) / (u * u); };
  return integrate_to_zero(g, 1.0 / lo, spec, ubreaks);
}

std::vector<double> GeometricGrid::points() const {
  if (!(start > 0) || !(ratio > 0 && ratio < 1) || count < 1) {
    throw std::invalid_argument("geometric grid needs start > 0, 0 < ratio < 1, count >= 1");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(start * std::pow(ratio, k));
  return out;
}

std::string GeometricGrid::describe() const {
  std::ostringstream os;
  os << std::setprecision(12) << "geometric x_k = " << start << " * " << ratio << "^k, k < " << count;
  return os.str();
}

bool Samples::all_ok() const { return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; }); }

}  // namespace bcalc
