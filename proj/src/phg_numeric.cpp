#include "bcalc/phg_numeric.hpp"

#include "bcalc/errors.hpp"
#include "bcalc/stencil.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bcalc {

namespace {

double basis(double x, double z, int p) {
  const double v = std::pow(x, z);
  return p == 0 ? v : v * std::pow(-std::log(x), p);
}

struct Solve {
  Eigen::VectorXd coeffs;
  double residual = 0;
};

Solve least_squares(const std::vector<double>& x, const std::vector<double>& y, const EntryList& entries,
                    double guard) {
  const auto rows = static_cast<Eigen::Index>(x.size());
  const auto cols = static_cast<Eigen::Index>(entries.size());
  if (rows < cols) throw FitError(FitError::Kind::conditioning, "fewer samples than basis functions");
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    b(i) = y[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& e = entries[static_cast<std::size_t>(k)];
      a(i, k) = basis(x[static_cast<std::size_t>(i)], to_double(e.z.re), e.p);
    }
  }
  const Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index k = 0; k < cols; ++k) {
    if (scale(k) == 0) throw FitError(FitError::Kind::conditioning, "basis column vanishes on the grid");
    a.col(k) /= scale(k);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < guard)) {
    std::ostringstream os;
    os << "basis condition number " << cond << " exceeds guard " << guard;
    throw FitError(FitError::Kind::conditioning, os.str());
  }
  Solve out;
  out.coeffs = svd.solve(b).cwiseQuotient(scale);
  const Eigen::VectorXd r = b - a * svd.solve(b);
  out.residual = r.cwiseAbs().maxCoeff();
  return out;
}

double pushforward_at(const SampledFunction2D& u, double x, const QuadratureSpec& spec, bool& ok) {
  const RealFunction f = [&](double y) { return u.u(x, y); };
  const QuadResult r = integrate_to_zero(f, u.support, spec, {x});
  ok = r.converged && !r.divergent;
  return r.value;
}

}  // namespace

Samples numeric_pushforward(const SampledFunction2D& u, const QuadratureSpec& spec,
                            const std::vector<double>& x_grid) {
  if (!(u.support > 0)) throw std::invalid_argument("push-forward needs a positive support bound");
  Samples out;
  out.meta = "int_0^C u(x, y) dy, C = " + std::to_string(u.support);
  for (double x : x_grid) {
    bool ok = false;
    const double v = pushforward_at(u, x, spec, ok);
    out.x.push_back(x);
    out.values.push_back(v);
    out.ok.push_back(ok);
  }
  return out;
}

RealFunction smooth_cutoff(double a, double b) {
  if (!(0 < a && a < b)) throw std::invalid_argument("smooth_cutoff needs 0 < a < b");
  return [a, b](double eta) {
    const double t = (b - eta) / (b - a);
    if (t <= 0) return 0.0;
    if (t >= 1) return 1.0;
    const double f = std::exp(-1.0 / t);
    const double g = std::exp(-1.0 / (1.0 - t));
    return f / (f + g);
  };
}

ChartSplit chart_split_pushforward(const SampledFunction2D& u, const RealFunction& chi, double chi_support,
                                   const QuadratureSpec& spec, const std::vector<double>& x_grid) {
  ChartSplit out;
  for (double x : x_grid) {
    const double eta_max = std::min(chi_support, u.support / x);
    const RealFunction fa = [&](double eta) { return x * u.u(x, x * eta) * chi(eta); };
    const QuadResult a = integrate_to_zero(fa, eta_max, spec, {1.0});
    const RealFunction fb = [&](double y) { return u.u(x, y) * (1.0 - chi(y / x)); };
    QuadResult b = integrate_to_zero(fb, u.support, spec, {x, chi_support * x});
    for (auto* s : {&out.a, &out.b, &out.sum}) s->x.push_back(x);
    out.a.values.push_back(a.value);
    out.b.values.push_back(b.value);
    out.sum.values.push_back(a.value + b.value);
    out.a.ok.push_back(a.converged);
    out.b.ok.push_back(b.converged);
    out.sum.ok.push_back(a.converged && b.converged);
  }
  return out;
}

double PhgExpansion::coeff(const Rational& z, int p) const {
  for (const auto& t : terms) {
    if (t.z == z && t.p == p) return t.coeff;
  }
  return 0;
}

double PhgExpansion::coeff_log_x(const Rational& z, int p) const {
  return (p % 2 == 0 ? 1.0 : -1.0) * coeff(z, p);
}

double PhgExpansion::evaluate(double x) const {
  double acc = 0;
  for (const auto& t : terms) acc += t.coeff * basis(x, to_double(t.z), t.p);
  return acc;
}

PhgExpansion fit_expansion(const Samples& samples, const IndexSet& candidate, const Rational& cutoff,
                           const FitOptions& options) {
  PhgExpansion out;
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < samples.x.size(); ++i) {
    if (i < samples.ok.size() && !samples.ok[i]) continue;
    x.push_back(samples.x[i]);
    y.push_back(samples.values[i]);
  }
  if (x.size() != samples.x.size()) {
    out.warnings.push_back(std::to_string(samples.x.size() - x.size()) + " unconverged samples skipped");
  }
  EntryList entries;
  for (const auto& e : candidate.truncate(cutoff)) {
    if (!e.z.is_real()) throw std::invalid_argument("fits use real exponents only; got " + to_string(e));
    const auto clash = std::find_if(entries.begin(), entries.end(), [&](const IndexEntry& k) {
      return k.p == e.p && std::abs(to_double(k.z.re - e.z.re)) < options.merge_gap;
    });
    if (clash != entries.end()) {
      out.warnings.push_back("merged " + to_string(e) + " into " + to_string(*clash));
      continue;
    }
    entries.push_back(e);
  }
  if (entries.empty()) throw std::invalid_argument("candidate set has no members below the cutoff");

  const Solve full = least_squares(x, y, entries, options.condition_guard);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    out.terms.push_back({entries[k].z.re, entries[k].p, full.coeffs(static_cast<Eigen::Index>(k))});
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const PhgTerm& a, const PhgTerm& b) {
    return a.z != b.z ? a.z < b.z : a.p < b.p;
  });
  out.fit_residual = full.residual;
  double ymax = 0;
  for (double v : y) ymax = std::max(ymax, std::abs(v));
  out.noise_floor = 1e3 * std::numeric_limits<double>::epsilon() * ymax;
  std::ostringstream meta;
  meta << x.size() << " points, x in [" << *std::min_element(x.begin(), x.end()) << ", "
       << *std::max_element(x.begin(), x.end()) << "], basis x^z log^p(1/x), Re z <= " << format_rational(cutoff);
  out.grid_meta = meta.str() + (samples.meta.empty() ? "" : "; " + samples.meta);

  const auto shrink = static_cast<std::size_t>(options.shrink);
  if (x.size() > shrink + entries.size()) {
    const std::vector<double> xs(x.begin() + static_cast<std::ptrdiff_t>(shrink), x.end());
    const std::vector<double> ys(y.begin() + static_cast<std::ptrdiff_t>(shrink), y.end());
    const Solve sub = least_squares(xs, ys, entries, options.condition_guard);
    out.subgrid_residual = sub.residual;
    if (full.residual <= out.noise_floor && sub.residual <= out.noise_floor) {
      out.residual_order = std::numeric_limits<double>::quiet_NaN();
    } else {
      out.residual_order = std::log(sub.residual / full.residual) / std::log(xs.front() / x.front());
      if (options.check_decay && out.residual_order < to_double(cutoff) - options.order_slack) {
        std::ostringstream os;
        os << "fit rejected: residual decays like x^" << out.residual_order << " (full " << full.residual
           << ", sub-grid " << sub.residual << "), expected at least x^" << to_double(cutoff);
        throw FitError(FitError::Kind::no_decay, os.str());
      }
    }
  } else {
    out.residual_order = std::numeric_limits<double>::quiet_NaN();
    out.warnings.push_back("grid too short for the sub-grid decay check");
  }
  return out;
}

PredictionCheck compare_to_prediction(const PhgExpansion& fit, const IndexSet& prediction, double coeff_tol) {
  PredictionCheck out;
  for (const auto& t : fit.terms) {
    const IndexEntry e(Exponent(t.z), t.p);
    const bool predicted = prediction.contains(e);
    const bool present = std::abs(t.coeff) > coeff_tol;
    if (present && !predicted) out.extra.push_back(e);
    if (!present && predicted) out.missing.push_back(e);
  }
  out.contained = out.extra.empty();
  return out;
}

Samples solve_model_ode(const ExactComplex& c, const HalflineFunction& v, const std::vector<double>& x_grid,
                        const QuadratureSpec& spec) {
  if (!c.is_real()) throw std::invalid_argument("solve_model_ode: the numeric layer needs real c");
  const double cc = to_double(c.re);
  Samples out;
  out.meta = "u = x^{-c} int_0^x t^{c-1} v(t) dt, c = " + format_rational(c.re);
  for (double x : x_grid) {
    double value = 0;
    bool ok = true;
    if (x > v.lo) {
      const RealFunction g = [&](double t) { return std::pow(t, cc - 1.0) * v.f(t); };
      std::vector<double> breaks;
      if (v.lo > 0) breaks.push_back(v.lo);
      if (v.hi < x) breaks.push_back(v.hi);
      const QuadResult r = integrate_to_zero(g, x, spec, breaks);
      if (r.divergent) {
        throw DivergentIntegral("solve_model_ode: int_0^x t^{c-1} v(t) dt diverges at x = " + std::to_string(x));
      }
      value = std::pow(x, -cc) * r.value;
      ok = r.converged;
    }
    out.x.push_back(x);
    out.values.push_back(value);
    out.ok.push_back(ok);
  }
  return out;
}

Samples convolve_model_kernels(const ModelKernel& k1, const ModelKernel& k2, const std::vector<double>& s_grid,
                               const QuadratureSpec& spec) {
  Samples out;
  out.meta = "int k1(s/t) k2(t) dt/t";
  for (double s : s_grid) {
    if (!(s > 0)) throw std::invalid_argument("convolution grid must be positive");
    const RealFunction g = [&](double t) { return (k1.evaluate(s / t) * k2.evaluate(t)).real() / t; };
    const QuadResult lower = integrate_to_zero(g, 1.0, spec, {s});
    const QuadResult upper = integrate_to_infinity(g, 1.0, spec, {s});
    if (lower.divergent || upper.divergent) {
      throw DivergentIntegral("kernel convolution diverges at s = " + std::to_string(s));
    }
    out.x.push_back(s);
    out.values.push_back(lower.value + upper.value);
    out.ok.push_back(lower.converged && upper.converged);
  }
  return out;
}

ConvolutionReport convolve_and_fit(const ModelKernel& k1, const ModelKernel& k2, const GeometricGrid& grid,
                                   const IndexSet& predicted_rb, const IndexSet& probes, const Rational& cutoff,
                                   double coeff_tol, const QuadratureSpec& spec) {
  if (grid.start >= 1) throw std::invalid_argument("convolve_and_fit: grid must lie in s < 1");
  ConvolutionReport out;
  out.composite = convolve_model_kernels(k1, k2, grid.points(), spec);
  out.composite.meta += "; " + grid.describe();
  out.fit = fit_expansion(out.composite, set_union(predicted_rb, probes), cutoff);
  out.check = compare_to_prediction(out.fit, predicted_rb, coeff_tol);
  return out;
}

Samples apply_bop_numeric(const BDiffOp& p, const RealFunction& u, const std::vector<double>& x_grid,
                          const StencilOptions& options) {
  if (!p.real_coefficients()) throw std::invalid_argument("apply_bop_numeric needs real coefficients");
  const int m = p.order();
  const int half = std::max(options.half_width, m / 2 + 2);
  Samples out;
  for (double x : x_grid) {
    const auto d = log_derivatives(u, x, m, options.step, half);
    double acc = 0;
    for (int j = 0; j <= m; ++j) acc += p.coefficient_value(j, x).real() * d[static_cast<std::size_t>(j)];
    out.x.push_back(x);
    out.values.push_back(acc);
    out.ok.push_back(std::isfinite(acc));
  }
  return out;
}

Samples apply_bop_numeric(const BDiffOp& p, const Samples& u, std::vector<std::string>* warnings, int half_width) {
  if (!p.real_coefficients()) throw std::invalid_argument("apply_bop_numeric needs real coefficients");
  const std::size_t n = u.x.size();
  if (n < 2) throw std::invalid_argument("apply_bop_numeric: need at least two samples");
  const double h = std::log(u.x[0] / u.x[1]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(std::log(u.x[i] / u.x[i + 1]) - h) > 1e-9 * std::abs(h)) {
      throw std::invalid_argument("apply_bop_numeric: samples are not on a geometric grid");
    }
  }
  const int m = p.order();
  const auto half = static_cast<std::size_t>(std::max(half_width, m / 2 + 1));
  if (warnings && std::abs(h) > 0.05) {
    warnings->push_back("log step " + std::to_string(std::abs(h)) + " is coarse for the stencil");
  }
  std::vector<double> nodes;
  for (std::size_t k = 0; k < 2 * half + 1; ++k) {
    nodes.push_back(-(static_cast<double>(k) - static_cast<double>(half)) * h);
  }
  const auto w = fornberg_weights(0.0, nodes, m);
  Samples out;
  out.x = u.x;
  out.values.assign(n, 0.0);
  out.ok.assign(n, false);
  for (std::size_t i = half; i + half < n; ++i) {
    double acc = 0;
    for (int j = 0; j <= m; ++j) {
      double dj = 0;
      for (std::size_t k = 0; k < nodes.size(); ++k) dj += w[static_cast<std::size_t>(j)][k] * u.values[i - half + k];
      acc += p.coefficient_value(j, u.x[i]).real() * dj;
    }
    out.values[i] = acc;
    out.ok[i] = u.ok.empty() || u.ok[i];
  }
  return out;
}

}  // namespace bcalc
