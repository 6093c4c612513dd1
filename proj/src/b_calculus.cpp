#include "bcalc/b_calculus.hpp"

#include "bcalc/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bcalc {

namespace {

bool series_is_zero(const PowerSeries& s) {
  return std::all_of(s.begin(), s.end(), [](const ExactComplex& c) { return c.is_zero(); });
}

/// Coefficients of 1/q from those of q, up to degree n - 1.
template <class T>
std::vector<T> invert_series(const std::vector<T>& q, std::size_t n) {
  std::vector<T> b(n);
  for (std::size_t j = 0; j < n; ++j) {
    T acc = j == 0 ? T(1) : T(0);
    for (std::size_t i = 1; i <= j && i < q.size(); ++i) acc = acc - q[i] * b[j - i];
    b[j] = acc / q[0];
  }
  return b;
}

/// Taylor coefficients of lead * prod_{i != skip} (z - r_i)^{m_i} at r_skip.
std::vector<std::complex<double>> cofactor_series(const std::vector<Root>& roots, std::size_t skip,
                                                  std::complex<double> lead) {
  std::vector<std::complex<double>> acc{lead};
  const auto r = roots[skip].value;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i == skip) continue;
    for (int k = 0; k < roots[i].order; ++k) {
      std::vector<std::complex<double>> next(acc.size() + 1, 0.0);
      for (std::size_t j = 0; j < acc.size(); ++j) {
        next[j] += acc[j] * (r - roots[i].value);
        next[j + 1] += acc[j];
      }
      acc = std::move(next);
    }
  }
  return acc;
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::optional<Rational> inf_of(const IndexSet& e) { return e.inf_re_exact(); }

/// inf a + inf b > 0 with +infinity for empty sets.
bool inf_sum_positive(const IndexSet& a, const IndexSet& b) {
  const auto x = inf_of(a);
  const auto y = inf_of(b);
  if (!x || !y) return true;
  return *x + *y > 0;
}

std::string inf_text(const IndexSet& e) {
  const auto x = inf_of(e);
  return x ? format_rational(*x) : std::string("+inf");
}

}  // namespace

BDiffOp::BDiffOp(std::vector<PowerSeries> coeffs, int truncation_degree)
    : coeffs_(std::move(coeffs)), truncation_(truncation_degree) {
  if (coeffs_.empty()) throw std::invalid_argument("b-differential operator needs at least a_0");
  if (truncation_ < 0) throw std::invalid_argument("series truncation degree must be >= 0");
  for (auto& s : coeffs_) {
    if (static_cast<int>(s.size()) > truncation_ + 1) {
      throw std::invalid_argument("coefficient series longer than the truncation degree");
    }
  }
  if (series_is_zero(coeffs_.back())) throw std::invalid_argument("leading coefficient a_m vanishes identically");
}

BDiffOp BDiffOp::from_polynomial(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial is not an operator");
  std::vector<PowerSeries> coeffs;
  for (const auto& c : p.coeffs()) coeffs.push_back({c});
  return BDiffOp(std::move(coeffs), 0);
}

bool BDiffOp::constant_coefficients() const {
  for (const auto& s : coeffs_) {
    for (std::size_t k = 1; k < s.size(); ++k) {
      if (!s[k].is_zero()) return false;
    }
  }
  return true;
}

bool BDiffOp::real_coefficients() const {
  for (const auto& s : coeffs_) {
    for (const auto& c : s) {
      if (!c.is_real()) return false;
    }
  }
  return true;
}

std::complex<double> BDiffOp::coefficient_value(int j, double x) const {
  const auto& s = coeffs_.at(static_cast<std::size_t>(j));
  std::complex<double> acc = 0;
  for (auto it = s.rbegin(); it != s.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

Polynomial BDiffOp::indicial_polynomial() const {
  std::vector<ExactComplex> c;
  for (const auto& s : coeffs_) c.push_back(s.empty() ? ExactComplex() : s.front());
  return Polynomial(std::move(c));
}

IndicialData indicial_from_polynomial(const Polynomial& p) {
  if (p.degree() < 0) throw NotBElliptic("indicial polynomial vanishes identically");
  IndicialData out;
  out.polynomial = p;
  out.roots = find_roots(p);
  for (const auto& r : out.roots) {
    for (int l = 0; l < r.order; ++l) out.spec_b.emplace_back(r.exponent(), l);
  }
  std::sort(out.spec_b.begin(), out.spec_b.end());
  return out;
}

IndicialData indicial(const BDiffOp& p) {
  const auto& lead = p.coeffs().back();
  if (lead.empty() || lead.front().is_zero()) {
    throw NotBElliptic("a_m(0) = 0: operator is not b-elliptic at the boundary");
  }
  return indicial_from_polynomial(p.indicial_polynomial());
}

void require_admissible(const IndicialData& data, const WeightParameter& weight) {
  const double g = to_double(weight.gamma);
  for (const auto& r : data.roots) {
    if (std::abs(r.value.real() - g) <= WeightParameter::tolerance) {
      throw InadmissibleWeight("weight " + format_rational(weight.gamma) +
                               " lies on Re of the indicial root " + format_complex(r.exponent()));
    }
  }
}

SpecSplit split_spec(const IndicialData& data, const WeightParameter& weight) {
  require_admissible(data, weight);
  EntryList lb;
  EntryList rb;
  const double g = to_double(weight.gamma);
  for (const auto& r : data.roots) {
    const Exponent z = r.exponent();
    for (int l = 0; l < r.order; ++l) {
      if (r.value.real() < g) {
        rb.emplace_back(-z, l);
      } else {
        lb.emplace_back(z, l);
      }
    }
  }
  return {IndexSet::complete(lb), IndexSet::complete(rb)};
}

std::complex<double> ModelKernel::evaluate(double s) const {
  if (!(s > 0)) throw std::invalid_argument("kernel argument must be positive");
  const KernelSide side = s < 1 ? KernelSide::rb : KernelSide::lb;
  const double t = s < 1 ? s : 1.0 / s;
  const double log_inv = -std::log(t);
  std::complex<double> acc = 0;
  for (const auto& term : terms) {
    if (s != 1 && term.side != side) continue;
    std::complex<double> v = term.coeff * std::exp(term.z_value * std::log(t));
    if (term.p > 0) v *= std::pow(log_inv, term.p);
    acc += s == 1 ? 0.5 * v : v;
  }
  return acc;
}

ModelKernel ModelKernel::sides_swapped() const {
  ModelKernel out = *this;
  for (auto& t : out.terms) t.side = t.side == KernelSide::rb ? KernelSide::lb : KernelSide::rb;
  return out;
}

bool ModelKernel::exact() const {
  return std::all_of(terms.begin(), terms.end(), [](const KernelTerm& t) { return t.exact_coeff.has_value(); });
}

ModelKernel model_inverse(const IndicialData& data, const WeightParameter& weight) {
  require_admissible(data, weight);
  const double g = to_double(weight.gamma);
  const bool all_exact =
      std::all_of(data.roots.begin(), data.roots.end(), [](const Root& r) { return r.exact.has_value(); });
  ModelKernel out;
  for (std::size_t idx = 0; idx < data.roots.size(); ++idx) {
    const Root& root = data.roots[idx];
    const int m = root.order;
    const bool rb = root.value.real() < g;
    // b_j: Taylor coefficients of 1/q at the root, where p = (z - r)^m q.
    std::vector<std::optional<ExactComplex>> exact_b(static_cast<std::size_t>(m));
    std::vector<std::complex<double>> b;
    if (all_exact) {
      const auto shifted = data.polynomial.taylor_shift(*root.exact).coeffs();
      std::vector<ExactComplex> q(shifted.begin() + m, shifted.end());
      const auto inv = invert_series(q, static_cast<std::size_t>(m));
      for (std::size_t j = 0; j < inv.size(); ++j) {
        exact_b[j] = inv[j];
        b.push_back(inv[j].to_complex());
      }
    } else {
      b = invert_series(cofactor_series(data.roots, idx, data.polynomial.leading().to_complex()),
                        static_cast<std::size_t>(m));
    }
    for (int k = 0; k < m; ++k) {
      const auto j = static_cast<std::size_t>(m - 1 - k);
      // The lb side closes the contour clockwise and writes log t = -log(1/t).
      const int sign = rb ? 1 : ((k % 2 == 0) ? -1 : 1);
      KernelTerm term;
      term.z = rb ? -root.exponent() : root.exponent();
      term.z_value = rb ? -root.value : root.value;
      term.p = k;
      term.side = rb ? KernelSide::rb : KernelSide::lb;
      term.coeff = static_cast<double>(sign) * b[j] / factorial(k);
      if (exact_b[j]) {
        BigInt fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        term.exact_coeff = *exact_b[j] * ExactComplex(Rational(BigInt(sign), fact));
      }
      if (term.coeff != 0.0) out.terms.push_back(std::move(term));
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const KernelTerm& a, const KernelTerm& b) {
    if (a.side != b.side) return a.side == KernelSide::rb;
    if (a.z != b.z) return a.z < b.z;
    return a.p < b.p;
  });
  return out;
}

ApplyCheckReport apply_check(const BDiffOp& p, const ModelKernel& k, const HalflineFunction& v,
                             const std::vector<double>& grid, const ApplyCheckOptions& options) {
  if (!p.constant_coefficients() || !p.real_coefficients()) {
    throw std::invalid_argument("apply_check needs real constant coefficients");
  }
  if (!(v.lo > 0) || !std::isfinite(v.hi) || !(v.lo < v.hi)) {
    throw std::invalid_argument("apply_check needs v compactly supported in (0, inf)");
  }
  const RealFunction kv = [&](double x) {
    const RealFunction integrand = [&](double xp) { return k.evaluate(xp / x).real() * v.f(xp) / xp; };
    const QuadResult r = integrate(integrand, v.lo, v.hi, options.quad, {x});
    if (!r.converged) {
      throw QuadratureFailure("apply_check: quadrature did not converge at x = " + std::to_string(x));
    }
    return r.value;
  };
  const int m = p.order();
  ApplyCheckReport out;
  for (double x : grid) {
    const auto d = log_derivatives(kv, x, m, options.step, m / 2 + 5);
    double pk = 0;
    for (int j = 0; j <= m; ++j) pk += p.coefficient_value(j, 0).real() * d[static_cast<std::size_t>(j)];
    const double res = std::abs(pk - v.f(x));
    out.x.push_back(x);
    out.residual.push_back(res);
    if (res > out.max_residual || out.x.size() == 1) {
      out.max_residual = res;
      out.worst_x = x;
    }
  }
  return out;
}

FullCalcDescriptor identity_descriptor() { return {0.0, IndexSet{}, IndexSet{}}; }

FullCalcDescriptor compose_descriptors(const FullCalcDescriptor& p, const FullCalcDescriptor& q) {
  if (!inf_sum_positive(p.E_rb, q.E_lb)) {
    throw HypothesisViolated("composition undefined: inf E_rb + inf F_lb = " + inf_text(p.E_rb) + " + " +
                             inf_text(q.E_lb) + " is not > 0");
  }
  return {p.order + q.order, extended_union(p.E_lb, q.E_lb), extended_union(p.E_rb, q.E_rb)};
}

IndexSet action_index(const FullCalcDescriptor& p, const IndexSet& f) {
  if (!inf_sum_positive(p.E_rb, f)) {
    throw HypothesisViolated("action undefined: inf E_rb + inf F = " + inf_text(p.E_rb) + " + " + inf_text(f) +
                             " is not > 0");
  }
  return extended_union(p.E_lb, f);
}

FullCalcDescriptor add_descriptors(const FullCalcDescriptor& a, const FullCalcDescriptor& b) {
  return {std::max(a.order, b.order), set_union(a.E_lb, b.E_lb), set_union(a.E_rb, b.E_rb)};
}

ParametrixReport parametrix_indices(const BDiffOp& p, const WeightParameter& weight, int k) {
  if (k < 0) throw std::invalid_argument("parametrix step count must be >= 0");
  const IndicialData data = indicial(p);
  const SpecSplit split = split_spec(data, weight);
  const double m = p.order();

  ParametrixReport out;
  const FullCalcDescriptor q1{-m, IndexSet{}, IndexSet{}};
  out.steps.push_back({"Q1 (small calculus)", q1});
  if (k == 0) {
    out.parametrix = q1;
    out.remainder = {-1.0, IndexSet{}, IndexSet{}};
    out.steps.push_back({"R = Id - P Q1", out.remainder});
    return out;
  }
  const FullCalcDescriptor q2{-m, split.E_lb, split.E_rb};
  out.steps.push_back({"Q2 (model inverse)", q2});
  const FullCalcDescriptor q = add_descriptors(q1, q2);
  out.steps.push_back({"Q = Q1 + Q2", q});

  auto guarded = [&](const std::string& label, const FullCalcDescriptor& a, const FullCalcDescriptor& b) {
    try {
      FullCalcDescriptor d = compose_descriptors(a, b);
      out.steps.push_back({label, d});
      return d;
    } catch (const HypothesisViolated& e) {
      throw HypothesisViolated("parametrix step '" + label + "': " + e.what());
    }
  };
  const FullCalcDescriptor pq = guarded("P Q", {m, IndexSet{}, IndexSet{}}, q);
  // The leading symbol and the indicial part cancel, leaving order -1.
  const FullCalcDescriptor r{-1.0, pq.E_lb, pq.E_rb};
  out.steps.push_back({"R = Id - P Q", r});

  FullCalcDescriptor power = identity_descriptor();
  FullCalcDescriptor sum = q;
  for (int j = 1; j < k; ++j) {
    power = guarded("R^" + std::to_string(j), power, r);
    sum = add_descriptors(sum, guarded("Q R^" + std::to_string(j), q, power));
  }
  out.parametrix = sum;
  out.remainder = k == 1 ? r : guarded("R^" + std::to_string(k), power, r);
  out.steps.push_back({"Q_" + std::to_string(k), out.parametrix});
  return out;
}

HsReport hs_front_face_criterion(const KernelFunction2D& p, const RealFunction& cutoff, const HsOptions& options) {
  if (!(options.C > 1)) throw std::invalid_argument("hs: support bound C must exceed 1");
  if (options.eps.size() < 2) throw std::invalid_argument("hs: need at least two eps values");
  for (double e : options.eps) {
    if (!(e > 0 && e < options.C)) throw std::invalid_argument("hs: eps must lie in (0, C)");
  }
  const double log_c = std::log(options.C);
  auto inner = [&](double x) {
    const RealFunction f = [&](double sigma) {
      const double v = p(x, std::exp(sigma));
      return v * v;
    };
    const QuadResult r = integrate(f, -log_c, log_c, options.quad, {0.0});
    if (!r.converged) throw QuadratureFailure("hs: inner quadrature failed");
    return r.value;
  };
  const RealFunction outer = [&](double tau) {
    const double x = std::exp(tau);
    const double phi = cutoff(x);
    return phi == 0 ? 0.0 : phi * phi * inner(x);
  };

  HsReport out;
  std::vector<double> eps = options.eps;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  double total = 0;
  double upper = log_c;
  for (double e : eps) {
    const QuadResult r = integrate(outer, std::log(e), upper, options.quad);
    if (!r.converged) throw QuadratureFailure("hs: outer quadrature failed");
    total += r.value;
    upper = std::log(e);
    out.eps.push_back(e);
    out.norms.push_back(total);
  }
  const std::size_t n = eps.size();
  out.slope = (out.norms[n - 1] - out.norms[n - 2]) / std::log(eps[n - 2] / eps[n - 1]);
  const double phi0 = cutoff(0.0);
  out.restriction_integral = phi0 * phi0 * inner(0.0);
  out.finite = std::abs(out.slope) <= options.zero_tol;
  return out;
}

std::string to_string(const FullCalcDescriptor& d) {
  std::ostringstream os;
  os << "order " << d.order << ", E_lb = " << to_string(d.E_lb) << ", E_rb = " << to_string(d.E_rb);
  return os.str();
}

}  // namespace bcalc
