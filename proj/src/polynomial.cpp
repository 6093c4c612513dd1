#include "bcalc/polynomial.hpp"

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bcalc {

namespace mp = boost::multiprecision;

namespace {

using BigFloat = mp::cpp_bin_float_50;
using BigComplex = mp::cpp_complex_50;

BigFloat to_big(const Rational& r) {
  return BigFloat(mp::numerator(r)) / BigFloat(mp::denominator(r));
}

BigComplex to_big(const ExactComplex& z) { return BigComplex(to_big(z.re), to_big(z.im)); }

std::complex<double> to_double(const BigComplex& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

std::vector<std::complex<double>> companion_eigenvalues(const Polynomial& f) {
  const int d = f.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  const auto lead = f.leading().to_complex();
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -f.coeffs()[static_cast<std::size_t>(i)].to_complex() / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalues failed");
  std::vector<std::complex<double>> out;
  for (int i = 0; i < d; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/// Simultaneous Aberth iteration in 50-digit arithmetic.
std::vector<BigComplex> aberth(const Polynomial& f, std::vector<std::complex<double>> start) {
  const std::size_t d = start.size();
  // Coincident starting points stall the iteration.
  for (std::size_t i = 0; i < d; ++i) {
    const double angle = 2.399963 * static_cast<double>(i + 1);
    start[i] += 1e-7 * (1.0 + std::abs(start[i])) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  std::vector<BigComplex> coeffs;
  for (const auto& c : f.coeffs()) coeffs.push_back(to_big(c));
  std::vector<BigComplex> dcoeffs;
  for (std::size_t k = 1; k < coeffs.size(); ++k) dcoeffs.push_back(coeffs[k] * BigFloat(k));
  auto horner = [](const std::vector<BigComplex>& cs, const BigComplex& z) {
    BigComplex acc(0);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };

  std::vector<BigComplex> z;
  for (const auto& s : start) z.emplace_back(BigFloat(s.real()), BigFloat(s.imag()));
  const BigFloat eps("1e-45");
  for (int iter = 0; iter < 500; ++iter) {
    BigFloat worst = 0;
    for (std::size_t i = 0; i < d; ++i) {
      const BigComplex pv = horner(coeffs, z[i]);
      if (pv == BigComplex(0)) continue;
      const BigComplex ratio = pv / horner(dcoeffs, z[i]);
      BigComplex repulsion(0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) repulsion += BigComplex(1) / (z[i] - z[j]);
      }
      const BigComplex step = ratio / (BigComplex(1) - ratio * repulsion);
      z[i] -= step;
      worst = std::max(worst, BigFloat(abs(step) / (1 + abs(z[i]))));
    }
    if (worst < eps) break;
  }
  return z;
}

std::optional<ExactComplex> snap(const Polynomial& f, const BigComplex& z) {
  const auto v = to_double(z);
  try {
    ExactComplex guess(rationalize(v.real(), 1e-13, 1'000'000), rationalize(v.imag(), 1e-13, 1'000'000));
    if (f(guess).is_zero()) return guess;
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

}  // namespace

Polynomial::Polynomial(std::vector<ExactComplex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::linear_factor(const ExactComplex& root) {
  return Polynomial({-root, ExactComplex(1)});
}

ExactComplex Polynomial::operator()(const ExactComplex& z) const {
  ExactComplex acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<ExactComplex> out;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * ExactComplex(static_cast<int>(k)));
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const ExactComplex lead = leading();
  std::vector<ExactComplex> out;
  for (const auto& c : coeffs_) out.push_back(c / lead);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::taylor_shift(const ExactComplex& center) const {
  // Repeated synthetic division by (z - center).
  std::vector<ExactComplex> work = coeffs_;
  std::vector<ExactComplex> out;
  for (std::size_t n = work.size(); n > 0; --n) {
    for (std::size_t k = n - 1; k > 0; --k) work[k - 1] += work[k] * center;
    out.push_back(work[0]);
    work.erase(work.begin());
  }
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<ExactComplex> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<ExactComplex> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] -= b.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ExactComplex> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<ExactComplex> rem = a.coeffs();
  std::vector<ExactComplex> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = quot.size(); k > 0; --k) {
    const ExactComplex c = rem[k - 1 + db] / b.leading();
    quot[k - 1] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k - 1 + j] -= c * b.coeffs()[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& p) {
  if (p.degree() < 1) return {};
  const Polynomial f = p.monic();
  const Polynomial fp = f.derivative();
  const Polynomial a0 = gcd(f, fp);
  Polynomial b = divmod(f, a0).first;
  Polynomial c = divmod(fp, a0).first;
  Polynomial d = c - b.derivative();
  std::vector<std::pair<Polynomial, int>> out;
  for (int i = 1; b.degree() > 0; ++i) {
    const Polynomial a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

Exponent Root::exponent() const {
  if (exact) return *exact;
  return {rationalize(value.real(), 1e-12), rationalize(value.imag(), 1e-12)};
}

std::vector<Root> find_roots(const Polynomial& p, const RootOptions& options) {
  if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no finite root set");
  std::vector<Root> found;
  for (const auto& [factor, mult] : square_free_decomposition(p)) {
    if (factor.degree() == 1) {
      const ExactComplex r = -factor.coeffs()[0] / factor.leading();
      found.push_back({r.to_complex(), r, mult});
      continue;
    }
    for (const auto& z : aberth(factor, companion_eigenvalues(factor))) {
      if (auto exact = snap(factor, z)) {
        found.push_back({exact->to_complex(), exact, mult});
      } else {
        found.push_back({to_double(z), std::nullopt, mult});
      }
    }
  }

  // Union-find clustering of numerically coincident roots.
  std::vector<std::size_t> parent(found.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root_of = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = i + 1; j < found.size(); ++j) {
      if (std::abs(found[i].value - found[j].value) < options.cluster_tolerance) {
        parent[root_of(j)] = root_of(i);
      }
    }
  }
  std::vector<Root> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (root_of(i) != i) continue;
    std::complex<double> sum = 0;
    int weight = 0;
    int members = 0;
    Root merged;
    for (std::size_t j = 0; j < found.size(); ++j) {
      if (root_of(j) != i) continue;
      sum += static_cast<double>(found[j].order) * found[j].value;
      weight += found[j].order;
      ++members;
      merged = found[j];
    }
    if (members > 1) {
      merged.value = sum / static_cast<double>(weight);
      merged.exact.reset();
    }
    merged.order = weight;
    out.push_back(merged);
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace bcalc
