#pragma once

#include "bcalc/exact.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace bcalc {

/// Polynomial with Gaussian-rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<ExactComplex> coeffs);

  /// (z - root)
  static Polynomial linear_factor(const ExactComplex& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<ExactComplex>& coeffs() const { return coeffs_; }
  const ExactComplex& leading() const { return coeffs_.back(); }

  ExactComplex operator()(const ExactComplex& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;

  Polynomial derivative() const;
  Polynomial monic() const;
  /// Coefficients of p(center + w) in powers of w.
  Polynomial taylor_shift(const ExactComplex& center) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<ExactComplex> coeffs_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Yun's algorithm: pairs (factor, multiplicity) with monic square-free,
/// pairwise coprime factors whose product (with powers) is p / leading(p).
std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& p);

struct Root {
  std::complex<double> value;
  std::optional<ExactComplex> exact;  // set when the root was verified exactly
  int order = 1;

  /// Exact root or a rational approximation of the numeric one.
  Exponent exponent() const;
};

struct RootOptions {
  double cluster_tolerance = 1e-9;
};

/// Roots with multiplicities. Multiplicities from the exact square-free
/// decomposition; within each factor, Gaussian-rational roots are found by
/// snapping refined numeric roots and verifying them exactly. Remaining
/// roots come from companion-matrix eigenvalues refined in 50-digit
/// arithmetic, and are merged when closer than the cluster tolerance.
/// Sorted by (Re, Im).
std::vector<Root> find_roots(const Polynomial& p, const RootOptions& options = {});

}  // namespace bcalc
