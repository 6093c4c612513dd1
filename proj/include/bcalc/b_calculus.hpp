#pragma once

#include "bcalc/errors.hpp"
#include "bcalc/index_algebra.hpp"
#include "bcalc/polynomial.hpp"
#include "bcalc/quadrature.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bcalc {

/// Truncated power series a(x) = sum_k c_k x^k, k <= truncation degree.
using PowerSeries = std::vector<ExactComplex>;

/// P = sum_j a_j(x) (x d/dx)^j on the half-line.
class BDiffOp {
 public:
  BDiffOp(std::vector<PowerSeries> coeffs, int truncation_degree);

  /// Constant-coefficient operator p(x d/dx).
  static BDiffOp from_polynomial(const Polynomial& p);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  int truncation_degree() const { return truncation_; }
  const std::vector<PowerSeries>& coeffs() const { return coeffs_; }

  bool constant_coefficients() const;
  bool real_coefficients() const;
  /// a_j(x) for real x from the truncated series.
  std::complex<double> coefficient_value(int j, double x) const;
  /// sum_j a_j(0) z^j
  Polynomial indicial_polynomial() const;

  friend bool operator==(const BDiffOp&, const BDiffOp&) = default;

 private:
  std::vector<PowerSeries> coeffs_;
  int truncation_;
};

struct IndicialData {
  Polynomial polynomial;
  std::vector<Root> roots;
  /// {(z, l) : 0 <= l < order of z}, sorted.
  EntryList spec_b;
};

/// Throws NotBElliptic when a_m(0) = 0.
IndicialData indicial(const BDiffOp& p);
IndicialData indicial_from_polynomial(const Polynomial& p);

struct WeightParameter {
  Rational gamma;
  /// Minimal distance between gamma and the real part of a root.
  static constexpr double tolerance = 1e-9;
};

/// Throws InadmissibleWeight when gamma is within tolerance of Re z for a root z.
void require_admissible(const IndicialData& data, const WeightParameter& weight);

struct SpecSplit {
  IndexSet E_lb;
  IndexSet E_rb;
};

/// Roots with Re z < gamma enter E_rb negated; roots with Re z > gamma
/// enter E_lb unchanged. Both sets are completed.
SpecSplit split_spec(const IndicialData& data, const WeightParameter& weight);

enum class KernelSide { rb, lb };

/// c * s^z log^p(1/s) H(1 - s) on the rb side, and the same expression in
/// t = 1/s on the lb side.
struct KernelTerm {
  Exponent z;                       // exact, or rationalized from z_value
  std::complex<double> z_value;
  int p = 0;
  KernelSide side = KernelSide::rb;
  std::complex<double> coeff;
  std::optional<ExactComplex> exact_coeff;
};

/// Kernel k(s) of the operator (Qv)(x) = int_0^inf k(x'/x) v(x') dx'/x'.
struct ModelKernel {
  std::vector<KernelTerm> terms;

  std::complex<double> evaluate(double s) const;
  /// Same terms with rb and lb exchanged (k(s) -> k(1/s)).
  ModelKernel sides_swapped() const;
  bool exact() const;
};

/// Sum of residues of s^{-z} / p(z). Roots left of gamma feed the rb side,
/// roots right of gamma the lb side (with the sign of a clockwise contour).
ModelKernel model_inverse(const IndicialData& data, const WeightParameter& weight);

struct ApplyCheckOptions {
  QuadratureSpec quad{1e-15, 1e-13, 20};
  /// Step in log x for the finite-difference stencils.
  double step = 0.005;
};

struct ApplyCheckReport {
  double max_residual = 0;
  double worst_x = 0;
  std::vector<double> x;
  std::vector<double> residual;
};

/// Residual max |P(Kv) - v| on the grid. P must have real constant
/// coefficients; v must have compact support in (0, infinity).
ApplyCheckReport apply_check(const BDiffOp& p, const ModelKernel& k, const HalflineFunction& v,
                             const std::vector<double>& grid, const ApplyCheckOptions& options = {});

/// Index data of an operator in the full calculus: order m and the index
/// sets at lb and rb (the front face carries the smooth set).
struct FullCalcDescriptor {
  double order = 0;
  IndexSet E_lb;
  IndexSet E_rb;

  friend bool operator==(const FullCalcDescriptor&, const FullCalcDescriptor&) = default;
};

FullCalcDescriptor identity_descriptor();

/// Order m + m', index sets by extended union. Throws HypothesisViolated
/// unless inf P.E_rb + inf Q.E_lb > 0.
FullCalcDescriptor compose_descriptors(const FullCalcDescriptor& p, const FullCalcDescriptor& q);

/// Index set of Pw for w with index set F: E_lb ∪̄ F. Throws
/// HypothesisViolated unless inf E_rb + inf F > 0.
IndexSet action_index(const FullCalcDescriptor& p, const IndexSet& f);

/// Componentwise union, larger order.
FullCalcDescriptor add_descriptors(const FullCalcDescriptor& a, const FullCalcDescriptor& b);

struct ParametrixStep {
  std::string label;
  FullCalcDescriptor descriptor;
};

struct ParametrixReport {
  FullCalcDescriptor parametrix;
  FullCalcDescriptor remainder;
  std::vector<ParametrixStep> steps;
};

/// Index bookkeeping for Q_k = Q (Id + R + ... + R^{k-1}) with remainder
/// R^k. A failing composition is rethrown naming the step.
ParametrixReport parametrix_indices(const BDiffOp& p, const WeightParameter& weight, int k);

using KernelFunction2D = std::function<double(double x, double s)>;

struct HsOptions {
  /// Support bound: x <= C and 1/C <= s <= C.
  double C = 2.0;
  std::vector<double> eps{1e-4, 1e-6, 1e-8};
  QuadratureSpec quad{1e-14, 1e-11, 16};
  /// Slopes below this count as zero.
  double zero_tol = 1e-8;
};

struct HsReport {
  std::vector<double> eps;
  std::vector<double> norms;  // truncated squared norms over [eps, C]
  double slope = 0;           // d N / d log(1/eps) from the two smallest eps
  double restriction_integral = 0;
  bool finite = true;
};

/// Truncated Hilbert-Schmidt norm of phi P near the front face.
HsReport hs_front_face_criterion(const KernelFunction2D& p, const RealFunction& cutoff,
                                 const HsOptions& options = {});

std::string to_string(const FullCalcDescriptor& d);

}  // namespace bcalc
