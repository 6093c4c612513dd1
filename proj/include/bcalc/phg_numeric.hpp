#pragma once

#include "bcalc/b_calculus.hpp"
#include "bcalc/index_algebra.hpp"
#include "bcalc/quadrature.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcalc {

/// u(x, y) on (0, C]^2.
struct SampledFunction2D {
  std::function<double(double, double)> u;
  double support = 1.0;
  std::string smoothness;
};

/// ũ(x_k) = int_0^C u(x_k, y) dy, split at y = x_k.
Samples numeric_pushforward(const SampledFunction2D& u, const QuadratureSpec& spec,
                            const std::vector<double>& x_grid);

/// Smooth step equal to 1 on [0, a] and 0 on [b, inf).
RealFunction smooth_cutoff(double a, double b);

struct ChartSplit {
  Samples a;  // chart (x, eta = y/x) near y = 0
  Samples b;  // chart (xi = x/y, y) away from y = 0
  Samples sum;
};

/// The same push-forward split as A + B with A = int x u(x, x eta) chi(eta) d eta and
/// B = int u(x, y) (1 - chi(y/x)) dy.
ChartSplit chart_split_pushforward(const SampledFunction2D& u, const RealFunction& chi, double chi_support,
                                   const QuadratureSpec& spec, const std::vector<double>& x_grid);

/// Coefficient of x^z log^p(1/x).
struct PhgTerm {
  Rational z;
  int p = 0;
  double coeff = 0;
};

struct PhgExpansion {
  std::vector<PhgTerm> terms;
  double fit_residual = 0;
  /// Residual after refitting on the grid without its first points.
  double subgrid_residual = 0;
  /// log(subgrid/full residual) / log(x ratio); NaN when both sit at the noise floor.
  double residual_order = 0;
  double noise_floor = 0;
  std::string grid_meta;
  std::vector<std::string> warnings;

  /// Coefficient in the log(1/x) basis, 0 if absent.
  double coeff(const Rational& z, int p) const;
  /// Same coefficient for the basis x^z log^p x.
  double coeff_log_x(const Rational& z, int p) const;
  double evaluate(double x) const;
};

class FitError : public std::runtime_error {
 public:
  enum class Kind { conditioning, no_decay };
  FitError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FitOptions {
  double condition_guard = 1e14;
  double merge_gap = 1e-2;
  /// Points dropped from the large-x end for the decay check.
  int shrink = 10;
  /// Accepted shortfall of the measured order below the cutoff.
  double order_slack = 0.25;
  bool check_decay = true;
};

/// Least squares in the basis {x^z log^p(1/x)} over the members of the
/// candidate set with Re z <= cutoff.
PhgExpansion fit_expansion(const Samples& samples, const IndexSet& candidate, const Rational& cutoff,
                           const FitOptions& options = {});

struct PredictionCheck {
  bool contained = true;
  EntryList missing;  // predicted but fitted as zero
  EntryList extra;    // fitted but not predicted
};

PredictionCheck compare_to_prediction(const PhgExpansion& fit, const IndexSet& prediction, double coeff_tol);

/// u(x) = x^{-c} int_0^x t^{c-1} v(t) dt. Throws DivergentIntegral when
/// the integral diverges at 0.
Samples solve_model_ode(const ExactComplex& c, const HalflineFunction& v, const std::vector<double>& x_grid,
                        const QuadratureSpec& spec = {});

/// int_0^inf k1(s/t) k2(t) dt/t at each s. Throws DivergentIntegral.
Samples convolve_model_kernels(const ModelKernel& k1, const ModelKernel& k2, const std::vector<double>& s_grid,
                               const QuadratureSpec& spec = {});

struct ConvolutionReport {
  Samples composite;
  PhgExpansion fit;
  PredictionCheck check;
};

/// Convolution on a grid towards s = 0, fitted against the probe set and
/// compared with the predicted rb index set.
ConvolutionReport convolve_and_fit(const ModelKernel& k1, const ModelKernel& k2, const GeometricGrid& grid,
                                   const IndexSet& predicted_rb, const IndexSet& probes, const Rational& cutoff,
                                   double coeff_tol, const QuadratureSpec& spec = {});

struct StencilOptions {
  double step = 0.02;
  int half_width = 6;
};

/// sum_j a_j(x) (x d/dx)^j u by log-spaced stencils. P must have real coefficients.
Samples apply_bop_numeric(const BDiffOp& p, const RealFunction& u, const std::vector<double>& x_grid,
                          const StencilOptions& options = {});

/// Same on samples given on a geometric grid; points without a full stencil
/// are flagged. Warns when the log step exceeds 0.05.
Samples apply_bop_numeric(const BDiffOp& p, const Samples& u, std::vector<std::string>* warnings = nullptr,
                          int half_width = 4);

}  // namespace bcalc
