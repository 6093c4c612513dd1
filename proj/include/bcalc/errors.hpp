#pragma once

#include <stdexcept>

namespace bcalc {

/// A theorem hypothesis does not hold (integrability, b-fibration, weight
/// admissibility of a composition). The CLI maps it to exit code 2.
class HypothesisViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerically detected divergence of an integral whose convergence is the
/// hypothesis of an action or composition statement.
class DivergentIntegral : public HypothesisViolated {
 public:
  using HypothesisViolated::HypothesisViolated;
};

/// a_m(0) = 0: the operator is not b-elliptic at the boundary.
class NotBElliptic : public HypothesisViolated {
 public:
  using HypothesisViolated::HypothesisViolated;
};

/// The weight gamma sits on the real part of an indicial root.
class InadmissibleWeight : public HypothesisViolated {
 public:
  using HypothesisViolated::HypothesisViolated;
};

/// Adaptive quadrature did not reach tolerance.
class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A descriptor whose induced face map leaves the target lattice.
class InconsistentMap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bcalc
