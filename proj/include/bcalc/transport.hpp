#pragma once

#include "bcalc/bmaps.hpp"
#include "bcalc/index_algebra.hpp"

#include <map>
#include <string>
#include <vector>

namespace bcalc {

/// One row of the audit table: the index set a face contributes,
/// E~(F) = extended union over bhs G containing F with e(G) > 0 of
/// {(z / e(G), p) : (z, p) in E(G)}.
struct FaceContribution {
  Face face;
  std::vector<std::string> contributors;
  IndexSet set;
};

struct HalflineReport {
  IndexSet result;
  bool integrability_ok = true;
  std::vector<std::string> violating_bhs;
  std::vector<FaceContribution> face_contributions;
};

struct TransportReport {
  IndexFamily result;
  bool integrability_ok = true;
  std::vector<std::string> violating_bhs;
  std::map<std::string, std::vector<FaceContribution>> face_contributions;
};

struct PushForwardOptions {
  /// Asserted by the caller: f is proper on the support of the density.
  /// Not verified; false is refused.
  bool proper_on_support = true;
};

/// Pull-back of an index family on the target of f:
/// f#F(G) = {(q + sum_H e(G,H) z_H, sum_H p_H)} with (z_H, p_H) in F(H) when
/// e(G,H) != 0 and (0, 0) otherwise. Computed exactly on generators.
IndexFamily pull_back_family(const BMapDescriptor& f, const IndexFamily& family);

/// Push-forward to the half-line. Integrability violations (inf E(G) <= 0
/// with e(G) = 0) are reported, not thrown.
HalflineReport push_forward_halfline(const BMapDescriptor& f, const IndexFamily& family,
                                     const PushForwardOptions& options = {});

/// Push-forward along a b-fibration, one target bhs at a time. Throws
/// HypothesisViolated if f is not a b-fibration.
TransportReport push_forward_family(const BMapDescriptor& f, const IndexFamily& family,
                                    const PushForwardOptions& options = {});

enum class DensityDirection { to_b, from_b };

/// u dx dy = (x y u) dx/x dy/y: index sets shift by +1 towards b-densities.
IndexFamily b_density_shift(const IndexFamily& family, DensityDirection direction);

}  // namespace bcalc
