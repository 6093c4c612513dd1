#pragma once

#include "bcalc/errors.hpp"
#include "bcalc/lattice.hpp"

#include <string>
#include <vector>

namespace bcalc {

using ExponentMatrix = std::vector<std::vector<int>>;

/// Combinatorial data of an interior b-map W -> Z: the exponent matrix
/// e(G, H) = order of vanishing of rho_H o f at G, rows in source bhs order
/// and columns in target bhs order. Smooth non-vanishing factors are not
/// represented.
///
/// `fibration_on_faces` asserts the fibration condition over open faces,
/// which is not decidable from exponents. Built-ins set it after inspection;
/// user maps default to false.
class BMapDescriptor {
 public:
  BMapDescriptor(FaceLattice source, FaceLattice target, ExponentMatrix exponents,
                 bool fibration_on_faces = false);

  const FaceLattice& source() const { return source_; }
  const FaceLattice& target() const { return target_; }
  const ExponentMatrix& exponents() const { return exponents_; }
  bool fibration_on_faces() const { return fibration_on_faces_; }

  int e(const std::string& g, const std::string& h) const;
  /// Exponent column of target bhs h, keyed by source bhs name.
  std::vector<int> column(const std::string& h) const;

  friend bool operator==(const BMapDescriptor&, const BMapDescriptor&) = default;

 private:
  FaceLattice source_;
  FaceLattice target_;
  ExponentMatrix exponents_;
  bool fibration_on_faces_ = false;
};

BMapDescriptor identity_map(const FaceLattice& z);

/// g o f, with exponent matrix E(f) * E(g). The fibration flag survives only
/// if both flags are set and the codimension check passes for the result.
BMapDescriptor compose(const BMapDescriptor& f, const BMapDescriptor& g);

/// f-bar(F): the target bhs H with sum over G in F of e(G, H) > 0.
Face induced_face_map(const BMapDescriptor& f, const Face& face);

struct BFibrationReport {
  bool codim_ok = true;
  std::vector<std::string> violating_faces;  // source bhs names
  bool fibration_flag = false;
  bool is_b_fibration() const { return codim_ok && fibration_flag; }
};

BFibrationReport check_b_fibration(const BMapDescriptor& f);

/// pi~_i : X3b -> X2b lifting the projection that forgets the i-th
/// coordinate. For i = 3: ff2, bf1 -> lb; ff1, bf2 -> rb; fff, ff3 -> ff;
/// bf3 -> interior. All listed exponents are 1; i = 1, 2 permute coordinates.
BMapDescriptor lifted_projection(int i);

}  // namespace bcalc
