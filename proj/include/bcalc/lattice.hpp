#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace bcalc {

/// A face is named by the set of boundary hypersurfaces whose intersection
/// it is. The empty set is the whole space.
using Face = std::set<std::string>;

/// Interior p-submanifold carried along as an annotation (e.g. the lifted
/// diagonal of the double space): it is not a lattice member.
struct InteriorSubmanifold {
  std::string name;
  Face meets;
  friend bool operator==(const InteriorSubmanifold&, const InteriorSubmanifold&) = default;
};

/// Face lattice of a manifold with corners. Boundary hypersurfaces meet
/// transversally, so the codimension of a face is the number of bhs cutting
/// it out.
class FaceLattice {
 public:
  FaceLattice() = default;
  /// Validates: names unique; every face uses known names; the empty face and
  /// all singletons present; downward closed; codim <= dimension.
  FaceLattice(int dimension, std::vector<std::string> bhs_names, std::set<Face> faces,
              std::vector<InteriorSubmanifold> annotations = {});

  int dimension() const { return dimension_; }
  const std::vector<std::string>& bhs_names() const { return bhs_names_; }
  const std::set<Face>& faces() const { return faces_; }
  const std::vector<InteriorSubmanifold>& annotations() const { return annotations_; }

  bool is_face(const Face& f) const { return faces_.count(f) != 0; }
  bool has_bhs(const std::string& name) const;
  std::size_t bhs_index(const std::string& name) const;
  std::size_t bhs_count() const { return bhs_names_.size(); }

  /// Faces ordered by (codim, names); the serialization order.
  std::vector<Face> sorted_faces() const;
  /// Faces other than the whole space.
  std::vector<Face> proper_faces() const;

  FaceLattice renamed(const std::map<std::string, std::string>& renames) const;
  FaceLattice with_annotation(InteriorSubmanifold a) const;

  friend bool operator==(const FaceLattice&, const FaceLattice&) = default;

 private:
  int dimension_ = 0;
  std::vector<std::string> bhs_names_;
  std::set<Face> faces_;
  std::vector<InteriorSubmanifold> annotations_;
};

/// [0,inf)^k x R^(n-k). Names: Hx (k = 1); Hx, Hy (k = 2); H1..Hk otherwise.
FaceLattice model_quadrant(int k, int n);

/// Recorded codimension of a face; throws std::invalid_argument for non-faces.
int codim(const FaceLattice& z, const Face& t);

std::string to_string(const Face& f);

}  // namespace bcalc
