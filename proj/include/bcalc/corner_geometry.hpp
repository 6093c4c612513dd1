#pragma once

#include "bcalc/bmaps.hpp"
#include "bcalc/lattice.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bcalc {

struct BlowupRecord {
  FaceLattice base;
  Face center;
  FaceLattice result;
  std::string front_face_name;
  BMapDescriptor blowdown;  // result -> base
};

/// Blows up the boundary face cut out by `center` (codim >= 2).
///
/// Lifted old faces: T survives iff T is a face of the base and T does not
/// contain `center`. Faces meeting the front face: T + {ff} is a face iff
/// T + center is a face of the base and `center` is not contained in T.
/// Codimension stays the number of bhs. The blow-down pulls back the bdf of
/// every old bhs H to rho_H~ times rho_ff when H lies in the center.
BlowupRecord blow_up_face(const FaceLattice& z, const Face& center, const std::string& name);

/// Renames bhs of the blown-up space; the blow-down keeps its matrix.
BlowupRecord rename_result(const BlowupRecord& rec, const std::map<std::string, std::string>& renames);

/// X2b = [R_+^2, 0] with bhs lb (lift of Hx), rb (lift of Hy), ff, and the
/// lifted diagonal carried as the annotation "diag_b" meeting ff.
BlowupRecord double_b_space();

/// X3b: blow up 0 in R_+^3 (fff), then the lifted coordinate axes (ff1, ff2,
/// ff3). Old bhs are renamed bf1, bf2, bf3 in the final lattice only; the
/// records keep the names H1, H2, H3 of quadrant(3, 3).
std::pair<FaceLattice, std::vector<BlowupRecord>> triple_b_space();

/// Composite blow-down X3b -> R_+^3.
BMapDescriptor triple_blowdown();

/// Projections of model quadrants. quadrant_projection(3, i) forgets the i-th
/// coordinate of R_+^3 (i = 1, 2, 3) onto R_+^2 = (Hx, Hy), keeping order.
/// halfline_projection(first) maps R_+^2 to R_+ by (x, y) -> x or y.
BMapDescriptor quadrant_projection(int i);
BMapDescriptor halfline_projection(bool first);

/// X2b -> R_+ by (x, x') -> x (left) or x' (right); b-fibrations.
BMapDescriptor x2b_halfline_projection(bool left);

}  // namespace bcalc
