#include "bcalc/corner_geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcalc {

namespace {

bool contains_all(const Face& t, const Face& center) {
  return std::includes(t.begin(), t.end(), center.begin(), center.end());
}

Face merged(const Face& a, const Face& b) {
  Face out = a;
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

BlowupRecord blow_up_face(const FaceLattice& z, const Face& center, const std::string& name) {
  if (!z.is_face(center)) throw std::invalid_argument(to_string(center) + " is not a face");
  if (center.size() < 2) {
    throw std::invalid_argument("blow-up center must have codimension >= 2");
  }
  if (z.has_bhs(name)) throw std::invalid_argument("front face name '" + name + "' already used");

  std::set<Face> faces;
  for (const auto& t : z.faces()) {
    if (!contains_all(t, center)) faces.insert(t);
    if (z.is_face(merged(t, center)) && !contains_all(t, center)) {
      Face with_ff = t;
      with_ff.insert(name);
      faces.insert(std::move(with_ff));
    }
  }
  auto names = z.bhs_names();
  names.push_back(name);
  FaceLattice result(z.dimension(), names, std::move(faces), z.annotations());

  const auto n = z.bhs_count();
  ExponentMatrix m(n + 1, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = 1;
    if (center.count(z.bhs_names()[i])) m[n][i] = 1;
  }
  BMapDescriptor blowdown(result, z, std::move(m), false);
  return BlowupRecord{z, center, std::move(result), name, std::move(blowdown)};
}

BlowupRecord rename_result(const BlowupRecord& rec,
                           const std::map<std::string, std::string>& renames) {
  FaceLattice result = rec.result.renamed(renames);
  std::string ff = rec.front_face_name;
  if (auto it = renames.find(ff); it != renames.end()) ff = it->second;
  BMapDescriptor blowdown(result, rec.base, rec.blowdown.exponents(),
                          rec.blowdown.fibration_on_faces());
  return BlowupRecord{rec.base, rec.center, std::move(result), ff, std::move(blowdown)};
}

BlowupRecord double_b_space() {
  auto rec = blow_up_face(model_quadrant(2, 2), Face{"Hx", "Hy"}, "ff");
  rec = rename_result(rec, {{"Hx", "lb"}, {"Hy", "rb"}});
  rec.result = rec.result.with_annotation({"diag_b", Face{"ff"}});
  rec.blowdown = BMapDescriptor(rec.result, rec.base, rec.blowdown.exponents(), false);
  return rec;
}

std::pair<FaceLattice, std::vector<BlowupRecord>> triple_b_space() {
  std::vector<BlowupRecord> chain;
  chain.push_back(blow_up_face(model_quadrant(3, 3), Face{"H1", "H2", "H3"}, "fff"));
  // The lifted axes are disjoint after the point blow-up, so order is immaterial.
  const std::vector<std::pair<Face, std::string>> axes = {
      {Face{"H2", "H3"}, "ff1"}, {Face{"H1", "H3"}, "ff2"}, {Face{"H1", "H2"}, "ff3"}};
  for (const auto& [center, name] : axes) {
    chain.push_back(blow_up_face(chain.back().result, center, name));
  }
  FaceLattice x3b = chain.back().result.renamed({{"H1", "bf1"}, {"H2", "bf2"}, {"H3", "bf3"}});
  return {std::move(x3b), std::move(chain)};
}

BMapDescriptor triple_blowdown() {
  auto [x3b, chain] = triple_b_space();
  BMapDescriptor total = chain.back().blowdown;
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) total = compose(total, it->blowdown);
  return BMapDescriptor(x3b, total.target(), total.exponents(), false);
}

BMapDescriptor quadrant_projection(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("projection index must be 1, 2 or 3");
  ExponentMatrix m(3, std::vector<int>(2, 0));
  int col = 0;
  for (int k = 1; k <= 3; ++k) {
    if (k == i) continue;
    m[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(col++)] = 1;
  }
  return BMapDescriptor(model_quadrant(3, 3), model_quadrant(2, 2), std::move(m), true);
}

BMapDescriptor halfline_projection(bool first) {
  ExponentMatrix m = first ? ExponentMatrix{{1}, {0}} : ExponentMatrix{{0}, {1}};
  return BMapDescriptor(model_quadrant(2, 2), model_quadrant(1, 1), std::move(m), true);
}

BMapDescriptor x2b_halfline_projection(bool left) {
  const auto x2b = double_b_space().result;
  ExponentMatrix m(3, std::vector<int>(1, 0));
  m[x2b.bhs_index(left ? "lb" : "rb")][0] = 1;
  m[x2b.bhs_index("ff")][0] = 1;
  return BMapDescriptor(x2b, model_quadrant(1, 1), std::move(m), true);
}

}  // namespace bcalc
