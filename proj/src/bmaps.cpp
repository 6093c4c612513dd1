#include "bcalc/bmaps.hpp"

#include "bcalc/corner_geometry.hpp"

#include <stdexcept>

namespace bcalc {

BMapDescriptor::BMapDescriptor(FaceLattice source, FaceLattice target, ExponentMatrix exponents,
                               bool fibration_on_faces)
    : source_(std::move(source)),
      target_(std::move(target)),
      exponents_(std::move(exponents)),
      fibration_on_faces_(fibration_on_faces) {
  if (exponents_.size() != source_.bhs_count()) {
    throw std::invalid_argument("exponent matrix needs one row per source bhs");
  }
  for (const auto& row : exponents_) {
    if (row.size() != target_.bhs_count()) {
      throw std::invalid_argument("exponent matrix needs one column per target bhs");
    }
    for (int v : row) {
      if (v < 0) throw std::invalid_argument("exponents must be non-negative");
    }
  }
}

int BMapDescriptor::e(const std::string& g, const std::string& h) const {
  return exponents_[source_.bhs_index(g)][target_.bhs_index(h)];
}

std::vector<int> BMapDescriptor::column(const std::string& h) const {
  const auto j = target_.bhs_index(h);
  std::vector<int> col;
  col.reserve(exponents_.size());
  for (const auto& row : exponents_) col.push_back(row[j]);
  return col;
}

BMapDescriptor identity_map(const FaceLattice& z) {
  const auto n = z.bhs_count();
  ExponentMatrix m(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return BMapDescriptor(z, z, std::move(m), true);
}

BMapDescriptor compose(const BMapDescriptor& f, const BMapDescriptor& g) {
  if (!(f.target() == g.source())) {
    throw std::invalid_argument("compose: target of the first map is not the source of the second");
  }
  const auto rows = f.source().bhs_count();
  const auto mid = f.target().bhs_count();
  const auto cols = g.target().bhs_count();
  ExponentMatrix m(rows, std::vector<int>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < mid; ++k) {
      const int a = f.exponents()[i][k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] += a * g.exponents()[k][j];
    }
  }
  BMapDescriptor out(f.source(), g.target(), std::move(m), false);
  if (f.fibration_on_faces() && g.fibration_on_faces()) {
    bool codim_ok = false;
    try {
      codim_ok = check_b_fibration(out).codim_ok;
    } catch (const InconsistentMap&) {
      codim_ok = false;
    }
    if (codim_ok) out = BMapDescriptor(out.source(), out.target(), out.exponents(), true);
  }
  return out;
}

Face induced_face_map(const BMapDescriptor& f, const Face& face) {
  if (!f.source().is_face(face)) {
    throw std::invalid_argument(to_string(face) + " is not a face of the source");
  }
  Face image;
  const auto& targets = f.target().bhs_names();
  for (std::size_t j = 0; j < targets.size(); ++j) {
    int total = 0;
    for (const auto& g : face) total += f.exponents()[f.source().bhs_index(g)][j];
    if (total > 0) image.insert(targets[j]);
  }
  if (!f.target().is_face(image)) {
    throw InconsistentMap("image " + to_string(image) + " of " + to_string(face) +
                          " is not a face of the target");
  }
  return image;
}

BFibrationReport check_b_fibration(const BMapDescriptor& f) {
  BFibrationReport report;
  report.fibration_flag = f.fibration_on_faces();
  for (const auto& g : f.source().bhs_names()) {
    const Face image = induced_face_map(f, Face{g});
    if (codim(f.target(), image) > 1) {
      report.codim_ok = false;
      report.violating_faces.push_back(g);
    }
  }
  return report;
}

BMapDescriptor lifted_projection(int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("projection index must be 1, 2 or 3");
  // Remaining coordinates a < b become (x, x'); lb = {x = 0}, rb = {x' = 0}.
  int a = 0;
  int b = 0;
  for (int k = 1; k <= 3; ++k) {
    if (k == i) continue;
    (a == 0 ? a : b) = k;
  }
  const auto x3b = triple_b_space().first;
  const auto x2b = double_b_space().result;
  ExponentMatrix m(x3b.bhs_count(), std::vector<int>(x2b.bhs_count(), 0));
  auto set = [&](const std::string& g, const std::string& h) {
    m[x3b.bhs_index(g)][x2b.bhs_index(h)] = 1;
  };
  const auto idx = [](int k) { return std::to_string(k); };
  set("bf" + idx(a), "lb");
  set("ff" + idx(b), "lb");
  set("bf" + idx(b), "rb");
  set("ff" + idx(a), "rb");
  set("fff", "ff");
  set("ff" + idx(i), "ff");
  return BMapDescriptor(x3b, x2b, std::move(m), true);
}

}  // namespace bcalc
