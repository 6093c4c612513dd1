#include "bcalc/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcalc {

FaceLattice::FaceLattice(int dimension, std::vector<std::string> bhs_names, std::set<Face> faces,
                         std::vector<InteriorSubmanifold> annotations)
    : dimension_(dimension),
      bhs_names_(std::move(bhs_names)),
      faces_(std::move(faces)),
      annotations_(std::move(annotations)) {
  if (dimension_ < 0) throw std::invalid_argument("negative dimension");
  std::set<std::string> names(bhs_names_.begin(), bhs_names_.end());
  if (names.size() != bhs_names_.size()) throw std::invalid_argument("duplicate bhs name");
  if (static_cast<int>(names.size()) > 0 && dimension_ == 0) {
    throw std::invalid_argument("a point has no boundary hypersurfaces");
  }
  if (!faces_.count(Face{})) throw std::invalid_argument("lattice must contain the whole space");
  for (const auto& n : bhs_names_) {
    if (!faces_.count(Face{n})) throw std::invalid_argument("bhs '" + n + "' is not a face");
  }
  for (const auto& f : faces_) {
    if (static_cast<int>(f.size()) > dimension_) {
      throw std::invalid_argument("face " + to_string(f) + " exceeds the dimension");
    }
    for (const auto& n : f) {
      if (!names.count(n)) throw std::invalid_argument("face uses unknown bhs '" + n + "'");
      Face sub = f;
      sub.erase(n);
      if (!faces_.count(sub)) {
        throw std::invalid_argument("faces not downward closed at " + to_string(f));
      }
    }
  }
  for (const auto& a : annotations_) {
    if (!faces_.count(a.meets)) throw std::invalid_argument("annotation meets a non-face");
  }
}

bool FaceLattice::has_bhs(const std::string& name) const {
  return std::find(bhs_names_.begin(), bhs_names_.end(), name) != bhs_names_.end();
}

std::size_t FaceLattice::bhs_index(const std::string& name) const {
  auto it = std::find(bhs_names_.begin(), bhs_names_.end(), name);
  if (it == bhs_names_.end()) throw std::invalid_argument("unknown bhs '" + name + "'");
  return static_cast<std::size_t>(it - bhs_names_.begin());
}

std::vector<Face> FaceLattice::sorted_faces() const {
  std::vector<Face> out(faces_.begin(), faces_.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Face& a, const Face& b) { return a.size() < b.size(); });
  return out;
}

std::vector<Face> FaceLattice::proper_faces() const {
  auto all = sorted_faces();
  all.erase(all.begin());
  return all;
}

FaceLattice FaceLattice::renamed(const std::map<std::string, std::string>& renames) const {
  auto map_name = [&](const std::string& n) {
    auto it = renames.find(n);
    return it == renames.end() ? n : it->second;
  };
  auto map_face = [&](const Face& f) {
    Face g;
    for (const auto& n : f) g.insert(map_name(n));
    return g;
  };
  std::vector<std::string> names;
  for (const auto& n : bhs_names_) names.push_back(map_name(n));
  std::set<Face> faces;
  for (const auto& f : faces_) faces.insert(map_face(f));
  std::vector<InteriorSubmanifold> ann;
  for (const auto& a : annotations_) ann.push_back({a.name, map_face(a.meets)});
  return FaceLattice(dimension_, std::move(names), std::move(faces), std::move(ann));
}

FaceLattice FaceLattice::with_annotation(InteriorSubmanifold a) const {
  auto ann = annotations_;
  ann.push_back(std::move(a));
  return FaceLattice(dimension_, bhs_names_, faces_, std::move(ann));
}

FaceLattice model_quadrant(int k, int n) {
  if (k < 0 || n < 0 || k > n) {
    throw std::invalid_argument("model_quadrant requires 0 <= k <= n");
  }
  std::vector<std::string> names;
  if (k == 1) {
    names = {"Hx"};
  } else if (k == 2) {
    names = {"Hx", "Hy"};
  } else {
    for (int i = 1; i <= k; ++i) names.push_back("H" + std::to_string(i));
  }
  std::set<Face> faces;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Face f;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) f.insert(names[static_cast<std::size_t>(i)]);
    }
    faces.insert(std::move(f));
  }
  return FaceLattice(n, std::move(names), std::move(faces));
}

int codim(const FaceLattice& z, const Face& t) {
  if (!z.is_face(t)) throw std::invalid_argument(to_string(t) + " is not a face");
  return static_cast<int>(t.size());
}

std::string to_string(const Face& f) {
  std::string s = "{";
  bool first = true;
  for (const auto& n : f) {
    if (!first) s += ",";
    s += n;
    first = false;
  }
  return s + "}";
}

}  // namespace bcalc
