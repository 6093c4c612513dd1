#include "bcalc/bmaps.hpp"
#include "bcalc/corner_geometry.hpp"
#include "bcalc/lattice.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace bcalc;

namespace {

ExponentMatrix product(const ExponentMatrix& a, const ExponentMatrix& b) {
  ExponentMatrix out(a.size(), std::vector<int>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// Monomial map between quadrants given by its exponent matrix.
BMapDescriptor monomial(int n_src, int n_tgt, ExponentMatrix e) {
  return BMapDescriptor(model_quadrant(n_src, n_src), model_quadrant(n_tgt, n_tgt), std::move(e));
}

std::vector<BMapDescriptor> builtins() {
  return {double_b_space().blowdown, triple_blowdown(), lifted_projection(1), lifted_projection(2),
          lifted_projection(3),      quadrant_projection(1), quadrant_projection(2), quadrant_projection(3),
          halfline_projection(true), halfline_projection(false), x2b_halfline_projection(true),
          x2b_halfline_projection(false)};
}

}  // namespace

TEST_CASE("model quadrants") {
  const FaceLattice z0 = model_quadrant(0, 2);
  CHECK(z0.bhs_count() == 0);
  CHECK(z0.faces() == std::set<Face>{Face{}});
  const FaceLattice z2 = model_quadrant(2, 2);
  CHECK(z2.bhs_names() == std::vector<std::string>{"Hx", "Hy"});
  CHECK(z2.faces() == std::set<Face>{{}, {"Hx"}, {"Hy"}, {"Hx", "Hy"}});
  CHECK(model_quadrant(3, 3).faces().size() == 8);
  CHECK(model_quadrant(1, 3).dimension() == 3);
  CHECK_THROWS_AS(model_quadrant(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(model_quadrant(-1, 2), std::invalid_argument);
}

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(FaceLattice(2, {"a", "b"}, {{}, {"a"}}), std::invalid_argument);
  CHECK_THROWS_AS(FaceLattice(2, {"a"}, {{}, {"a"}, {"a", "c"}}), std::invalid_argument);
  CHECK_THROWS_AS(FaceLattice(1, {"a", "b"}, {{}, {"a"}, {"b"}, {"a", "b"}}), std::invalid_argument);
}

TEST_CASE("blow-up of the quadrant corner") {
  const BlowupRecord r = blow_up_face(model_quadrant(2, 2), {"Hx", "Hy"}, "ff");
  const FaceLattice& x = r.result;
  CHECK(x.bhs_count() == 3);
  CHECK(x.is_face({"Hx", "ff"}));
  CHECK(x.is_face({"Hy", "ff"}));
  CHECK_FALSE(x.is_face({"Hx", "Hy"}));
  CHECK(induced_face_map(r.blowdown, {"ff"}) == Face{"Hx", "Hy"});
  CHECK(induced_face_map(r.blowdown, {"Hx"}) == Face{"Hx"});

  const BlowupRecord x2b = double_b_space();
  CHECK(x2b.result.bhs_names() == std::vector<std::string>{"lb", "rb", "ff"});
  CHECK(codim(x2b.result, {"lb", "ff"}) == 2);
  CHECK(codim(x2b.result, {}) == 0);
  CHECK(x2b.result.annotations().size() == 1);
}

TEST_CASE("blow-up of an axis in the 3-quadrant") {
  const BlowupRecord r = blow_up_face(model_quadrant(3, 3), {"H2", "H3"}, "ff1");
  const FaceLattice& x = r.result;
  CHECK_FALSE(x.is_face({"H2", "H3"}));
  CHECK(x.is_face({"H2", "ff1"}));
  CHECK(x.is_face({"H3", "ff1"}));
  CHECK(x.is_face({"H1", "ff1"}));
  CHECK(x.is_face({"H1", "H2", "ff1"}));
  CHECK_FALSE(x.is_face({"H1", "H2", "H3"}));
}

TEST_CASE("blow-up preconditions") {
  CHECK_THROWS_AS(blow_up_face(model_quadrant(2, 2), {"Hx"}, "ff"), std::invalid_argument);
  CHECK_THROWS_AS(blow_up_face(model_quadrant(2, 2), {"Hx", "Hy"}, "Hx"), std::invalid_argument);
  CHECK_THROWS_AS(codim(double_b_space().result, {"lb", "rb"}), std::invalid_argument);
}

TEST_CASE("front face meets exactly what the center met") {
  // For every T: T u {ff} is a face iff T u center is a face and center is not inside T.
  const FaceLattice z = model_quadrant(3, 3);
  const Face center{"H1", "H2"};
  const FaceLattice x = blow_up_face(z, center, "ff").result;
  for (const auto& t : z.faces()) {
    Face with_ff = t;
    with_ff.insert("ff");
    Face with_center = t;
    with_center.insert(center.begin(), center.end());
    const bool contains_center = std::includes(t.begin(), t.end(), center.begin(), center.end());
    CHECK(x.is_face(with_ff) == (z.is_face(with_center) && !contains_center));
  }
}

TEST_CASE("triple b-space") {
  const auto [x3b, chain] = triple_b_space();
  CHECK(x3b.bhs_count() == 7);
  CHECK(chain.size() == 4);
  CHECK(codim(x3b, {"bf3", "fff"}) == 2);
  CHECK(x3b.dimension() == 3);
}

TEST_CASE("composition is the matrix product") {
  const auto beta1 = monomial(2, 2, {{1, 1}, {0, 1}});
  const auto beta2 = monomial(2, 2, {{1, 0}, {1, 1}});
  CHECK(compose(beta1, beta2).exponents() == ExponentMatrix{{2, 1}, {1, 1}});

  const auto f = double_b_space().blowdown;
  CHECK(compose(f, identity_map(f.target())) == f);
  const auto down = compose(f, halfline_projection(true));
  CHECK(down.e("lb", "Hx") == 1);
  CHECK(down.e("ff", "Hx") == 1);
  CHECK(down.e("rb", "Hx") == 0);
  CHECK_THROWS_AS(compose(halfline_projection(true), f), std::invalid_argument);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> ex(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    ExponentMatrix a(3, std::vector<int>(3)), b(3, std::vector<int>(2));
    for (auto& row : a)
      for (auto& v : row) v = ex(rng);
    for (auto& row : b)
      for (auto& v : row) v = ex(rng);
    for (int i = 0; i < 3; ++i) a[i][i] += 1;
    for (int i = 0; i < 2; ++i) b[i][i] += 1;
    CHECK(compose(monomial(3, 3, a), monomial(3, 2, b)).exponents() == product(a, b));
  }
}

TEST_CASE("commuting squares of the lifted projections") {
  for (int i = 1; i <= 3; ++i) {
    CAPTURE(i);
    const auto left = compose(lifted_projection(i), double_b_space().blowdown);
    const auto right = compose(triple_blowdown(), quadrant_projection(i));
    CHECK(left.exponents() == right.exponents());
  }
}

TEST_CASE("lifted projection 3 bhs table") {
  const auto pi = lifted_projection(3);
  CHECK(induced_face_map(pi, {"ff2"}) == Face{"lb"});
  CHECK(induced_face_map(pi, {"bf1"}) == Face{"lb"});
  CHECK(induced_face_map(pi, {"ff1"}) == Face{"rb"});
  CHECK(induced_face_map(pi, {"bf2"}) == Face{"rb"});
  CHECK(induced_face_map(pi, {"fff"}) == Face{"ff"});
  CHECK(induced_face_map(pi, {"ff3"}) == Face{"ff"});
  CHECK(induced_face_map(pi, {"bf3"}) == Face{});
  CHECK(induced_face_map(pi, {}) == Face{});
}

TEST_CASE("b-fibration check") {
  const auto r = check_b_fibration(double_b_space().blowdown);
  CHECK_FALSE(r.codim_ok);
  CHECK(r.violating_faces == std::vector<std::string>{"ff"});
  CHECK_FALSE(r.is_b_fibration());
  for (int i = 1; i <= 3; ++i) CHECK(check_b_fibration(lifted_projection(i)).is_b_fibration());
  const auto id = check_b_fibration(identity_map(model_quadrant(2, 2)));
  CHECK(id.codim_ok);

  SUBCASE("user maps carry no fibration assertion") {
    const auto user = monomial(2, 1, {{1}, {0}});
    const auto rep = check_b_fibration(user);
    CHECK(rep.codim_ok);
    CHECK_FALSE(rep.fibration_flag);
    CHECK_FALSE(rep.is_b_fibration());
  }
}

TEST_CASE("inconsistent descriptors are rejected") {
  const FaceLattice x2b = double_b_space().result;
  const BMapDescriptor bad(model_quadrant(2, 2), x2b, {{1, 1, 0}, {0, 0, 0}});
  CHECK_THROWS_AS(induced_face_map(bad, {"Hx"}), InconsistentMap);
  CHECK_THROWS_AS(BMapDescriptor(model_quadrant(2, 2), x2b, {{1, 0, 0}}), std::invalid_argument);
}

TEST_CASE("a bhs maps into the boundary iff some exponent is positive") {
  for (const auto& f : builtins()) {
    for (const auto& g : f.source().bhs_names()) {
      bool positive = false;
      for (const auto& h : f.target().bhs_names()) positive |= f.e(g, h) != 0;
      CHECK(positive == !induced_face_map(f, {g}).empty());
    }
  }
}
