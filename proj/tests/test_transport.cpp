#include "bcalc/corner_geometry.hpp"
#include "bcalc/transport.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace bcalc;
using test::q;
using test::set;

TEST_CASE("pull-back through the blow-down") {
  const auto beta = double_b_space().blowdown;
  const IndexFamily fam{{"Hx", set({{"1/3", 0}})}, {"Hy", set({{"-1/2", 0}})}};
  const IndexFamily out = pull_back_family(beta, fam);
  // beta^*(x^a y^b) = xi^(a+b) eta^b on the chart where xi defines ff and eta defines rb.
  CHECK(out.at("ff") == set({{"-1/6", 0}}));
  CHECK(out.at("lb") == set({{"1/3", 0}}));
  CHECK(out.at("rb") == set({{"-1/2", 0}}));
}

TEST_CASE("pull-back with log terms adds log powers") {
  const auto beta = double_b_space().blowdown;
  const IndexFamily fam{{"Hx", set({{"0", 1}})}, {"Hy", set({{"0", 2}})}};
  CHECK(pull_back_family(beta, fam).at("ff") == set({{"0", 3}}));
}

TEST_CASE("pull-back to the double space from the right factor") {
  const IndexSet f = set({{"1/2", 1}});
  const IndexFamily out = pull_back_family(x2b_halfline_projection(false), {{"Hx", f}});
  CHECK(out.at("lb") == IndexSet::smooth());
  CHECK(out.at("ff") == f);
  CHECK(out.at("rb") == f);
}

TEST_CASE("pull-back by the identity") {
  const FaceLattice z = model_quadrant(2, 2);
  const IndexFamily fam{{"Hx", set({{"1", 1}})}, {"Hy", IndexSet{}}};
  CHECK(pull_back_family(identity_map(z), fam) == fam);
  CHECK_THROWS_AS(pull_back_family(identity_map(z), {{"Hx", IndexSet::smooth()}}), std::invalid_argument);
}

TEST_CASE("push-forward to the half-line") {
  const auto f = x2b_halfline_projection(true);

  SUBCASE("smooth at lb and ff gives N0 x {0,1}") {
    const auto r = push_forward_halfline(f, {{"lb", IndexSet::smooth()}, {"ff", IndexSet::smooth()}, {"rb", set({{"1", 0}})}});
    CHECK(r.integrability_ok);
    CHECK(r.result == set({{"0", 1}}));
    for (const auto& row : r.face_contributions) {
      bool logs = false;
      for (const auto& e : row.set.generators()) logs |= e.p > 0;
      CHECK(logs == (row.face == Face{"ff", "lb"}));
    }
  }
  SUBCASE("empty at lb leaves the smooth set") {
    const auto r = push_forward_halfline(f, {{"lb", IndexSet{}}, {"ff", IndexSet::smooth()}, {"rb", set({{"1", 0}})}});
    CHECK(r.result == IndexSet::smooth());
  }
  SUBCASE("integrability failure is reported") {
    const auto r = push_forward_halfline(f, {{"lb", IndexSet::smooth()}, {"ff", IndexSet::smooth()}, {"rb", IndexSet::smooth()}});
    CHECK_FALSE(r.integrability_ok);
    CHECK(r.violating_bhs == std::vector<std::string>{"rb"});
  }
  SUBCASE("exponent 2 halves the exponents") {
    const BMapDescriptor square(model_quadrant(1, 1), model_quadrant(1, 1), {{2}}, true);
    // x = t^(1/2): x^(1 + n) = t^((1 + n) / 2).
    CHECK(push_forward_halfline(square, {{"Hx", set({{"1", 0}})}}).result == set({{"1/2", 0}, {"1", 0}}));
  }
  SUBCASE("non-proper support is refused") {
    CHECK_THROWS_AS(push_forward_halfline(f, {{"lb", IndexSet{}}, {"ff", IndexSet{}}, {"rb", IndexSet{}}}, {false}),
                    HypothesisViolated);
  }
  SUBCASE("target must be the half-line") {
    CHECK_THROWS_AS(push_forward_halfline(double_b_space().blowdown,
                                          {{"lb", IndexSet{}}, {"ff", IndexSet{}}, {"rb", IndexSet{}}}),
                    std::invalid_argument);
  }
}

TEST_CASE("push-forward along b-fibrations") {
  SUBCASE("blow-down is refused") {
    CHECK_THROWS_AS(push_forward_family(double_b_space().blowdown,
                                        {{"lb", IndexSet{}}, {"ff", IndexSet{}}, {"rb", IndexSet{}}}),
                    HypothesisViolated);
  }
  SUBCASE("identity") {
    const FaceLattice z = model_quadrant(2, 2);
    const BMapDescriptor id(z, z, {{1, 0}, {0, 1}}, true);
    const IndexFamily fam{{"Hx", set({{"1/2", 1}})}, {"Hy", set({{"-1", 0}})}};
    CHECK(push_forward_family(id, fam).result == fam);
  }
  SUBCASE("lifted projection from the triple space") {
    IndexFamily fam;
    const FaceLattice x3b = triple_b_space().first;
    for (const auto& h : x3b.bhs_names()) fam[h] = IndexSet::smooth();
    fam["bf3"] = set({{"1", 0}});
    const auto r = push_forward_family(lifted_projection(3), fam);
    CHECK(r.integrability_ok);
    // Each column pairs two bhs meeting in a corner, as for X2b -> R+.
    const IndexSet logs = extended_union(IndexSet::smooth(), IndexSet::smooth());
    CHECK(r.result.at("lb") == logs);
    CHECK(r.result.at("rb") == logs);
    CHECK(r.result.at("ff") == logs);
  }
}

TEST_CASE("b-density shift") {
  IndexFamily fam{{"lb", IndexSet::smooth()}, {"rb", IndexSet::smooth()}};
  const IndexFamily b = b_density_shift(fam, DensityDirection::to_b);
  CHECK(b.at("lb") == set({{"1", 0}}));
  CHECK(b.at("rb") == set({{"1", 0}}));
  CHECK(b_density_shift(b, DensityDirection::from_b) == fam);
}
