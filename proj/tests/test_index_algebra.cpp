#include "bcalc/index_algebra.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace bcalc;
using test::entry;
using test::q;
using test::set;

namespace {

/// Membership by brute force: (z, p) is in the closure of the generators iff
/// some generator (w, r) has z - w in N_0 and p <= r.
bool member_oracle(const EntryList& gens, const IndexEntry& e) {
  for (const auto& g : gens) {
    if (e.z.im != g.z.im) continue;
    const Rational d = e.z.re - g.z.re;
    if (d >= 0 && denominator(d) == 1 && e.p <= g.p) return true;
  }
  return false;
}

IndexSet random_set(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3), logp(0, 2), count(0, 3);
  EntryList raw;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) raw.emplace_back(Exponent(Rational(num(rng), den(rng))), logp(rng));
  return IndexSet::complete(raw);
}

}  // namespace

TEST_CASE("union") {
  CHECK(set_union(IndexSet{}, set({{"1", 0}})) == set({{"1", 0}}));
  CHECK(set_union(set({{"0", 0}}), set({{"0", 0}})) == set({{"0", 0}}));
  const IndexSet u = set_union(set({{"0", 0}}), set({{"1/2", 0}}));
  CHECK(u.generators() == EntryList{entry("0", 0), entry("1/2", 0)});
}

TEST_CASE("extended union") {
  CHECK(extended_union(IndexSet{}, set({{"1/3", 2}})) == set({{"1/3", 2}}));
  CHECK(extended_union(IndexSet::smooth(), IndexSet::smooth()) == set({{"0", 1}}));
  CHECK(extended_union(set({{"2/3", 0}}), set({{"2/3", 0}})) == set({{"2/3", 1}}));

  SUBCASE("log power raised only at shared exponents") {
    const IndexSet e = extended_union(set({{"0", 0}}), set({{"1/2", 0}}));
    CHECK(e == set({{"0", 0}, {"1/2", 0}}));
  }
  SUBCASE("cross term adds p' + p'' + 1") {
    const IndexSet e = extended_union(set({{"0", 1}}), set({{"1", 2}}));
    CHECK(e.contains(entry("1", 4)));
    CHECK_FALSE(e.contains(entry("1", 5)));
    CHECK_FALSE(e.contains(entry("0", 2)));
  }
}

TEST_CASE("sum") {
  CHECK(set_sum(IndexSet::smooth(), IndexSet::smooth()) == IndexSet::smooth());
  CHECK(set_sum(set({{"1/4", 0}}), IndexSet::smooth()) == set({{"1/4", 0}}));
  CHECK(set_sum(set({{"1/2", 1}}), set({{"1/3", 2}})).generators() == EntryList{entry("5/6", 3)});
  CHECK(set_sum(IndexSet{}, IndexSet::smooth()).empty());
}

TEST_CASE("complete") {
  CHECK(IndexSet::complete({}).empty());
  CHECK(IndexSet::complete({entry("0", 0)}) == IndexSet::smooth());
  CHECK(IndexSet::complete({entry("-1", 0), entry("0", 1)}).generators() == EntryList{entry("-1", 0), entry("0", 1)});
  CHECK(IndexSet::complete({entry("2", 0), entry("0", 1)}).generators() == EntryList{entry("0", 1)});
  CHECK_THROWS(IndexSet::complete({entry("0", -1)}));
}

TEST_CASE("inf_re") {
  CHECK(set({{"2", 0}, {"3", 1}}).inf_re() == 2.0);
  CHECK(std::isinf(IndexSet{}.inf_re()));
  CHECK_FALSE(IndexSet{}.inf_re_exact().has_value());
  CHECK(*set({{"-1", 0}, {"1/2", 0}}).inf_re_exact() == -1);
}

TEST_CASE("truncate") {
  CHECK(IndexSet::smooth().truncate(2) == EntryList{entry("0", 0), entry("1", 0), entry("2", 0)});
  CHECK(IndexSet{}.truncate(100).empty());
  CHECK(set({{"1/2", 1}}).truncate(q("5/2")) == EntryList{entry("1/2", 0), entry("1/2", 1), entry("3/2", 0),
                                                          entry("3/2", 1), entry("5/2", 0), entry("5/2", 1)});
}

TEST_CASE("negate") {
  CHECK(negate(set({{"1/3", 0}})) == EntryList{entry("-1/3", 0)});
  CHECK(negate(IndexSet{}).empty());
  const EntryList n = negate(set({{"1", 0}, {"2", 1}}));
  CHECK(std::set<IndexEntry>(n.begin(), n.end()) == std::set<IndexEntry>{entry("-1", 0), entry("-2", 1)});
}

TEST_CASE("complex exponents are kept apart by imaginary part") {
  const IndexSet a = IndexSet::single(parse_complex("1+i"));
  const IndexSet b = IndexSet::single(parse_complex("1-i"));
  CHECK(extended_union(a, b) == set_union(a, b));
  CHECK(extended_union(a, a).contains({parse_complex("2+i"), 1}));
}

TEST_CASE("closure properties on random sets") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const IndexSet e = random_set(rng);
    const IndexSet f = random_set(rng);
    const IndexSet u = set_union(e, f);
    const IndexSet x = extended_union(e, f);
    const IndexSet s = set_sum(e, f);
    for (const IndexSet* r : {&u, &x, &s}) {
      for (const auto& m : r->truncate(3)) {
        CHECK(r->contains({m.z + Exponent(1), m.p}));
        if (m.p > 0) CHECK(r->contains({m.z, m.p - 1}));
      }
    }
    CHECK(extended_union(e, f) == extended_union(f, e));
    CHECK(set_union(u, x) == x);
    for (const auto& m : u.truncate(3)) {
      CHECK((member_oracle(e.generators(), m) || member_oracle(f.generators(), m)));
    }
    for (const auto& m : e.truncate(3)) CHECK(member_oracle(e.generators(), m));
    if (!e.empty() && !f.empty()) CHECK(s.inf_re() == doctest::Approx(e.inf_re() + f.inf_re()));
  }
}

TEST_CASE("shift and divide") {
  CHECK(IndexSet::smooth().shift(Exponent(1)) == set({{"1", 0}}));
  CHECK(set({{"1", 2}}).divide_exponents(2) == set({{"1/2", 2}, {"1", 2}}));
}

TEST_CASE("string form") {
  CHECK(to_string(IndexSet{}) == "{}");
  CHECK(to_string(set({{"0", 1}})) == "{(0,1)}");
}
