#include "bcalc/cli.hpp"
#include "bcalc/corner_geometry.hpp"
#include "bcalc/examples.hpp"
#include "bcalc/serialize.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bcalc;
using test::set;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("json round trips") {
  const IndexSet e = set({{"1/2", 1}, {"-1", 0}});
  CHECK(index_set_from_json(to_json(e)) == e);
  CHECK(index_set_from_json(Json::parse(R"([{"re": "0", "p": 0}])")) == IndexSet::smooth());
  CHECK(index_set_from_json(Json::parse(R"({"generators": [{"z": "1+i", "p": 0}]})")) ==
        IndexSet::single(parse_complex("1+i")));

  const FaceLattice x3b = triple_b_space().first;
  CHECK(lattice_from_json(to_json(x3b)) == x3b);
  const BMapDescriptor pi = lifted_projection(2);
  CHECK(bmap_from_json(to_json(pi)) == pi);
  const BDiffOp p({{ExactComplex(1), parse_complex("1/3")}, {parse_complex("2-i")}}, 1);
  CHECK(operator_from_json(to_json(p)) == p);
  const FullCalcDescriptor d{-1, IndexSet{}, set({{"1", 1}})};
  CHECK(descriptor_from_json(to_json(d)) == d);
  const IndexFamily fam{{"lb", IndexSet::smooth()}, {"rb", IndexSet{}}};
  CHECK(family_from_json(to_json(fam)) == fam);
}

TEST_CASE("malformed json is rejected") {
  CHECK_THROWS_AS(index_set_from_json(Json::parse(R"({"gens": []})")), std::invalid_argument);
  CHECK_THROWS_AS(index_set_from_json(Json::parse(R"([{"re": "0", "p": 0.5}])")), std::invalid_argument);
  CHECK_THROWS(operator_from_json(Json::parse(R"({"coeffs": [["x"]]})")));
  CHECK_THROWS_AS(family_from_json(Json::parse("[]")), std::invalid_argument);
}

TEST_CASE("twelve significant digits") {
  CHECK(round12(0.1 + 0.2) == 0.3);
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(0.0) == 0.0);
}

TEST_CASE("cli: index set tables") {
  const Run r = cli({"indexset", "extunion", "smooth.json", "smooth.json", "--truncate", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(12)") != std::string::npos);
  const Run j = cli({"--json", "indexset", "extunion", "smooth", "smooth", "--truncate", "5"});
  const Json parsed = Json::parse(j.out);
  CHECK(parsed["members"].size() == 12);
  CHECK(index_set_from_json(parsed) == set({{"0", 1}}));
  const Run inf = cli({"indexset", "inf", "empty"});
  CHECK(inf.out == "inf Re z = +inf\n");
}

TEST_CASE("cli: exit codes") {
  const Run fib = cli({"map", "check-bfibration", "blowdown_x2b.json"});
  CHECK(fib.code == 2);
  CHECK(fib.out.find("ff") != std::string::npos);
  CHECK(cli({"map", "check-bfibration", "pi3"}).code == 0);
  CHECK(cli({"indexset", "union", "nosuch", "smooth"}).code == 1);
  CHECK(cli({"indexset", "union", "{broken", "smooth"}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"op", "split", "poly:1,1", "--gamma", "-1"}).code == 2);
  CHECK(cli({"op", "specb", "poly:1,0"}).code == 1);
  CHECK(cli({"op", "compose", R"({"order":0,"E_lb":[],"E_rb":[{"re":"0","p":0}]})",
             R"({"order":0,"E_lb":[{"re":"0","p":0}],"E_rb":[]})"})
            .code == 2);
  CHECK(cli({"transport", "pushforward", "blowdown_x2b", R"({"lb":[],"rb":[],"ff":[]})"}).code == 2);
}

TEST_CASE("cli: operators") {
  const Run inv = cli({"--json", "op", "inverse", "poly:1/2,1", "--gamma", "0"});
  REQUIRE(inv.code == 0);
  const Json k = Json::parse(inv.out);
  CHECK(k["terms"].size() == 1);
  CHECK(k["terms"][0]["side"] == "rb");
  CHECK(k["terms"][0]["z"]["re"] == "1/2");

  const Run par = cli({"--json", "op", "parametrix", "poly:1/2,1", "--steps", "2"});
  REQUIRE(par.code == 0);
  CHECK(index_set_from_json(Json::parse(par.out)["parametrix"]["E_rb"]) == set({{"1/2", 1}}));

  const Run check = cli({"--json", "op", "apply-check", "poly:1,1"});
  CHECK(Json::parse(check.out)["within_tol"] == true);
}

TEST_CASE("cli: workspace and determinism") {
  const auto dir = std::filesystem::temp_directory_path() / "bcalc_ws_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "half.json");
    f << R"({"generators": [{"re": "1/2", "p": 0}]})";
    std::ofstream m(dir / "sq.json");
    m << R"({"source": "quadrant1", "target": "quadrant1", "e": [[2]], "fibration_faces": true})";
  }
  const Run r = cli({"--workspace", dir.string(), "--json", "indexset", "sum", "half", "half"});
  REQUIRE(r.code == 0);
  CHECK(index_set_from_json(Json::parse(r.out)) == set({{"1", 0}}));
  const Run pf = cli({"--workspace", dir.string(), "--json", "transport", "pushforward", "sq", R"({"Hx": [{"re": "1", "p": 0}]})"});
  REQUIRE(pf.code == 0);
  CHECK(index_set_from_json(Json::parse(pf.out)["result"]) == set({{"1/2", 0}, {"1", 0}}));
  CHECK(cli({"--workspace", (dir / "missing").string(), "indexset", "inf", "smooth"}).code == 1);

  const std::vector<std::string> args{"--json", "space", "triple"};
  CHECK(cli(args).out == cli(args).out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli: verify suite") {
  const Run r = cli({"--json", "verify", "--suite", "combinatorics"});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["all_passed"] == true);
  CHECK(j["criteria"].size() == 4);
  CHECK(cli({"verify", "--suite", "nonsense"}).code == 1);
}
