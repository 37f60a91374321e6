#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ihom/io.hpp"

using namespace ihom;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture_path(const std::string& name) { return std::string(IHOM_FIXTURE_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("json text") {
  const Json j = parse_json(R"({"b": 1, "a": [1, 2]})");
  // Keys keep their input order.
  CHECK(dump(j) == "{\n  \"b\": 1,\n  \"a\": [\n    1,\n    2\n  ]\n}\n");
  CHECK_THROWS_AS(parse_json("{"), FormatError);
  CHECK_THROWS_AS(parse_json("not json"), FormatError);
}

TEST_CASE("extended integers") {
  for (ExtInt v : {ExtInt(0), ExtInt(-3), ExtInt(12), ExtInt::pos_inf(), ExtInt::neg_inf()})
    CHECK(extint_from_json(to_json(v)) == v);
  CHECK(to_json(ExtInt::pos_inf()) == "+inf");
  CHECK_THROWS_AS(extint_from_json(Json("inf")), FormatError);
  CHECK_THROWS_AS(extint_from_json(Json(1.5)), FormatError);
}

TEST_CASE("spaces round trip") {
  for (const auto& f : all_fixtures()) {
    for (int side = 0; side < 2; ++side) {
      const Stratification& s = side ? f.pair.coarse : f.pair.fine;
      const auto& names = side ? f.coarse_names : f.fine_names;
      const SpaceData d = space_from_json(parse_json(dump(space_to_json(*f.pair.complex, s, names))));
      CHECK(d.complex == *f.pair.complex);
      CHECK(d.strat == s);
      CHECK(d.names == names);
    }
  }
}

TEST_CASE("spaces in arbitrary simplex order and labelling") {
  const Json j = parse_json(R"({
    "n": 1, "vertices": 3,
    "simplices": [[2, 0], [1], [0], [1, 2], [2]],
    "strata": [7, 3, 7, 3, 0],
    "stratum_dims": [0, 0, 0, 1, 0, 0, 0, 1],
    "stratum_names": ["v", "x", "x", "B", "x", "x", "x", "A"]
  })");
  const SpaceData d = space_from_json(j);
  CHECK(d.complex.size() == 5);
  CHECK(d.strat.size() == 3);
  CHECK(d.names == std::vector<std::string>{"A", "B", "v"});
  CHECK(d.strat.dim(d.strat.of_simplex(d.complex.id_of({2}))) == 0);

  const Json levels_only = parse_json(R"({"n": 1, "vertices": 3, "levels": [1, 1, 0],
                                         "simplices": [[0], [1], [2], [0, 2], [1, 2]]})");
  const SpaceData e = space_from_json(levels_only);
  CHECK(e.strat == d.strat);
}

TEST_CASE("malformed spaces") {
  CHECK_THROWS_AS(space_from_json(parse_json(R"({"n": 1})")), FormatError);
  CHECK_THROWS_AS(space_from_json(parse_json(R"({"n": 1, "vertices": 2, "simplices": [[0, 1]], "levels": [1, 1]})")),
                  FormatError);
  CHECK_THROWS_AS(space_from_json(parse_json(R"({"n": 1, "vertices": 2, "simplices": [[0], [1], [0, 1]],
                                                 "levels": [0, 0]})")),
                  FormatError);
  CHECK_THROWS_AS(space_from_json(parse_json(R"({"n": 1, "vertices": 2, "simplices": [[0], [1], [0, 1]],
                                                 "strata": [0, 0], "stratum_dims": [1]})")),
                  FormatError);
  // A disconnected stratum.
  CHECK_THROWS_AS(space_from_json(parse_json(R"({"n": 1, "vertices": 3, "simplices": [[0], [1], [2], [0, 2], [1, 2]],
                                                 "strata": [0, 0, 1, 0, 0], "stratum_dims": [1, 0]})")),
                  FormatError);
  CHECK_THROWS_AS(space_from_json(parse_json(R"({"n": "one", "vertices": 1, "simplices": [[0]]})")), FormatError);
}

TEST_CASE("refinements round trip") {
  for (const auto& f : all_fixtures()) {
    const RefinementData d =
        refinement_from_json(parse_json(dump(refinement_to_json(f.pair, f.fine_names, f.coarse_names))));
    CHECK(*d.pair.complex == *f.pair.complex);
    CHECK(d.pair.fine == f.pair.fine);
    CHECK(d.pair.coarse == f.pair.coarse);
    CHECK(d.pair.map == f.pair.map);
    CHECK(d.fine_names == f.fine_names);
    CHECK(d.coarse_names == f.coarse_names);
  }
  const PairFixture a = interval_fixture();
  const PairFixture b = cone_point_fixture();
  Json mixed = refinement_to_json(a.pair);
  mixed["coarse"] = refinement_to_json(b.pair)["coarse"];
  CHECK_THROWS_AS(refinement_from_json(mixed), FormatError);
  CHECK_THROWS_AS(refinement_from_json(parse_json("{}")), FormatError);
}

TEST_CASE("perversities round trip") {
  const PairFixture f = identity_fixture();
  const auto& s = f.pair.fine;
  const auto poles = s.singular_strata();
  const Perversity p = make_perversity(s, {{poles[0], ExtInt::pos_inf()}, {poles[1], ExtInt(-2)}});
  CHECK(perversity_from_json(parse_json(dump(perversity_to_json(s, p))), s) == p);
  for (const auto& lp : f.fine_perversities) CHECK(perversity_from_json(perversity_to_json(s, lp.p), s) == lp.p);
  CHECK_THROWS_AS(perversity_from_json(parse_json(R"({"values": {"99": 1}})"), s), FormatError);
  CHECK_THROWS_AS(perversity_from_json(parse_json(R"({"vals": {}})"), s), FormatError);
  // Regular strata carry 0.
  const int regular = s.strata()[0].regular ? 0 : s.strata()[1].regular ? 1 : 2;
  CHECK_THROWS_AS(perversity_from_json(parse_json("{\"values\": {\"" + std::to_string(regular) + "\": 1}}"), s),
                  FormatError);
}

TEST_CASE("homology summaries round trip") {
  const auto h = homology(simplicial_chains(minimal_rp2(), Ring::integers()));
  const Json j = homology_to_json(h, "H");
  CHECK(j["ring"] == "Z");
  CHECK(j["theory"] == "H");
  CHECK(j["1"]["torsion"] == Json::array({2}));
  CHECK(homology_from_json(j).same_as(h));
  const auto f = homology(simplicial_chains(minimal_torus(), Ring::field(3)));
  CHECK(homology_from_json(homology_to_json(f)).same_as(f));
  CHECK_THROWS_AS(homology_from_json(Json::array()), FormatError);
}

TEST_CASE("chain complexes are exported as dense matrices") {
  const auto c = simplicial_chains(simplex_boundary(2), Ring::integers());
  const Json j = chain_complex_to_json(c);
  CHECK(j["dims"] == Json::array({3, 3}));
  const Json& d1 = j["boundary"][1];
  REQUIRE(d1.size() == 3);
  REQUIRE(d1[0].size() == 3);
  // Column of edge [0,1]: -[0] + [1].
  CHECK(d1[0][0] == -1);
  CHECK(d1[1][0] == 1);
  CHECK(d1[2][0] == 0);
}

TEST_CASE("checked-in fixtures match the constructors") {
  for (const auto& f : all_fixtures()) CHECK_MESSAGE(dump(fixture_to_json(f)) == read_file(fixture_path(f.name)), f.name);
  for (const auto& [name, link] : standard_links())
    CHECK(dump(space_to_json(link.complex, link.strat)) == read_file(fixture_path("link-" + name)));
}

TEST_CASE("reports are deterministic") {
  const PairFixture f = square_fixture_k();
  VerifyOptions o;
  o.field_primes = {2, 5};
  const auto run = [&] {
    Json all = Json::array();
    for (const auto& lp : f.fine_perversities) all.push_back(invariance_to_json(verify_coarsening(f.pair, lp.p, o)));
    all.push_back(taxonomy_to_json(classify(f.pair), f.fine_names));
    return dump(all);
  };
  CHECK(run() == run());
}
