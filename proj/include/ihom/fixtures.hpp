#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ihom/complex.hpp"
#include "ihom/harness.hpp"
#include "ihom/perversity.hpp"
#include "ihom/refinement.hpp"
#include "ihom/strat.hpp"

namespace ihom {

// A stratification with a display name per stratum id.
struct NamedStratification {
  Stratification strat;
  std::vector<std::string> names;

  int id(const std::string& name) const;  // throws std::out_of_range
  std::vector<std::string> names_of(const std::vector<int>& ids) const;  // sorted
};

// The square with a horizontal line and a vertical segment hanging from its
// midpoint, stratified three ways:
//   fine:         regions R1 R2 R3, half-lines S1 S2, segment S3, points Q1 Q2 Q3
//   intermediate: S3, R2, R3 merged into R4
//   coarse:       R4, R5 = R1 + Q2, S4 = S1 + Q1 + S2, Q3
// Closed square on a 7x7 grid of half units; the line is y = 3, the segment
// x = 3 below it, Q2 = (1, 5), Q3 = (5, 5).
struct SquareExample {
  std::shared_ptr<const SimplicialComplex> complex;
  NamedStratification fine;
  NamedStratification intermediate;
  NamedStratification coarse;
  RefinementPair j;  // fine -> intermediate
  RefinementPair i;  // fine -> coarse
  RefinementPair k;  // intermediate -> coarse
};

SquareExample square_example();

struct LabelledPerversity {
  std::string label;
  Perversity p;
};

// A refinement with perversities on both sides for the invariance suites.
struct PairFixture {
  std::string name;
  RefinementPair pair;
  std::vector<std::string> fine_names;
  std::vector<std::string> coarse_names;
  std::vector<LabelledPerversity> fine_perversities;    // for coarsening
  std::vector<LabelledPerversity> coarse_perversities;  // for refinement
};

PairFixture identity_fixture();       // suspension of the torus, poles singular
PairFixture square_fixture_j();       // fine -> intermediate (has a 1-exceptional stratum)
PairFixture square_fixture_i();       // fine -> coarse (has a 1-exceptional stratum)
PairFixture square_fixture_k();       // intermediate -> coarse
PairFixture cone_point_fixture();     // cone on a triangle, apex forgotten
PairFixture equator_fixture();        // suspension of the torus with an extra equator point
PairFixture join_fixture();           // circle joined with a circle, sphere stratum forgotten
PairFixture interval_fixture();       // cone on two points, apex forgotten (1-exceptional)

// Trivially stratified links S0, S1 (triangle boundary), T2 (7-vertex torus).
std::vector<std::pair<std::string, Link>> standard_links();
Link link_by_name(const std::string& name);

// Cones with apex value -1..2; joins with S0 and S1 at sphere value 0, 1;
// suspensions with pole values (0,0), (1,0), (0,1), (1,1).
std::vector<LocalCase> standard_local_cases();

// All of the above, in that order.
std::vector<PairFixture> all_fixtures();
PairFixture fixture_by_name(const std::string& name);

}  // namespace ihom
