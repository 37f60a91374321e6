#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "ihom/fixtures.hpp"
#include "ihom/perversity.hpp"
#include "ihom/refinement.hpp"

using namespace ihom;

namespace {

using Names = std::vector<std::string>;

bool closure_le(const SimplicialComplex& k, const Stratification& s, int q, int t) {
  for (int a : s.stratum(q).simplices)
    for (int b : s.stratum(t).simplices) {
      const Simplex& x = k.simplex(a);
      const Simplex& y = k.simplex(b);
      if (std::includes(y.begin(), y.end(), x.begin(), x.end())) return true;
    }
  return false;
}

// Taxonomy recomputed from the definitions with the order read off simplices.
StratumTaxonomy taxonomy_by_definition(const RefinementPair& r) {
  const auto& f = r.fine;
  const auto& c = r.coarse;
  StratumTaxonomy t;
  int top = -1;
  for (int s = 0; s < static_cast<int>(f.size()); ++s) {
    const int target = r.map[static_cast<std::size_t>(s)];
    (f.dim(s) == c.dim(target) ? t.source : t.virtual_strata).push_back(s);
    if (f.dim(s) < c.dim(target)) top = std::max(top, f.dim(s));
    if (!f.regular(s) && c.regular(target)) {
      t.exceptional.push_back(s);
      if (f.codim(s) == 1) t.one_exceptional.push_back(s);
    }
  }
  for (int v : t.virtual_strata)
    if (f.dim(v) == top) t.v_maximal.push_back(v);
  for (int s : t.source)
    if (std::any_of(t.v_maximal.begin(), t.v_maximal.end(), [&](int m) {
          return r.map[static_cast<std::size_t>(m)] == r.map[static_cast<std::size_t>(s)] &&
                 closure_le(*r.complex, f, m, s);
        }))
      t.stable.push_back(s);
  return t;
}

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// The nested cone: a cone on a cone on the triangle boundary, with the first
// apex on a line stratum ending at the second apex, refined from the
// trivial stratification.
RefinementPair nested_cone() {
  const FilteredComplex inner = cone(simplex_boundary(2), 0);
  const FilteredComplex outer = cone(inner, 0);
  auto k = std::make_shared<const SimplicialComplex>(outer.complex);
  return check_refinement(k, strata_from_levels(*k, outer.levels), trivial_stratification(*k));
}

}  // namespace

TEST_CASE("square example taxonomy") {
  const SquareExample sq = square_example();
  const auto& f = sq.fine;

  const StratumTaxonomy j = classify(sq.j);
  CHECK(f.names_of(minus(j.source, j.stable)) == Names{"Q1", "Q2", "Q3", "R1", "S1", "S2"});
  CHECK(f.names_of(j.virtual_strata) == Names{"S3"});
  CHECK(f.names_of(j.v_maximal) == Names{"S3"});
  CHECK(f.names_of(j.stable) == Names{"R2", "R3"});
  CHECK(f.names_of(j.one_exceptional) == Names{"S3"});

  const StratumTaxonomy i = classify(sq.i);
  CHECK(f.names_of(minus(i.source, i.stable)) == Names{"Q3", "R1", "S1", "S2"});
  CHECK(f.names_of(minus(i.virtual_strata, i.v_maximal)) == Names{"Q1", "Q2"});
  CHECK(f.names_of(i.v_maximal) == Names{"S3"});
  CHECK(f.names_of(i.stable) == Names{"R2", "R3"});
  CHECK(f.names_of(i.exceptional) == Names{"Q2", "S3"});
  CHECK(f.names_of(i.one_exceptional) == Names{"S3"});

  const auto& mid = sq.intermediate;
  const StratumTaxonomy k = classify(sq.k);
  CHECK(mid.names_of(minus(k.source, k.stable)) == Names{"Q3", "R4"});
  CHECK(mid.names_of(k.virtual_strata) == Names{"Q1", "Q2"});
  CHECK(mid.names_of(k.v_maximal) == Names{"Q1", "Q2"});
  CHECK(mid.names_of(k.stable) == Names{"R1", "S1", "S2"});
  CHECK(mid.names_of(k.exceptional) == Names{"Q2"});
  CHECK(k.one_exceptional.empty());
}

TEST_CASE("taxonomy agrees with the definitions on every fixture") {
  std::vector<RefinementPair> pairs;
  for (const auto& f : all_fixtures()) pairs.push_back(f.pair);
  pairs.push_back(nested_cone());
  for (const auto& r : pairs) {
    const StratumTaxonomy a = classify(r);
    const StratumTaxonomy b = taxonomy_by_definition(r);
    CHECK(a.source == b.source);
    CHECK(a.virtual_strata == b.virtual_strata);
    CHECK(a.v_maximal == b.v_maximal);
    CHECK(a.stable == b.stable);
    CHECK(a.exceptional == b.exceptional);
    CHECK(a.one_exceptional == b.one_exceptional);
  }
}

TEST_CASE("square decomposition passes through the intermediate stratification") {
  const SquareExample sq = square_example();
  const auto steps = simple_decomposition(sq.i);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].intermediate == sq.intermediate.strat);
  CHECK(steps[1].intermediate == sq.coarse.strat);
  CHECK(steps[0].measure_before == 1);
  CHECK(steps[0].measure_after == 0);
  CHECK(steps[1].measure_after == -1);

  REQUIRE(steps[0].merges.size() == 1);
  CHECK(sq.fine.names_of(steps[0].merges[0].members) == Names{"R2", "R3", "S3"});
  CHECK(steps[0].merges[0].dim == 2);

  // Second step: merges are stated in the intermediate numbering.
  const auto& second = steps[1];
  REQUIRE(second.merges.size() == 2);
  std::vector<Names> merged;
  for (const auto& m : second.merges) merged.push_back(sq.intermediate.names_of(m.members));
  std::sort(merged.begin(), merged.end());
  CHECK(merged == std::vector<Names>{{"Q1", "S1", "S2"}, {"Q2", "R1"}});

  CHECK(simple_decomposition(sq.j).size() == 1);
  CHECK(simple_decomposition(sq.k).size() == 1);
}

TEST_CASE("every decomposition step is simple and the steps compose") {
  std::vector<RefinementPair> pairs;
  for (const auto& f : all_fixtures()) pairs.push_back(f.pair);
  pairs.push_back(nested_cone());
  for (const auto& r : pairs) {
    const auto steps = simple_decomposition(r);
    if (r.equal()) {
      CHECK(steps.empty());
      CHECK_THROWS_AS(simple_step(r), AlreadyEqual);
      continue;
    }
    REQUIRE_FALSE(steps.empty());
    CHECK(steps.front().first.fine == r.fine);
    CHECK(steps.back().second.coarse == r.coarse);
    int measure = steps.front().measure_before + 1;
    // Fine stratum id -> stratum of the current stratification.
    std::vector<int> through(r.fine.size());
    std::iota(through.begin(), through.end(), 0);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& s = steps[i];
      CHECK(s.measure_before < measure);
      measure = s.measure_before;
      const StratumTaxonomy t = classify(s.first);
      CHECK(s.first.fine_order->depth(t.virtual_strata) == 0);
      CHECK(validate(*r.complex, s.intermediate).ok());
      for (int& x : through) x = s.first.target(x);
      if (i + 1 < steps.size()) CHECK(s.second.coarse == steps[i + 1].second.coarse);
    }
    // Composite of the step maps is the original stratum map, up to the
    // canonical numbering shared by equal stratifications.
    for (std::size_t s = 0; s < through.size(); ++s) CHECK(through[s] == r.map[s]);
  }
}

TEST_CASE("nested cone decomposes in two steps") {
  const RefinementPair r = nested_cone();
  CHECK(r.fine.size() == 3);
  const StratumTaxonomy t = classify(r);
  CHECK(t.virtual_strata.size() == 2);
  CHECK(t.v_maximal.size() == 1);
  CHECK(r.fine.dim(t.v_maximal.front()) == 1);
  CHECK(t.one_exceptional.empty());
  const auto steps = simple_decomposition(r);
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].measure_before == 1);
  CHECK(steps[1].measure_before == 0);
  CHECK(steps[0].intermediate.size() == 2);
  CHECK(check_source_lemmas(r).ok());
}

TEST_CASE("source strata exist as required") {
  for (const auto& f : all_fixtures()) {
    const SourceLemmaReport rep = check_source_lemmas(f.pair);
    CHECK_MESSAGE(rep.ok(), f.name);
  }
  const SquareExample sq = square_example();
  for (const auto* r : {&sq.i, &sq.j, &sq.k}) CHECK(check_source_lemmas(*r).ok());
}

TEST_CASE("merged pieces") {
  const SquareExample sq = square_example();
  const int s3 = sq.fine.id("S3");
  const MergedPiece p = merged_piece(sq.j, s3);
  CHECK(sq.fine.names_of(p.members) == Names{"R2", "R3", "S3"});
  CHECK(p.target == sq.intermediate.id("R4"));
  CHECK(p.representative == *std::min_element(p.members.begin(), p.members.end()));
  CHECK_THROWS_AS(merged_piece(sq.j, sq.fine.id("Q1")), std::invalid_argument);
}

TEST_CASE("refinement checks") {
  const SquareExample sq = square_example();
  // Reversed direction: coarse strata are not contained in fine ones.
  CHECK_THROWS_AS(check_refinement(sq.complex, sq.coarse.strat, sq.fine.strat), NotARefinement);
  CHECK_THROWS_AS(check_refinement(sq.complex, sq.intermediate.strat, sq.fine.strat), NotARefinement);

  // Swapping the dimensions of two strata breaks dim S <= dim I(S).
  const PairFixture eq = equator_fixture();
  try {
    check_refinement(eq.pair.complex, eq.pair.coarse, eq.pair.fine);
    FAIL("expected NotARefinement");
  } catch (const NotARefinement& e) {
    CHECK(e.simplex >= 0);
  }

  const auto id = check_refinement(sq.complex, sq.fine.strat, sq.fine.strat);
  CHECK(id.equal());
  for (std::size_t s = 0; s < id.map.size(); ++s) CHECK(id.map[s] == static_cast<int>(s));
  const StratumTaxonomy t = classify(id);
  CHECK(t.virtual_strata.empty());
  CHECK(t.source.size() == sq.fine.strat.size());

  // Formal dimensions must agree.
  const auto other = Stratification::from_labels(3, std::vector<int>(sq.complex->size(), 0), {3});
  CHECK_THROWS_AS(check_refinement(sq.complex, sq.fine.strat, other), NotARefinement);
}
