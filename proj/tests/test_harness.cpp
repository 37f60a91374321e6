#include "doctest.h"

#include <algorithm>

#include "ihom/fixtures.hpp"
#include "ihom/harness.hpp"

using namespace ihom;

namespace {

const ClauseResult& clause(const InvarianceReport& r, const std::string& name) {
  const auto it = std::find_if(r.clauses.begin(), r.clauses.end(), [&](const ClauseResult& c) { return c.clause == name; });
  REQUIRE(it != r.clauses.end());
  return *it;
}

VerifyOptions options(const Ring& ring, std::vector<int> primes = {2}) {
  VerifyOptions o;
  o.ring = ring;
  o.field_primes = std::move(primes);
  return o;
}

bool has_one_exceptional(const PairFixture& f) { return !classify(f.pair).one_exceptional.empty(); }

}  // namespace

TEST_CASE("coarsening holds on every fixture and perversity") {
  for (const auto& f : all_fixtures())
    for (const auto& lp : f.fine_perversities)
      for (const Ring& ring : {Ring::integers(), Ring::field(2)}) {
        VerifyOptions o = options(ring, {2, 5});
        o.instance = f.name + " " + lp.label;
        const InvarianceReport r = verify_coarsening(f.pair, lp.p, o);
        CHECK_MESSAGE(r.ok(), o.instance);
        CHECK(r.mode == "coarsening");
        CHECK(r.clauses.size() == 12);
        CHECK(r.relaxed == has_one_exceptional(f));
        for (const auto& c : r.clauses) {
          if (!c.alias_of.empty()) {
            CHECK(c.note.find("compact space") != std::string::npos);
            CHECK(c.verdict == clause(r, c.alias_of).verdict);
          }
          if (!r.relaxed) CHECK_MESSAGE(c.verdict == Verdict::Pass, o.instance, " ", c.clause, " ", c.note);
        }
        for (const char* name : {"R1", "R2", "R3"}) CHECK(clause(r, name).verdict == Verdict::Pass);
      }
}

TEST_CASE("refinement holds without 1-exceptional strata and is rejected otherwise") {
  for (const auto& f : all_fixtures())
    for (const auto& lq : f.coarse_perversities) {
      VerifyOptions o = options(Ring::integers(), {2, 5});
      o.instance = f.name + " " + lq.label;
      if (has_one_exceptional(f)) {
        CHECK_THROWS_AS(verify_refinement(f.pair, lq.p, o), OneExceptionalPresent);
        o.relaxed = true;
        const InvarianceReport r = verify_refinement(f.pair, lq.p, o);
        CHECK(r.relaxed);
        CHECK_MESSAGE(r.ok(), o.instance);
        for (const auto& c : r.clauses) CHECK(c.asserted == (c.clause == "R1" || c.clause == "R2" || c.clause == "R3"));
        continue;
      }
      const InvarianceReport r = verify_refinement(f.pair, lq.p, o);
      CHECK_MESSAGE(r.ok(), o.instance);
      CHECK(r.fine_perversity == pullback(f.pair, lq.p));
      for (const auto& c : r.clauses) CHECK_MESSAGE(c.verdict == Verdict::Pass, o.instance, " ", c.clause);
    }
}

TEST_CASE("the interval: H survives coarsening, tame homology does not") {
  const PairFixture f = interval_fixture();
  const Perversity p = zero_perversity(f.pair.fine);
  const InvarianceReport r = verify_coarsening(f.pair, p, options(Ring::integers()));
  CHECK(r.relaxed);
  CHECK(clause(r, "R1").verdict == Verdict::Pass);
  CHECK(clause(r, "R1").fine.at(0).betti == 1);
  CHECK(clause(r, "R4").verdict == Verdict::Fail);
  CHECK(clause(r, "R4").witness_degree == 0);
  CHECK(clause(r, "R4").fine.at(0).betti == 0);
  CHECK(clause(r, "R4").coarse.at(0).betti == 1);
  CHECK_FALSE(clause(r, "R4").asserted);
  CHECK(r.ok());

  VerifyOptions o = options(Ring::integers());
  o.expect_fail = {"tame"};
  const InvarianceReport e = verify_coarsening(f.pair, p, o);
  CHECK(clause(e, "R4").asserted);
  CHECK(clause(e, "R4").expect_fail);
  CHECK(clause(e, "R4").matched());
  CHECK(clause(e, "R8").matched());
  CHECK(e.ok());

  // Expecting a failure that does not happen is a mismatch.
  o.expect_fail = {"H"};
  CHECK_FALSE(verify_coarsening(f.pair, p, o).ok());
}

TEST_CASE("perversities outside the K class are rejected") {
  const PairFixture f = square_fixture_k();
  const SquareExample sq = square_example();
  Perversity p = zero_perversity(f.pair.fine);
  p.values[static_cast<std::size_t>(sq.intermediate.id("Q1"))] = 5;
  CHECK_THROWS_AS(verify_coarsening(f.pair, p, options(Ring::integers())), NotKPerversity);
  const LemmaReport lr = check_lemmas(f.pair, p);
  CHECK_FALSE(lr.ok());
}

TEST_CASE("lemmas hold on every K instance") {
  int instances = 0;
  for (const auto& f : all_fixtures()) {
    std::vector<Perversity> ps;
    for (const auto& lp : f.fine_perversities) ps.push_back(lp.p);
    for (const auto& lq : f.coarse_perversities) ps.push_back(pullback(f.pair, lq.p));
    const int n = f.pair.fine.n();
    for (const auto& kp : {KingPerversity::zero(n), KingPerversity::lower_middle(n), KingPerversity::upper_middle(n)})
      ps.push_back(from_king(kp, f.pair.fine));
    for (const auto& p : ps) {
      if (!is_K_perversity(f.pair, p).is_k()) continue;
      ++instances;
      const LemmaReport r = check_lemmas(f.pair, p);
      CHECK_MESSAGE(r.ok(), f.name);
      CHECK(r.checks > 0);
    }
  }
  CHECK(instances >= 20);
}

TEST_CASE("verifying step by step agrees with verifying the composite") {
  for (const auto& f : all_fixtures())
    for (const auto& lp : f.fine_perversities) {
      const VerifyOptions o = options(Ring::integers(), {2});
      const InvarianceReport direct = verify_coarsening(f.pair, lp.p, o);
      const auto steps = verify_along_decomposition(f.pair, lp.p, o);
      CHECK(steps.size() == simple_decomposition(f.pair).size());
      bool all_ok = true;
      for (const auto& s : steps) all_ok = all_ok && s.ok();
      CHECK_MESSAGE(all_ok == direct.ok(), f.name, " ", lp.label);
      if (steps.empty()) continue;
      // Ends of the chain of steps are the two sides of the composite.
      for (const char* name : {"R1", "R2"}) {
        CHECK(clause(steps.front(), name).fine.same_as(clause(direct, name).fine));
        CHECK(clause(steps.back(), name).coarse.same_as(clause(direct, name).coarse));
      }
    }
}

TEST_CASE("nonnegative King perversities below the top survive coarsening") {
  for (const auto& f : all_fixtures()) {
    if (has_one_exceptional(f)) continue;
    const int n = f.pair.fine.n();
    for (const auto& kp : {KingPerversity::lower_middle(n), KingPerversity::upper_middle(n)}) {
      const Perversity p = from_king(kp, f.pair.fine);
      const InvarianceReport r = verify_coarsening(f.pair, p, options(Ring::integers()));
      CHECK_MESSAGE(r.ok(), f.name);
      CHECK(clause(r, "R1").verdict == Verdict::Pass);
      CHECK(clause(r, "R4").verdict == Verdict::Pass);
    }
  }
}

TEST_CASE("identity refinement passes for any perversity") {
  const PairFixture f = identity_fixture();
  for (int s = -1; s <= 2; ++s)
    for (int n = -1; n <= 2; ++n) {
      const auto poles = f.pair.fine.singular_strata();
      const Perversity p = make_perversity(f.pair.fine, {{poles[0], ExtInt(s)}, {poles[1], ExtInt(n)}});
      VerifyOptions o = options(Ring::integers());
      o.blowup = false;
      const InvarianceReport r = verify_coarsening(f.pair, p, o);
      CHECK(r.ok());
      for (const auto& c : r.clauses) CHECK(c.verdict == Verdict::Pass);
    }
}

TEST_CASE("subdivision is applied when a side is not full") {
  const PairFixture f = equator_fixture();
  const FullPair full = make_full(f.pair, f.coarse_perversities.front().p, false);
  CHECK(full.subdivided);
  CHECK(fullness_witness(*full.pair.complex, full.pair.fine) == -1);
  CHECK(fullness_witness(*full.pair.complex, full.pair.coarse) == -1);
  CHECK(full.pair.coarse.size() == f.pair.coarse.size());

  const FullPair same = make_full(identity_fixture().pair, identity_fixture().fine_perversities.front().p, true);
  CHECK_FALSE(same.subdivided);
}

TEST_CASE("local formulas on standard links") {
  for (const auto& [name, link] : standard_links())
    for (const Ring& ring : {Ring::integers(), Ring::field(2)}) {
      const OracleReport r = oracle_local_formulas(link, standard_local_cases(), ring);
      for (const auto& row : r.rows) CHECK_MESSAGE(row.pass, name, " ", row.space, " ", row.theory);
      CHECK(r.ok());
      CHECK_FALSE(r.rows.empty());
    }
}

TEST_CASE("suspension of the torus with the zero perversity") {
  LocalCase c;
  c.kind = LocalCase::Kind::Suspension;
  c.value = 0;
  c.north = 0;
  const OracleReport r = oracle_local_formulas(link_by_name("T2"), {c}, Ring::integers());
  REQUIRE_FALSE(r.rows.empty());
  CHECK(r.rows.front().theory == "H");
  CHECK(r.rows.front().computed.to_string() == "(Z, Z^2, 0, Z)");
  CHECK(r.ok());
}

TEST_CASE("failures inside a clause become verdicts") {
  const PairFixture f = identity_fixture();
  VerifyOptions o = options(Ring::integers());
  o.cap = 5;
  const InvarianceReport r = verify_coarsening(f.pair, f.fine_perversities.front().p, o);
  const ClauseResult& r9 = clause(r, "R9");
  CHECK(r9.verdict == Verdict::Fail);
  CHECK(r9.note.find("computation failed") != std::string::npos);
  CHECK_FALSE(r.ok());
}
