#include "doctest.h"

#include <algorithm>
#include <random>

#include "ihom/fixtures.hpp"
#include "ihom/perversity.hpp"

using namespace ihom;

namespace {

bool closure_le(const SimplicialComplex& k, const Stratification& s, int q, int t) {
  for (int a : s.stratum(q).simplices)
    for (int b : s.stratum(t).simplices) {
      const Simplex& x = k.simplex(a);
      const Simplex& y = k.simplex(b);
      if (std::includes(y.begin(), y.end(), x.begin(), x.end())) return true;
    }
  return false;
}

// Both K conditions evaluated straight from their statement, with the order
// read off simplex inclusions and the top perversity from dimensions.
bool k_by_definition(const RefinementPair& r, const Perversity& p) {
  const auto& f = r.fine;
  const int n = f.n();
  auto top = [&](int s) { return f.regular(s) ? ExtInt(0) : ExtInt(n - f.dim(s) - 2); };
  for (int s = 0; s < static_cast<int>(f.size()); ++s)
    for (int q = 0; q < static_cast<int>(f.size()); ++q) {
      if (r.map[static_cast<std::size_t>(s)] != r.map[static_cast<std::size_t>(q)]) continue;
      if (s != q && closure_le(*r.complex, f, s, q))
        if (!(p(q) <= p(s) && p(s) <= p(q) + (top(s) - top(q)))) return false;
      if (f.dim(s) == f.dim(q) && p(s) != p(q)) return false;
    }
  return true;
}

Perversity random_perversity(std::mt19937& rng, const Stratification& s) {
  std::uniform_int_distribution<int> value(-2, 3), special(0, 19);
  Perversity p = zero_perversity(s);
  for (int id : s.singular_strata()) {
    const int roll = special(rng);
    p.values[static_cast<std::size_t>(id)] =
        roll == 0 ? ExtInt::pos_inf() : roll == 1 ? ExtInt::neg_inf() : ExtInt(value(rng));
  }
  return p;
}

// Perversities drawn near the top perversity, so that K-perversities turn up often.
Perversity near_top(std::mt19937& rng, const Stratification& s) {
  std::uniform_int_distribution<int> shift(-1, 1);
  Perversity p = zero_perversity(s);
  for (int id : s.singular_strata()) p.values[static_cast<std::size_t>(id)] = ExtInt(std::max(0, s.codim(id) - 2 + shift(rng)));
  return p;
}

std::vector<RefinementPair> pairs() {
  std::vector<RefinementPair> out;
  for (const auto& f : all_fixtures()) out.push_back(f.pair);
  return out;
}

}  // namespace

TEST_CASE("top and dual perversities") {
  const FilteredComplex c = cone(simplex_boundary(2));
  const Stratification s = strata_from_levels(c.complex, c.levels);
  const Perversity t = top_perversity(s);
  CHECK(t(1) == ExtInt(0));
  CHECK(t(0) == ExtInt(0));
  CHECK(dual(s, zero_perversity(s)) == t);
  CHECK(dual(s, t) == zero_perversity(s));

  const PairFixture interval = interval_fixture();
  const int apex = interval.pair.fine.singular_strata().front();
  CHECK(top_perversity(interval.pair.fine)(apex) == ExtInt(-1));

  Perversity inf = zero_perversity(s);
  inf.values[1] = ExtInt::pos_inf();
  CHECK(dual(s, inf)(1) == ExtInt::neg_inf());
  inf.values[1] = ExtInt::neg_inf();
  CHECK(dual(s, inf)(1) == ExtInt::pos_inf());

  std::mt19937 rng(5);
  for (const auto& r : pairs())
    for (int trial = 0; trial < 10; ++trial) {
      Perversity p = random_perversity(rng, r.fine);
      CHECK(dual(r.fine, dual(r.fine, p)) == p);
      CHECK(dual(r.fine, top_perversity(r.fine)) == zero_perversity(r.fine));
    }
}

TEST_CASE("perversities are checked against their stratification") {
  const FilteredComplex c = cone(simplex_boundary(2));
  const Stratification s = strata_from_levels(c.complex, c.levels);
  CHECK_THROWS(check_perversity(s, Perversity{{ExtInt(0)}}));
  CHECK_THROWS(check_perversity(s, Perversity{{ExtInt(1), ExtInt(0)}}));
  CHECK_NOTHROW(check_perversity(s, Perversity{{ExtInt(0), ExtInt(5)}}));
  CHECK_THROWS(make_perversity(s, {{0, ExtInt(1)}}));
  CHECK_THROWS(make_perversity(s, {{7, ExtInt(1)}}));
  CHECK(make_perversity(s, {{1, ExtInt(2)}}).values == std::vector<ExtInt>{0, 2});
}

TEST_CASE("extended integers") {
  CHECK(ExtInt(2) + ExtInt::pos_inf() == ExtInt::pos_inf());
  CHECK(ExtInt(2) + ExtInt::neg_inf() == ExtInt::neg_inf());
  CHECK_THROWS(ExtInt::pos_inf() + ExtInt::neg_inf());
  CHECK(min(ExtInt::pos_inf(), ExtInt(3)) == ExtInt(3));
  CHECK(ExtInt::neg_inf() < ExtInt(-1000));
  CHECK(ExtInt(7) < ExtInt::pos_inf());
  CHECK(ExtInt::pos_inf().to_string() == "+inf");
  CHECK_THROWS(ExtInt::neg_inf().value());
}

TEST_CASE("pushforward and pullback") {
  const SquareExample sq = square_example();
  const RefinementPair& k = sq.k;
  const auto& fine = sq.intermediate;
  const auto& coarse = sq.coarse;
  Perversity p = zero_perversity(k.fine);
  p.values[static_cast<std::size_t>(fine.id("S1"))] = 2;
  p.values[static_cast<std::size_t>(fine.id("S2"))] = 2;
  p.values[static_cast<std::size_t>(fine.id("Q1"))] = 5;
  const Perversity pushed = pushforward(k, p);
  CHECK(pushed(coarse.id("S4")) == ExtInt(2));
  CHECK(pushed(coarse.id("R5")) == ExtInt(0));

  // Exceptional strata pull back to 0.
  Perversity q = top_perversity(k.coarse);
  const Perversity pulled = pullback(k, q);
  CHECK(pulled(fine.id("Q2")) == ExtInt(0));
  CHECK(pulled(fine.id("Q1")) == q(coarse.id("S4")));

  const PairFixture id = identity_fixture();
  for (const auto& lp : id.fine_perversities) {
    CHECK(pushforward(id.pair, lp.p) == lp.p);
    CHECK(pullback(id.pair, lp.p) == lp.p);
  }
}

TEST_CASE("pullback of pushforward lies below, pushforward of pullback is the identity") {
  std::mt19937 rng(6);
  for (const auto& r : pairs())
    for (int trial = 0; trial < 40; ++trial) {
      const Perversity p = random_perversity(rng, r.fine);
      // Below p away from strata sent to regular ones, where the pushforward is pinned to 0.
      const Perversity back = pullback(r, pushforward(r, p));
      for (const auto& s : r.fine.strata())
        if (!r.coarse.regular(r.target(s.id))) CHECK(back(s.id) <= p(s.id));
      // Brute-force minimum over each preimage.
      const Perversity pushed = pushforward(r, p);
      for (const auto& t : r.coarse.strata()) {
        ExtInt m = ExtInt::pos_inf();
        for (const auto& s : r.fine.strata())
          if (r.target(s.id) == t.id) m = min(m, p(s.id));
        CHECK(pushed(t.id) == (t.regular ? ExtInt(0) : m));
      }
      const Perversity q = random_perversity(rng, r.coarse);
      CHECK(pushforward(r, pullback(r, q)) == q);
    }
}

TEST_CASE("K check agrees with the definition on random perversities") {
  std::mt19937 rng(7);
  int k_count = 0;
  for (const auto& r : pairs())
    for (int trial = 0; trial < 60; ++trial) {
      const Perversity p = trial % 2 ? random_perversity(rng, r.fine) : near_top(rng, r.fine);
      const KReport rep = is_K_perversity(r, p);
      CHECK(rep.is_k() == k_by_definition(r, p));
      if (rep.is_k()) {
        ++k_count;
        CHECK(rep.is_relaxed_k());
      }
      // Relaxing only removes violations.
      CHECK(rep.relaxed.size() <= rep.strict.size());
    }
  CHECK(k_count > 20);
}

TEST_CASE("zero perversity is K without exceptional strata") {
  for (const auto& f : all_fixtures()) {
    const StratumTaxonomy t = classify(f.pair);
    if (!t.exceptional.empty()) continue;
    CHECK(is_K_perversity(f.pair, zero_perversity(f.pair.fine)).is_k());
  }
}

TEST_CASE("no perversity is K in the presence of a 1-exceptional stratum") {
  std::mt19937 rng(8);
  for (const auto& f : {interval_fixture(), square_fixture_i()}) {
    REQUIRE_FALSE(classify(f.pair).one_exceptional.empty());
    for (int trial = 0; trial < 50; ++trial) {
      const KReport rep = is_K_perversity(f.pair, random_perversity(rng, f.pair.fine));
      CHECK_FALSE(rep.is_k());
      CHECK(rep.one_exceptional == classify(f.pair).one_exceptional);
    }
    // Nonnegative values at the 1-exceptional strata are accepted once relaxed.
    CHECK(is_K_perversity(f.pair, zero_perversity(f.pair.fine)).is_relaxed_k());
  }
}

TEST_CASE("King perversities") {
  CHECK(KingPerversity::zero(4).values == std::vector<int>{0, 0, 0, 0, 0});
  const KingPerversity m = KingPerversity::lower_middle(4);
  CHECK(m(2) == 0);
  CHECK(m(3) == 0);
  CHECK(m(4) == 1);
  const KingPerversity n = KingPerversity::upper_middle(4);
  CHECK(n(2) == 0);
  CHECK(n(3) == 1);
  CHECK(n(4) == 1);
  CHECK_THROWS(KingPerversity{{0, 0, 0, 2}}.validate());
  CHECK_THROWS(KingPerversity{{1, 1}}.validate());
  CHECK_THROWS(KingPerversity{{0, 0, -1}}.validate());
  CHECK_THROWS(m(5));

  const PairFixture id = identity_fixture();
  CHECK(from_king(KingPerversity::zero(3), id.pair.fine) == zero_perversity(id.pair.fine));

  // Nonnegative King perversities below the top are K without 1-exceptional strata.
  for (const auto& f : all_fixtures()) {
    if (!classify(f.pair).one_exceptional.empty()) continue;
    const int dim = f.pair.fine.n();
    for (const auto& kp : {KingPerversity::zero(dim), KingPerversity::lower_middle(dim), KingPerversity::upper_middle(dim)}) {
      const Perversity p = from_king(kp, f.pair.fine);
      CHECK(is_K_perversity(f.pair, p).is_k());
      CHECK(k_by_definition(f.pair, p));
    }
  }
}
