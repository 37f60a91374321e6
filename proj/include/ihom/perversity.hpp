#pragma once

#include <map>
#include <string>
#include <vector>

#include "ihom/extint.hpp"
#include "ihom/refinement.hpp"
#include "ihom/strat.hpp"

namespace ihom {

// Values per stratum id of one stratification; regular strata carry 0.
struct Perversity {
  std::vector<ExtInt> values;

  ExtInt operator()(int stratum) const { return values[static_cast<std::size_t>(stratum)]; }
  friend bool operator==(const Perversity&, const Perversity&) = default;
};

// Throws std::invalid_argument unless p has one value per stratum and
// vanishes on regular strata.
void check_perversity(const Stratification& s, const Perversity& p);

// Values given for singular strata; missing singular strata default to 0.
Perversity make_perversity(const Stratification& s, const std::map<int, ExtInt>& singular_values);
Perversity zero_perversity(const Stratification& s);
Perversity top_perversity(const Stratification& s);
Perversity dual(const Stratification& s, const Perversity& p);

bool pointwise_le(const Perversity& a, const Perversity& b);

// (I_* p)(T) = min over fine strata Q with I(Q) = T; +inf when none.
Perversity pushforward(const RefinementPair& r, const Perversity& p);
// (I^* q)(S) = q(I(S)).
Perversity pullback(const RefinementPair& r, const Perversity& q);

struct KViolation {
  std::string clause;  // "K1" or "K2"
  int s = -1;
  int q = -1;
  std::string detail;
};

struct KReport {
  std::vector<KViolation> strict;
  // Violations left when, at 1-exceptional strata, the upper bound of (K1)
  // is dropped and only p(S) >= 0 is kept.
  std::vector<KViolation> relaxed;
  std::vector<int> one_exceptional;

  bool is_k() const { return strict.empty(); }
  bool is_relaxed_k() const { return relaxed.empty(); }
};

KReport is_K_perversity(const RefinementPair& r, const Perversity& p);

// Codimension-indexed perversity with p(0) = 0 and p(k) <= p(k+1) <= p(k) + 1.
struct KingPerversity {
  std::vector<int> values;  // index = codimension

  void validate() const;  // throws std::invalid_argument
  int operator()(int codim) const;

  static KingPerversity zero(int n);
  // floor((k-2)/2) for k >= 2, 0 below.
  static KingPerversity lower_middle(int n);
  // ceil((k-2)/2) for k >= 2, 0 below.
  static KingPerversity upper_middle(int n);
};

Perversity from_king(const KingPerversity& kp, const Stratification& s);

}  // namespace ihom
