#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ihom/blowup.hpp"
#include "ihom/extint.hpp"
#include "ihom/homalg.hpp"
#include "ihom/perversity.hpp"
#include "ihom/refinement.hpp"

namespace ihom {

class NotKPerversity : public std::invalid_argument {
public:
  explicit NotKPerversity(const KViolation& v)
      : std::invalid_argument("not a K-perversity: " + v.clause + " fails for strata " + std::to_string(v.s) + ", " +
                              std::to_string(v.q) + " (" + v.detail + ")"),
        violation(v) {}
  KViolation violation;
};

class OneExceptionalPresent : public std::invalid_argument {
public:
  explicit OneExceptionalPresent(std::vector<int> strata);
  std::vector<int> strata;
};

enum class Verdict { Pass, Fail };

std::string to_string(Verdict v);

// Theory names used by clauses and by the expected-failure selector:
// "H", "coH", "tame", "tame-coH", "blowup".
struct ClauseResult {
  std::string clause;  // "R1" .. "R10"
  std::string theory;
  HomologySummary fine;
  HomologySummary coarse;
  Verdict verdict = Verdict::Pass;
  int witness_degree = -1;   // first differing degree on failure
  bool asserted = true;      // false: computed for information only
  bool expect_fail = false;  // the assertion is that the clause fails
  std::string alias_of;      // nonempty for clauses identical on compact spaces
  std::string note;

  // Whether this clause agrees with what is asserted about it.
  bool matched() const;
};

struct InvarianceReport {
  std::string instance;
  std::string mode;  // "coarsening" or "refinement"
  bool relaxed = false;
  bool subdivided = false;
  std::string level = "dimension-level";
  Perversity fine_perversity;
  Perversity coarse_perversity;
  std::vector<ClauseResult> clauses;

  bool ok() const;
};

struct VerifyOptions {
  Ring ring;                          // ring for R1, R2, R4, R5
  std::vector<int> field_primes{2};   // fields for R9
  bool relaxed = false;               // refinement only: accept 1-exceptional strata
  bool blowup = true;                 // compute R9
  std::set<std::string> expect_fail;  // theory names expected to fail
  std::size_t cap = default_blowup_cap;
  std::string instance;
};

// Coarsening invariance for a K-perversity p on the fine side. When p is only
// a K-perversity after relaxing the 1-exceptional strata (p >= 0 there), only
// R1-R3 are asserted and the other clauses are reported for information.
// Throws NotKPerversity otherwise.
InvarianceReport verify_coarsening(const RefinementPair& r, const Perversity& p, const VerifyOptions& options);

// Refinement invariance for a perversity q on the coarse side, comparing with
// its pullback on the fine side. Throws OneExceptionalPresent unless
// options.relaxed, in which case only R1-R3 are asserted.
InvarianceReport verify_refinement(const RefinementPair& r, const Perversity& q, const VerifyOptions& options);

// Runs verify_coarsening on every step of the simple decomposition, pushing
// the perversity forward at each step.
std::vector<InvarianceReport> verify_along_decomposition(const RefinementPair& r, const Perversity& p,
                                                         const VerifyOptions& options);

// When one of the two stratifications is not full on the triangulation,
// subdivides both and transports the perversity (given on the fine side when
// fine_side, else on the coarse side).
struct FullPair {
  RefinementPair pair;
  Perversity p;
  bool subdivided = false;
};
FullPair make_full(const RefinementPair& r, const Perversity& p, bool fine_side);

struct LemmaReport {
  std::vector<std::string> failures;
  int checks = 0;
  bool ok() const { return failures.empty(); }
};

// For a K-perversity p: pushforward equals the value on every source stratum;
// pullback(D pushforward p) <= D p; K-ness propagates through every step of
// the simple decomposition; source strata exist as required.
LemmaReport check_lemmas(const RefinementPair& r, const Perversity& p);

// A link with its stratification and perversity, used to build cones, joins
// with spheres and suspensions.
struct Link {
  SimplicialComplex complex;
  Stratification strat;
  Perversity p;
};

Link trivial_link(const SimplicialComplex& k);

struct LocalCase {
  enum class Kind { Cone, Join, Suspension };
  Kind kind = Kind::Cone;
  int m = 0;           // sphere dimension for Join
  ExtInt value;        // apex, sphere, or south pole value
  ExtInt north;        // north pole value for Suspension
  std::string describe() const;
};

struct OracleRow {
  std::string space;
  std::string theory;  // "H", "tame", "blowup"
  HomologySummary computed;
  HomologySummary predicted;
  bool pass = true;
  int witness_degree = -1;
};

struct OracleReport {
  std::vector<OracleRow> rows;
  bool ok() const;
};

// Builds each space from the link, computes its homologies directly and
// compares with the closed forms evaluated on the link's own homology.
// Blown-up rows are added when ring is a field (not for asymmetric poles).
OracleReport oracle_local_formulas(const Link& link, const std::vector<LocalCase>& cases, const Ring& ring,
                                   std::size_t cap = default_blowup_cap);

}  // namespace ihom
