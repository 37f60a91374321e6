#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ihom/complex.hpp"
#include "ihom/strat.hpp"

namespace ihom {

class NotARefinement : public std::runtime_error {
public:
  NotARefinement(const std::string& what, int simplex, int fine_stratum)
      : std::runtime_error(what), simplex(simplex), fine_stratum(fine_stratum) {}
  int simplex;
  int fine_stratum;
};

class AlreadyEqual : public std::runtime_error {
public:
  AlreadyEqual() : std::runtime_error("fine and coarse stratifications are equal") {}
};

// Two stratifications of one complex, the fine one refining the coarse one.
struct RefinementPair {
  std::shared_ptr<const SimplicialComplex> complex;
  Stratification fine;
  Stratification coarse;
  std::vector<int> map;  // fine stratum id -> coarse stratum id
  std::shared_ptr<const StratumPoset> fine_order;
  std::shared_ptr<const StratumPoset> coarse_order;

  int target(int fine_stratum) const { return map[static_cast<std::size_t>(fine_stratum)]; }
  bool equal() const { return fine == coarse; }
};

// Builds the stratum map and checks partition refinement, dim S <= dim I(S)
// and order preservation. Throws NotARefinement with a witness.
RefinementPair check_refinement(std::shared_ptr<const SimplicialComplex> k, Stratification fine,
                                Stratification coarse);

struct StratumTaxonomy {
  std::vector<int> source;          // dim S = dim I(S)
  std::vector<int> virtual_strata;  // dim S < dim I(S)
  std::vector<int> v_maximal;       // virtual strata of maximal dimension
  std::vector<int> stable;          // source S above some v-maximal M with I(M) = I(S)
  std::vector<int> exceptional;     // singular S with I(S) regular
  std::vector<int> one_exceptional; // exceptional of codimension 1
};

StratumTaxonomy classify(const RefinementPair& r);

struct MergedPiece {
  int target = -1;           // coarse stratum I(M)
  std::vector<int> members;  // fine strata in stable or v-maximal with I(Q) = I(M)
  int representative = -1;   // smallest member id
  int dim = -1;              // dim I(M)
};

// Throws std::invalid_argument when m is not v-maximal, and std::logic_error
// when the merged piece is disconnected or has the wrong dimension.
MergedPiece merged_piece(const RefinementPair& r, int m);

struct SimpleStep {
  Stratification intermediate;
  RefinementPair first;   // fine -> intermediate, simple
  RefinementPair second;  // intermediate -> coarse
  std::vector<MergedPiece> merges;
  int measure_before = -1;  // maximal dimension of a virtual stratum of the input
  int measure_after = -1;   // same for `second` (-1 when it has none)
};

// One application of the merge construction. Throws AlreadyEqual when the
// pair is trivial; std::logic_error if an internal invariant fails.
SimpleStep simple_step(const RefinementPair& r);

// Sequence of simple refinements from fine to coarse (empty when equal).
std::vector<SimpleStep> simple_decomposition(const RefinementPair& r);

struct SourceLemmaReport {
  // Fine strata S without a source stratum P of I(S) satisfying S <= P.
  std::vector<int> missing_source;
  // Pairs R <= Q of coarse strata without sources R' <= Q'.
  std::vector<std::pair<int, int>> missing_source_pair;
  bool ok() const { return missing_source.empty() && missing_source_pair.empty(); }
};

SourceLemmaReport check_source_lemmas(const RefinementPair& r);

}  // namespace ihom
