#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ihom/complex.hpp"
#include "ihom/extint.hpp"
#include "ihom/homalg.hpp"
#include "ihom/perversity.hpp"
#include "ihom/strat.hpp"

namespace ihom {

// Raised when some simplex's stratum dimension differs from its maximal
// vertex level.
class NotFull : public std::invalid_argument {
public:
  explicit NotFull(int simplex)
      : std::invalid_argument("stratification is not full on this triangulation (simplex " + std::to_string(simplex) +
                              "); apply barycentric_subdivide first"),
        simplex(simplex) {}
  int simplex;
};

void require_full(const SimplicialComplex& k, const Stratification& s);

// A simplex viewed as a join of its level pieces.
struct FilteredSimplexView {
  int simplex = -1;
  // dims[i] = (# vertices of level <= i) - 1, for i = 0..n.
  std::vector<int> decomposition_dims;
  bool regular = false;
};

FilteredSimplexView filtered_view(const SimplicialComplex& k, const Stratification& s, int simplex);

// Precomputed per-simplex data shared by the operations below.
class FilteredComplexView {
public:
  // Throws NotFull when the stratification is not full.
  FilteredComplexView(const SimplicialComplex& k, const Stratification& s);

  const SimplicialComplex& complex() const { return *k_; }
  const Stratification& strat() const { return *s_; }
  int level(int vertex) const { return levels_.level[static_cast<std::size_t>(vertex)]; }
  bool regular(int simplex) const;
  // Strata carried by some face of the simplex (itself included), sorted.
  const std::vector<int>& strata_meeting(int simplex) const { return meets_[static_cast<std::size_t>(simplex)]; }
  // -inf when the stratum misses the simplex.
  ExtInt perverse_degree(int simplex, int stratum) const;

private:
  const SimplicialComplex* k_;
  const Stratification* s_;
  VertexLevelMap levels_;
  std::vector<std::vector<int>> meets_;
};

ExtInt perverse_degree(const SimplicialComplex& k, const Stratification& s, int simplex, int stratum);

struct Allowability {
  bool allowable = false;
  bool tame = false;
};

Allowability allowability(const FilteredComplexView& view, const Perversity& p, int simplex);
Allowability allowability(const SimplicialComplex& k, const Stratification& s, const Perversity& p, int simplex);

// Ordinary simplicial chains with the canonical orientation.
ChainComplexExact simplicial_chains(const SimplicialComplex& k, const Ring& ring);

// Chains on allowable simplices whose boundary is a chain on allowable
// simplices. Generators in degree k form a reduced Hermite (over Z) or
// reduced echelon (over F_q) basis in the allowable k-simplices.
ChainComplexExact intersection_complex(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                                       const Ring& ring);

// Chains on tame simplices with the regular part of the boundary as
// differential, restricted to chains whose regular boundary is tame.
ChainComplexExact tame_complex(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                               const Ring& ring);

}  // namespace ihom
