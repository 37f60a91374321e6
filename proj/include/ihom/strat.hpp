#pragma once

#include <string>
#include <vector>

#include "ihom/complex.hpp"

namespace ihom {

struct Stratum {
  int id = 0;
  int dim = 0;
  std::vector<int> simplices;  // increasing simplex ids
  bool regular = false;
};

// A partition of the open simplices of a complex into strata.
//
// Strata are numbered by their smallest member simplex, so two equal
// partitions always carry equal numbering.
class Stratification {
public:
  Stratification() = default;

  // labels[s] is an arbitrary label for simplex s; dims maps each label to
  // its stratum dimension. Labels are renumbered canonically.
  static Stratification from_labels(int n, const std::vector<int>& labels, const std::vector<int>& dims);

  int n() const { return n_; }
  std::size_t size() const { return strata_.size(); }
  const std::vector<Stratum>& strata() const { return strata_; }
  const Stratum& stratum(int id) const { return strata_[static_cast<std::size_t>(id)]; }
  int of_simplex(int simplex_id) const { return assignment_[static_cast<std::size_t>(simplex_id)]; }
  const std::vector<int>& assignment() const { return assignment_; }
  int dim(int stratum_id) const { return stratum(stratum_id).dim; }
  int codim(int stratum_id) const { return n_ - dim(stratum_id); }
  bool regular(int stratum_id) const { return stratum(stratum_id).regular; }
  std::vector<int> stratum_dims() const;
  std::vector<int> singular_strata() const;

  friend bool operator==(const Stratification& a, const Stratification& b) {
    return a.n_ == b.n_ && a.assignment_ == b.assignment_ && a.stratum_dims() == b.stratum_dims();
  }

private:
  int n_ = -1;
  std::vector<int> assignment_;
  std::vector<Stratum> strata_;
};

// Strata are the connected components of each level class, where a simplex's
// level is its maximal vertex level. Throws std::invalid_argument when a level
// class contains a simplex of geometric dimension above the level, or when no
// simplex of a component reaches the level.
Stratification strata_from_levels(const SimplicialComplex& k, const VertexLevelMap& levels);

// Trivial stratification: one stratum per connected component, dim = n.
Stratification trivial_stratification(const SimplicialComplex& k);

// Vertex levels read off a stratification: level(v) = dim of v's stratum.
VertexLevelMap levels_of(const SimplicialComplex& k, const Stratification& s);

struct Violation {
  std::string axiom;  // "dim", "connected", "frontier", "order", "closure"
  int a = -1;         // stratum ids (or -1)
  int b = -1;
  int simplex = -1;   // witness simplex id (or -1)
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SimplicialComplex& k, const Stratification& s);

// Partial order Q <= S on strata: some simplex of Q is a face of a simplex of
// S (closure containment under the frontier condition). Reflexive.
class StratumPoset {
public:
  StratumPoset(const SimplicialComplex& k, const Stratification& s);

  bool le(int q, int s) const { return le_[idx(q, s)] != 0; }
  bool lt(int q, int s) const { return q != s && le(q, s); }
  std::size_t size() const { return count_; }
  // Longest chain S0 < S1 < ... < Si inside the subset, measured as i.
  // Returns -1 for the empty subset.
  int depth(const std::vector<int>& subset) const;
  int depth() const;
  std::vector<int> maximal(const std::vector<int>& subset) const;

private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * count_ + static_cast<std::size_t>(b); }

  std::size_t count_ = 0;
  std::vector<char> le_;
};

// Whether X_i is the full subcomplex on vertices of level <= i for every i,
// with vertex levels taken from the stratification; equivalently every
// simplex's stratum dimension equals its maximal vertex level. Returns the
// first offending simplex id or -1.
int fullness_witness(const SimplicialComplex& k, const Stratification& s);

struct Subdivided {
  SimplicialComplex complex;
  Stratification strat;
  // Vertex v of the subdivision is the barycenter of old simplex barycenter_of[v].
  std::vector<int> barycenter_of;
  // Old simplex carrying each new open simplex.
  std::vector<int> carrier;
  // Old stratum id -> new stratum id.
  std::vector<int> stratum_map;
};

// First barycentric subdivision. New vertex v is the barycenter of the old
// simplex with id v; each new simplex is a flag G0 < ... < Gk and lies in the
// stratum of Gk. Stratum dims are kept.
Subdivided barycentric_subdivide(const SimplicialComplex& k, const Stratification& s);

}  // namespace ihom
