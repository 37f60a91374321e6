#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ihom/complex.hpp"
#include "ihom/extint.hpp"
#include "ihom/homalg.hpp"
#include "ihom/perversity.hpp"
#include "ihom/strat.hpp"

namespace ihom {

class BlowupTooLarge : public std::runtime_error {
public:
  BlowupTooLarge(std::size_t size, std::size_t cap)
      : std::runtime_error("blown-up cochains exceed desk scale: total local basis size " + std::to_string(size) +
                           " above cap " + std::to_string(cap)),
        size(size),
        cap(cap) {}
  std::size_t size;
  std::size_t cap;
};

inline constexpr std::size_t default_blowup_cap = 200000;

// Element of the tensor product of the cone cochains of the pieces
// 0..n-1 and the simplex cochains of piece n. faces[i] is a face of piece
// i (possibly empty for i < n); eps[i] = 1 marks the cone apex, and is
// forced when faces[i] is empty.
struct BlownUpElement {
  std::vector<Simplex> faces;  // size n + 1
  std::vector<int> eps;        // size n

  int degree() const;
  // ell in 1..n: -inf when eps[n-ell] = 1, else the degree carried by the
  // factors after n-ell.
  ExtInt perverse_degree(int ell) const;

  friend bool operator==(const BlownUpElement&, const BlownUpElement&) = default;
};

struct LocalBlowup {
  int n = 0;
  std::vector<BlownUpElement> basis;  // sorted by degree, then faces, then eps
  SparseMatrix differential;          // column j = d(basis[j]), integer signs
};

// pieces[i] = vertices of the simplex at level i; pieces[n] must be nonempty.
LocalBlowup local_blowup(const std::vector<Simplex>& pieces);
LocalBlowup local_blowup(const SimplicialComplex& k, const Stratification& s, int simplex);
// Closed form of local_blowup(pieces).basis.size().
std::size_t local_basis_size(const std::vector<Simplex>& pieces);

// Allowable blown-up cochains of a full stratified complex over a field.
//
// Compatible families over the regular simplices have a basis indexed by
// (F, eps): F a regular simplex of the complex and eps admissible for the
// pieces of F; the family is the local element 1_(F,eps) on every regular
// simplex containing F and zero elsewhere.
struct BlowupCochains {
  Ring ring;
  int n = 0;
  std::vector<int> face;                  // element -> simplex id of F
  std::vector<BlownUpElement> elements;   // sorted by degree, then F id, then eps
  std::vector<int> degree;
  std::vector<char> allowable;
  SparseMatrix differential;              // on all compatible families
  std::vector<std::vector<SparseColumn>> generators;  // per degree, over element ids
  std::size_t local_total = 0;            // sum of local basis sizes over maximal regular simplices
};

// Throws BlowupTooLarge when local_total exceeds cap, NotFull when the
// stratification is not full, std::invalid_argument for a non-field ring.
BlowupCochains blowup_cochains(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                               const Ring& ring, std::size_t cap = default_blowup_cap);

// Betti numbers of the allowable blown-up cochains.
HomologySummary blowup_cohomology(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                                  const Ring& ring, std::size_t cap = default_blowup_cap);
HomologySummary blowup_cohomology(const BlowupCochains& c);

}  // namespace ihom
