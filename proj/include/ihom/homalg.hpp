#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace ihom {

using Int = mpz_class;

// Coefficients: the integers (q == 0) or the prime field F_q.
struct Ring {
  int q = 0;

  bool is_field() const { return q != 0; }
  std::string to_string() const;
  // "Z" or "Fq:<prime>"; throws std::invalid_argument otherwise.
  static Ring parse(const std::string& text);
  static Ring integers() { return {}; }
  static Ring field(int prime);

  friend bool operator==(const Ring&, const Ring&) = default;
};

bool is_prime(int q);

class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static DenseMatrix identity(int n);
  static DenseMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int r, int c) { return a_[idx(r, c)]; }
  const Int& operator()(int r, int c) const { return a_[idx(r, c)]; }
  bool is_zero() const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> a_;
};

using SparseColumn = std::vector<std::pair<int, Int>>;  // (row, nonzero value), rows increasing

struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseColumn> columns;

  static SparseMatrix zero(int rows, int cols);
  DenseMatrix to_dense() const;
  SparseMatrix transpose() const;
  bool is_zero() const;
  std::size_t nonzeros() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

struct SmithForm {
  DenseMatrix u;  // rows x rows, unimodular
  DenseMatrix d;  // rows x cols, diagonal, d(i,i) | d(i+1,i+1), nonnegative
  DenseMatrix v;  // cols x cols, unimodular
};

// U * M * V = D. Pivot: smallest nonzero absolute value, then row-major.
SmithForm smith_normal_form(const DenseMatrix& m);

// Nonzero invariant factors in divisibility order, without transforms.
// Unit pivots are eliminated sparsely first; the remainder goes through
// the dense Smith reduction.
std::vector<Int> invariant_factors(const SparseMatrix& m);

// Rank over F_q of the reduction of m.
int rank_mod(const SparseMatrix& m, int q);
int rank_over(const SparseMatrix& m, const Ring& ring);

// Basis of the integer kernel {x : A x = 0} as rows of a matrix in reduced
// Hermite form: pivots move strictly right, are positive, and entries above
// a pivot lie in [0, pivot).
std::vector<std::vector<Int>> integer_kernel(const DenseMatrix& a);
// Basis of the kernel over F_q in reduced row echelon form (entries in [0, q)).
std::vector<std::vector<Int>> field_kernel(const DenseMatrix& a, int q);
std::vector<std::vector<Int>> kernel_basis(const DenseMatrix& a, const Ring& ring);

// Candidates are columns known only through their entries on forbidden
// rows (row id, coefficient). Returns a basis, as combinations of candidate
// ids, of the combinations whose forbidden entries cancel; candidates with
// no forbidden entries come back as unit vectors. Candidates are split into
// blocks sharing forbidden rows and each block is reduced on its own with
// kernel_basis, so the result is in reduced echelon form overall and sorted
// by pivot (the first entry of each vector).
std::vector<SparseColumn> constrained_kernel(const std::vector<int>& candidates,
                                             const std::vector<std::vector<std::pair<int, int>>>& forbidden,
                                             const Ring& ring);

// Graded free module with differentials of degree -1.
//   boundary[k] : C_k -> C_{k-1}, a dims[k-1] x dims[k] matrix (boundary[0] is 0 x dims[0]).
// Each generator of C_k is an integer combination of simplex ids (its
// label); labels may be left empty when they are not meaningful.
struct ChainComplexExact {
  Ring ring;
  std::vector<int> dims;
  std::vector<SparseMatrix> boundary;
  std::vector<std::vector<SparseColumn>> generators;

  int top_degree() const { return static_cast<int>(dims.size()) - 1; }
};

// Throws std::logic_error naming the first degree where the composite of
// consecutive differentials is nonzero (over the complex's ring).
void check_square_zero(const ChainComplexExact& c);

struct DegreeHomology {
  int betti = 0;
  std::vector<Int> torsion;  // each > 1, dividing the next

  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

struct HomologySummary {
  Ring ring;
  std::vector<DegreeHomology> degrees;  // index = degree

  // Degree k, or zero homology beyond the stored range.
  DegreeHomology at(int k) const;
  int top_nonzero() const;  // -1 when everything vanishes
  // Same ring and equal in every degree (trailing zeros ignored).
  bool same_as(const HomologySummary& other) const;
  std::string to_string() const;
};

HomologySummary homology(const ChainComplexExact& c);
// Cohomology of the dual cochain complex, built from the transposed
// differentials.
HomologySummary cohomology(const ChainComplexExact& c);

struct UctResult {
  bool ok = true;
  int degree = -1;  // first failing degree
  std::string detail;
};

// betti(coh, k) == betti(hom, k) and torsion(coh, k) == torsion(hom, k - 1).
UctResult uct_check(const HomologySummary& hom, const HomologySummary& coh);

// Field Betti numbers predicted from integral homology: for a field F_q,
// b_k + (# q-divisible torsion of degree k) + (# of degree k - 1).
HomologySummary reduce_mod(const HomologySummary& integral, int q);

}  // namespace ihom
