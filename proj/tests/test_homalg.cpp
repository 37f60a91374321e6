#include "doctest.h"

#include <random>

#include "ihom/chains.hpp"
#include "ihom/homalg.hpp"
#include "oracles.hpp"

using namespace ihom;

namespace {

DenseMatrix dense(const oracle::Matrix& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  DenseMatrix d(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) d(r, c) = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return d;
}

oracle::Matrix plain(const DenseMatrix& d) {
  oracle::Matrix m(static_cast<std::size_t>(d.rows()), std::vector<Int>(static_cast<std::size_t>(d.cols())));
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = d(r, c);
  return m;
}

SparseMatrix sparse(const DenseMatrix& d) {
  SparseMatrix s = SparseMatrix::zero(d.rows(), d.cols());
  for (int c = 0; c < d.cols(); ++c)
    for (int r = 0; r < d.rows(); ++r)
      if (d(r, c) != 0) s.columns[static_cast<std::size_t>(c)].emplace_back(r, d(r, c));
  return s;
}

std::vector<Int> diagonal(const DenseMatrix& d) {
  std::vector<Int> out;
  for (int i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

bool is_diagonal(const DenseMatrix& d) {
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c)
      if (r != c && d(r, c) != 0) return false;
  return true;
}

Int abs_det(const DenseMatrix& m) {
  Int d = oracle::determinant(plain(m));
  return abs(d);
}

void check_smith(const DenseMatrix& m) {
  const SmithForm f = smith_normal_form(m);
  CHECK(f.u * m * f.v == f.d);
  CHECK(is_diagonal(f.d));
  CHECK(abs_det(f.u) == 1);
  CHECK(abs_det(f.v) == 1);
  const auto diag = diagonal(f.d);
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    CHECK(diag[i] > 0);
    CHECK(diag[i + 1] % diag[i] == 0);
  }
  // Nonzero entries come first on the diagonal.
  for (int i = 0; i < static_cast<int>(diag.size()); ++i) CHECK(f.d(i, i) != 0);
  CHECK(invariant_factors(sparse(m)) == diag);
}

HomologySummary summary(const std::vector<int>& betti, const std::vector<std::vector<long>>& torsion = {}) {
  HomologySummary h;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    DegreeHomology d;
    d.betti = betti[k];
    if (k < torsion.size())
      for (long t : torsion[k]) d.torsion.push_back(t);
    h.degrees.push_back(d);
  }
  return h;
}

}  // namespace

TEST_CASE("smith normal form on small examples") {
  const SmithForm id = smith_normal_form(DenseMatrix::identity(3));
  CHECK(id.d == DenseMatrix::identity(3));

  const DenseMatrix m = DenseMatrix::from_rows({{2, 4}, {6, 8}});
  const SmithForm f = smith_normal_form(m);
  CHECK(f.d == DenseMatrix::from_rows({{2, 0}, {0, 4}}));
  check_smith(m);

  const DenseMatrix zero(3, 2);
  CHECK(smith_normal_form(zero).d.is_zero());
  check_smith(zero);
  check_smith(DenseMatrix(0, 4));
}

TEST_CASE("smith normal form on 200 random matrices up to 30x30") {
  std::mt19937 rng(20261015);
  std::uniform_int_distribution<int> size(1, 30);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = size(rng), cols = size(rng);
    const double density = trial % 3 == 0 ? 0.2 : 1.0;
    check_smith(dense(oracle::random_matrix(rng, rows, cols, -9, 9, density)));
  }
}

TEST_CASE("invariant factors agree with gcds of minors up to 6x6") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 120; ++trial) {
    const int rows = size(rng), cols = size(rng);
    // Low-rank products exercise nontrivial divisibility.
    oracle::Matrix m;
    if (trial % 2 == 0) {
      m = oracle::random_matrix(rng, rows, cols, -9, 9, 0.7);
    } else {
      const auto a = oracle::random_matrix(rng, rows, 2, -3, 3);
      const auto b = oracle::random_matrix(rng, 2, cols, -3, 3);
      m.assign(static_cast<std::size_t>(rows), std::vector<Int>(static_cast<std::size_t>(cols), 0));
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          for (int t = 0; t < 2; ++t) m[i][j] += 2 * a[i][t] * b[t][j];
    }
    const DenseMatrix d = dense(m);
    CHECK(diagonal(smith_normal_form(d).d) == oracle::invariant_factors_by_minors(m));
  }
}

TEST_CASE("rank over prime fields matches plain elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = oracle::random_matrix(rng, 1 + trial % 12, 1 + (trial * 7) % 15, -9, 9, 0.5);
    for (int q : {2, 3, 5, 7}) CHECK(rank_mod(sparse(dense(m)), q) == oracle::rank_mod(m, q));
  }
}

TEST_CASE("kernels are kernels and in reduced form") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = oracle::random_matrix(rng, 1 + trial % 6, 2 + trial % 9, -4, 4, 0.6);
    const DenseMatrix a = dense(m);
    const auto ker = integer_kernel(a);
    CHECK(static_cast<int>(ker.size()) == a.cols() - oracle::rank_rational(m));
    int last_pivot = -1;
    for (const auto& v : ker) {
      for (int r = 0; r < a.rows(); ++r) {
        Int s = 0;
        for (int c = 0; c < a.cols(); ++c) s += a(r, c) * v[static_cast<std::size_t>(c)];
        CHECK(s == 0);
      }
      int pivot = 0;
      while (v[static_cast<std::size_t>(pivot)] == 0) ++pivot;
      CHECK(pivot > last_pivot);
      CHECK(v[static_cast<std::size_t>(pivot)] > 0);
      last_pivot = pivot;
    }
    const auto fk = field_kernel(a, 5);
    CHECK(static_cast<int>(fk.size()) == a.cols() - oracle::rank_mod(m, 5));
  }
}

TEST_CASE("homology of standard complexes") {
  const Ring z = Ring::integers();
  CHECK(homology(simplicial_chains(simplex_boundary(2), z)).to_string() == "(Z, Z)");
  CHECK(homology(simplicial_chains(minimal_torus(), z)).to_string() == "(Z, Z^2, Z)");
  CHECK(homology(simplicial_chains(minimal_rp2(), z)).to_string() == "(Z, Z/2)");
  CHECK(cohomology(simplicial_chains(minimal_rp2(), z)).to_string() == "(Z, 0, Z/2)");
  CHECK(homology(simplicial_chains(minimal_rp2(), Ring::field(2))).to_string() == "(F2, F2, F2)");
  CHECK(homology(simplicial_chains(SimplicialComplex{}, z)).top_nonzero() == -1);
  CHECK(cohomology(simplicial_chains(SimplicialComplex{}, z)).top_nonzero() == -1);
}

TEST_CASE("homology rejects complexes with nonzero square") {
  ChainComplexExact c;
  c.dims = {1, 1, 1};
  c.boundary = {SparseMatrix::zero(0, 1), SparseMatrix::zero(1, 1), SparseMatrix::zero(1, 1)};
  c.boundary[1].columns[0] = {{0, Int(1)}};
  c.boundary[2].columns[0] = {{0, Int(1)}};
  CHECK_THROWS(homology(c));
}

TEST_CASE("field cohomology equals field homology; field betti follows from integral data") {
  for (const auto& k : {simplex_boundary(3), minimal_torus(), minimal_rp2()}) {
    const HomologySummary hz = homology(simplicial_chains(k, Ring::integers()));
    for (int q : {2, 3}) {
      const auto c = simplicial_chains(k, Ring::field(q));
      CHECK(homology(c).same_as(cohomology(c)));
      CHECK(homology(c).same_as(reduce_mod(hz, q)));
    }
  }
}

TEST_CASE("universal coefficients") {
  for (const auto& k : {simplex_boundary(2), minimal_torus(), minimal_rp2()}) {
    const auto c = simplicial_chains(k, Ring::integers());
    CHECK(uct_check(homology(c), cohomology(c)).ok);
  }
  CHECK(uct_check(summary({1, 1}), summary({1, 1})).ok);
  CHECK(uct_check(summary({1, 2, 1}), summary({1, 2, 1})).ok);
  // Corrupted torsion in degree 2.
  const UctResult bad = uct_check(summary({1, 0}, {{}, {2}}), summary({1, 0, 0}, {{}, {}, {3}}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.degree == 2);
}

TEST_CASE("ring parsing") {
  CHECK(Ring::parse("Z") == Ring::integers());
  CHECK(Ring::parse("Fq:5") == Ring::field(5));
  CHECK_THROWS(Ring::parse("Fq:6"));
  CHECK_THROWS(Ring::parse("Q"));
  CHECK(Ring::field(7).to_string() == "Fq:7");
}

TEST_CASE("summaries are deterministic") {
  const auto a = homology(simplicial_chains(minimal_rp2(), Ring::integers())).to_string();
  const auto b = homology(simplicial_chains(minimal_rp2(), Ring::integers())).to_string();
  CHECK(a == b);
}
