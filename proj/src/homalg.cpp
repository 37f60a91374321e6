#include "ihom/homalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ihom {

namespace {

long long mod(long long a, long long q) {
  a %= q;
  return a < 0 ? a + q : a;
}

long long inverse_mod(long long a, long long q) {
  long long result = 1, base = mod(a, q), e = q - 2;
  while (e > 0) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return result;
}

long long reduce(const Int& v, int q) { return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(q)); }

Int abs_of(const Int& v) { return abs(v); }

// Dense Smith reduction in place; u and v are only updated when track is set.
void smith_in_place(DenseMatrix& a, DenseMatrix* u, DenseMatrix* v) {
  const int rows = a.rows(), cols = a.cols();
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    if (u)
      for (int c = 0; c < rows; ++c) std::swap((*u)(i, c), (*u)(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    if (v)
      for (int r = 0; r < cols; ++r) std::swap((*v)(r, i), (*v)(r, j));
  };
  auto add_row = [&](int dst, int src, const Int& f) {
    for (int c = 0; c < cols; ++c)
      if (a(src, c) != 0) a(dst, c) += f * a(src, c);
    if (u)
      for (int c = 0; c < rows; ++c)
        if ((*u)(src, c) != 0) (*u)(dst, c) += f * (*u)(src, c);
  };
  auto add_col = [&](int dst, int src, const Int& f) {
    for (int r = 0; r < rows; ++r)
      if (a(r, src) != 0) a(r, dst) += f * a(r, src);
    if (v)
      for (int r = 0; r < cols; ++r)
        if ((*v)(r, src) != 0) (*v)(r, dst) += f * (*v)(r, src);
  };

  for (int t = 0; t < std::min(rows, cols); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi < 0 || abs_of(a(i, j)) < abs_of(a(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < rows; ++i)
        if (a(i, t) != 0) {
          const Int q = a(i, t) / a(t, t);
          if (q != 0) add_row(i, t, -q);
          if (a(i, t) != 0) dirty = true;
        }
      for (int j = t + 1; j < cols; ++j)
        if (a(t, j) != 0) {
          const Int q = a(t, j) / a(t, t);
          if (q != 0) add_col(j, t, -q);
          if (a(t, j) != 0) dirty = true;
        }
      if (dirty) {
        // A remainder is now smaller than the pivot; move the smallest one in.
        int bi = -1, bj = -1;
        for (int i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && (bi < 0 || abs_of(a(i, t)) < abs_of(a(bi, bj)))) bi = i, bj = t;
        for (int j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && (bi < 0 || abs_of(a(t, j)) < abs_of(a(bi, bj)))) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      int wi = -1;
      for (int i = t + 1; i < rows && wi < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            wi = i;
            break;
          }
      if (wi < 0) break;
      add_row(t, wi, 1);
    }
    if (a(t, t) < 0) {
      for (int c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      if (u)
        for (int c = 0; c < rows; ++c) (*u)(t, c) = -(*u)(t, c);
    }
  }
}

std::vector<Int> diagonal_of(const DenseMatrix& d) {
  std::vector<Int> out;
  for (int i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

// Row echelon Hermite reduction of a list of integer row vectors.
std::vector<std::vector<Int>> hermite_rows(std::vector<std::vector<Int>> m, int width) {
  const int n = static_cast<int>(m.size());
  int r = 0;
  for (int c = 0; c < width && r < n; ++c) {
    for (;;) {
      int best = -1;
      for (int i = r; i < n; ++i)
        if (m[i][c] != 0 && (best < 0 || abs_of(m[i][c]) < abs_of(m[best][c]))) best = i;
      if (best < 0) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (int i = r + 1; i < n; ++i) {
        if (m[i][c] == 0) continue;
        const Int q = m[i][c] / m[r][c];
        for (int j = c; j < width; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= n || m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (int j = c; j < width; ++j) m[r][j] = -m[r][j];
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q != 0)
        for (int j = c; j < width; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.resize(static_cast<std::size_t>(r));
  return m;
}

// Reduced row echelon form over F_q of row vectors; returns the nonzero rows.
std::vector<std::vector<long long>> rref_mod(std::vector<std::vector<long long>> m, int width, long long q,
                                             std::vector<int>* pivots = nullptr) {
  const int n = static_cast<int>(m.size());
  int r = 0;
  for (int c = 0; c < width && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    const long long inv = inverse_mod(m[r][c], q);
    for (int j = c; j < width; ++j) m[r][j] = m[r][j] * inv % q;
    for (int i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const long long f = m[i][c];
      for (int j = c; j < width; ++j) m[i][j] = mod(m[i][j] - f * m[r][j], q);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  m.resize(static_cast<std::size_t>(r));
  return m;
}

struct SparseWork {
  std::vector<std::map<int, Int>> cols;
  std::vector<std::set<int>> row_cols;
};

SparseWork to_work(const SparseMatrix& m) {
  SparseWork w;
  w.cols.resize(static_cast<std::size_t>(m.cols));
  w.row_cols.resize(static_cast<std::size_t>(m.rows));
  for (int c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)]) {
      w.cols[static_cast<std::size_t>(c)].emplace(r, v);
      w.row_cols[static_cast<std::size_t>(r)].insert(c);
    }
  return w;
}

}  // namespace

std::string Ring::to_string() const { return q == 0 ? "Z" : "Fq:" + std::to_string(q); }

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

Ring Ring::field(int prime) {
  if (!is_prime(prime)) throw std::invalid_argument("field characteristic " + std::to_string(prime) + " is not prime");
  if (prime > 46340) throw std::invalid_argument("field characteristic too large");
  return Ring{prime};
}

Ring Ring::parse(const std::string& text) {
  if (text == "Z") return integers();
  if (text.rfind("Fq:", 0) == 0) {
    std::size_t used = 0;
    int q = 0;
    try {
      q = std::stoi(text.substr(3), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad ring selector '" + text + "'");
    }
    if (used != text.size() - 3) throw std::invalid_argument("bad ring selector '" + text + "'");
    return field(q);
  }
  throw std::invalid_argument("bad ring selector '" + text + "' (expected Z or Fq:<prime>)");
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r ? static_cast<int>(rows.front().size()) : 0;
  DenseMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw std::invalid_argument("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

bool DenseMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not match");
  DenseMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

SparseMatrix SparseMatrix::zero(int rows, int cols) {
  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.columns.resize(static_cast<std::size_t>(cols));
  return m;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[static_cast<std::size_t>(c)]) d(r, c) = v;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t = zero(cols, rows);
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, v] : columns[static_cast<std::size_t>(c)]) t.columns[static_cast<std::size_t>(r)].emplace_back(c, v);
  return t;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns.begin(), columns.end(), [](const SparseColumn& c) { return c.empty(); });
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shapes do not match");
  SparseMatrix out = SparseMatrix::zero(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    std::map<int, Int> acc;
    for (const auto& [k, bv] : b.columns[static_cast<std::size_t>(j)])
      for (const auto& [i, av] : a.columns[static_cast<std::size_t>(k)]) acc[i] += av * bv;
    for (auto& [i, v] : acc)
      if (v != 0) out.columns[static_cast<std::size_t>(j)].emplace_back(i, std::move(v));
  }
  return out;
}

SmithForm smith_normal_form(const DenseMatrix& m) {
  SmithForm s{DenseMatrix::identity(m.rows()), m, DenseMatrix::identity(m.cols())};
  smith_in_place(s.d, &s.u, &s.v);
  return s;
}

std::vector<Int> invariant_factors(const SparseMatrix& m) {
  SparseWork w = to_work(m);
  std::vector<Int> units;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int c = 0; c < m.cols; ++c) {
      auto& col = w.cols[static_cast<std::size_t>(c)];
      int pr = -1;
      for (const auto& [r, v] : col)
        if ((v == 1 || v == -1) &&
            (pr < 0 || w.row_cols[static_cast<std::size_t>(r)].size() < w.row_cols[static_cast<std::size_t>(pr)].size()))
          pr = r;
      if (pr < 0) continue;
      const Int u = col.at(pr);
      const std::vector<int> others(w.row_cols[static_cast<std::size_t>(pr)].begin(),
                                    w.row_cols[static_cast<std::size_t>(pr)].end());
      for (int c2 : others) {
        if (c2 == c) continue;
        auto& target = w.cols[static_cast<std::size_t>(c2)];
        const Int f = target.at(pr) * u;
        for (const auto& [r, v] : col) {
          Int& x = target[r];
          x -= f * v;
          if (x == 0) {
            target.erase(r);
            w.row_cols[static_cast<std::size_t>(r)].erase(c2);
          } else {
            w.row_cols[static_cast<std::size_t>(r)].insert(c2);
          }
        }
      }
      for (const auto& [r, v] : col) w.row_cols[static_cast<std::size_t>(r)].erase(c);
      col.clear();
      units.emplace_back(1);
      progress = true;
    }
  }
  std::vector<int> live_cols, live_rows;
  for (int c = 0; c < m.cols; ++c)
    if (!w.cols[static_cast<std::size_t>(c)].empty()) live_cols.push_back(c);
  for (int r = 0; r < m.rows; ++r)
    if (!w.row_cols[static_cast<std::size_t>(r)].empty()) live_rows.push_back(r);
  std::vector<Int> factors = std::move(units);
  if (!live_cols.empty()) {
    std::map<int, int> row_pos;
    for (std::size_t i = 0; i < live_rows.size(); ++i) row_pos[live_rows[i]] = static_cast<int>(i);
    DenseMatrix rest(static_cast<int>(live_rows.size()), static_cast<int>(live_cols.size()));
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (const auto& [r, v] : w.cols[static_cast<std::size_t>(live_cols[j])]) rest(row_pos.at(r), static_cast<int>(j)) = v;
    smith_in_place(rest, nullptr, nullptr);
    for (Int& d : diagonal_of(rest)) factors.push_back(std::move(d));
  }
  // Units first; the dense part is already a divisibility chain.
  return factors;
}

int rank_mod(const SparseMatrix& m, int q) {
  std::vector<std::map<int, long long>> cols(static_cast<std::size_t>(m.cols));
  std::vector<std::set<int>> row_cols(static_cast<std::size_t>(m.rows));
  for (int c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.columns[static_cast<std::size_t>(c)]) {
      const long long x = reduce(v, q);
      if (x == 0) continue;
      cols[static_cast<std::size_t>(c)].emplace(r, x);
      row_cols[static_cast<std::size_t>(r)].insert(c);
    }
  int rank = 0;
  for (int c = 0; c < m.cols; ++c) {
    auto& col = cols[static_cast<std::size_t>(c)];
    if (col.empty()) continue;
    int pr = -1;
    for (const auto& [r, v] : col)
      if (pr < 0 || row_cols[static_cast<std::size_t>(r)].size() < row_cols[static_cast<std::size_t>(pr)].size()) pr = r;
    const long long inv = inverse_mod(col.at(pr), q);
    const std::vector<int> others(row_cols[static_cast<std::size_t>(pr)].begin(), row_cols[static_cast<std::size_t>(pr)].end());
    for (int c2 : others) {
      if (c2 <= c) continue;
      auto& target = cols[static_cast<std::size_t>(c2)];
      const long long f = target.at(pr) * inv % q;
      for (const auto& [r, v] : col) {
        long long& x = target[r];
        x = mod(x - f * v, q);
        if (x == 0) {
          target.erase(r);
          row_cols[static_cast<std::size_t>(r)].erase(c2);
        } else {
          row_cols[static_cast<std::size_t>(r)].insert(c2);
        }
      }
    }
    for (const auto& [r, v] : col) row_cols[static_cast<std::size_t>(r)].erase(c);
    col.clear();
    ++rank;
  }
  return rank;
}

int rank_over(const SparseMatrix& m, const Ring& ring) {
  if (ring.is_field()) return rank_mod(m, ring.q);
  return static_cast<int>(invariant_factors(m).size());
}

std::vector<std::vector<Int>> integer_kernel(const DenseMatrix& a) {
  const int rows = a.rows(), cols = a.cols();
  DenseMatrix w = a;
  DenseMatrix v = DenseMatrix::identity(cols);
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(w(r, i), w(r, j));
    for (int r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
  };
  auto add_col = [&](int dst, int src, const Int& f) {
    for (int r = 0; r < rows; ++r)
      if (w(r, src) != 0) w(r, dst) += f * w(r, src);
    for (int r = 0; r < cols; ++r)
      if (v(r, src) != 0) v(r, dst) += f * v(r, src);
  };
  int t = 0;
  for (int r = 0; r < rows && t < cols; ++r) {
    for (;;) {
      int best = -1;
      for (int j = t; j < cols; ++j)
        if (w(r, j) != 0 && (best < 0 || abs_of(w(r, j)) < abs_of(w(r, best)))) best = j;
      if (best < 0) break;
      swap_cols(t, best);
      bool clean = true;
      for (int j = t + 1; j < cols; ++j) {
        if (w(r, j) == 0) continue;
        const Int q = w(r, j) / w(r, t);
        add_col(j, t, -q);
        if (w(r, j) != 0) clean = false;
      }
      if (clean) {
        ++t;
        break;
      }
    }
  }
  std::vector<std::vector<Int>> basis;
  for (int j = t; j < cols; ++j) {
    std::vector<Int> x(static_cast<std::size_t>(cols));
    for (int r = 0; r < cols; ++r) x[static_cast<std::size_t>(r)] = v(r, j);
    basis.push_back(std::move(x));
  }
  return hermite_rows(std::move(basis), cols);
}

std::vector<std::vector<Int>> field_kernel(const DenseMatrix& a, int q) {
  const int rows = a.rows(), cols = a.cols();
  std::vector<std::vector<long long>> m(static_cast<std::size_t>(rows), std::vector<long long>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = reduce(a(i, j), q);
  std::vector<int> pivots;
  m = rref_mod(std::move(m), cols, q, &pivots);
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<std::vector<long long>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<long long> x(static_cast<std::size_t>(cols), 0);
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      x[static_cast<std::size_t>(pivots[i])] = mod(-m[i][static_cast<std::size_t>(f)], q);
    basis.push_back(std::move(x));
  }
  basis = rref_mod(std::move(basis), cols, q);
  std::vector<std::vector<Int>> out;
  for (const auto& row : basis) {
    std::vector<Int> x;
    for (long long e : row) x.emplace_back(static_cast<long>(e));
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<std::vector<Int>> kernel_basis(const DenseMatrix& a, const Ring& ring) {
  return ring.is_field() ? field_kernel(a, ring.q) : integer_kernel(a);
}

std::vector<SparseColumn> constrained_kernel(const std::vector<int>& candidates,
                                             const std::vector<std::vector<std::pair<int, int>>>& forbidden,
                                             const Ring& ring) {
  if (forbidden.size() != candidates.size()) throw std::invalid_argument("one forbidden list per candidate");
  std::vector<std::pair<int, SparseColumn>> gens;  // (pivot, vector)
  std::vector<int> constrained;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (forbidden[i].empty())
      gens.push_back({candidates[i], SparseColumn{{candidates[i], Int(1)}}});
    else
      constrained.push_back(static_cast<int>(i));
  }

  std::vector<int> parent(candidates.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  };
  std::map<int, int> owner;
  for (int i : constrained)
    for (const auto& entry : forbidden[static_cast<std::size_t>(i)]) {
      auto [it, fresh] = owner.emplace(entry.first, i);
      if (fresh) continue;
      const int a = root(i), b = root(it->second);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, std::vector<int>> blocks;
  for (int i : constrained) blocks[root(i)].push_back(i);

  for (const auto& [r, members] : blocks) {
    std::map<int, int> row_of;
    for (int i : members)
      for (const auto& entry : forbidden[static_cast<std::size_t>(i)]) row_of.emplace(entry.first, 0);
    int rows = 0;
    for (auto& entry : row_of) entry.second = rows++;
    DenseMatrix a(rows, static_cast<int>(members.size()));
    for (std::size_t j = 0; j < members.size(); ++j)
      for (const auto& [row, coef] : forbidden[static_cast<std::size_t>(members[j])])
        a(row_of.at(row), static_cast<int>(j)) += coef;
    for (const auto& x : kernel_basis(a, ring)) {
      SparseColumn g;
      for (std::size_t j = 0; j < members.size(); ++j)
        if (x[j] != 0) g.emplace_back(candidates[static_cast<std::size_t>(members[j])], x[j]);
      const int pivot = g.front().first;
      gens.emplace_back(pivot, std::move(g));
    }
  }
  std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SparseColumn> out;
  out.reserve(gens.size());
  for (auto& g : gens) out.push_back(std::move(g.second));
  return out;
}

void check_square_zero(const ChainComplexExact& c) {
  for (std::size_t k = 1; k + 1 < c.boundary.size(); ++k) {
    const SparseMatrix prod = c.boundary[k] * c.boundary[k + 1];
    for (const auto& col : prod.columns)
      for (const auto& [r, v] : col)
        if (!c.ring.is_field() || reduce(v, c.ring.q) != 0)
          throw std::logic_error("differential does not square to zero at degree " + std::to_string(k + 1));
  }
}

DegreeHomology HomologySummary::at(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= degrees.size()) return {};
  return degrees[static_cast<std::size_t>(k)];
}

int HomologySummary::top_nonzero() const {
  for (int k = static_cast<int>(degrees.size()) - 1; k >= 0; --k)
    if (degrees[static_cast<std::size_t>(k)].betti != 0 || !degrees[static_cast<std::size_t>(k)].torsion.empty()) return k;
  return -1;
}

bool HomologySummary::same_as(const HomologySummary& other) const {
  if (!(ring == other.ring)) return false;
  const int top = std::max(top_nonzero(), other.top_nonzero());
  for (int k = 0; k <= top; ++k)
    if (!(at(k) == other.at(k))) return false;
  return true;
}

std::string HomologySummary::to_string() const {
  std::ostringstream out;
  const std::string base = ring.is_field() ? "F" + std::to_string(ring.q) : "Z";
  const int top = top_nonzero();
  out << "(";
  for (int k = 0; k <= top; ++k) {
    if (k) out << ", ";
    const DegreeHomology h = at(k);
    bool any = false;
    if (h.betti) {
      out << base;
      if (h.betti > 1) out << "^" << h.betti;
      any = true;
    }
    for (const Int& t : h.torsion) {
      out << (any ? "+" : "") << "Z/" << t.get_str();
      any = true;
    }
    if (!any) out << "0";
  }
  out << ")";
  return out.str();
}

namespace {

struct MapData {
  int rank = 0;
  std::vector<Int> torsion;
};

MapData analyse(const SparseMatrix& m, const Ring& ring) {
  MapData d;
  if (ring.is_field()) {
    d.rank = rank_mod(m, ring.q);
    return d;
  }
  for (Int& f : invariant_factors(m)) {
    ++d.rank;
    if (f > 1) d.torsion.push_back(std::move(f));
  }
  std::sort(d.torsion.begin(), d.torsion.end());
  return d;
}

// Homology of a graded module where incoming[k] maps into degree k and
// outgoing[k] maps out of degree k.
HomologySummary graded(const Ring& ring, const std::vector<int>& dims, const std::vector<SparseMatrix>& incoming,
                       const std::vector<SparseMatrix>& outgoing) {
  HomologySummary h;
  h.ring = ring;
  std::vector<MapData> in, out;
  for (const auto& m : incoming) in.push_back(analyse(m, ring));
  for (const auto& m : outgoing) out.push_back(analyse(m, ring));
  for (std::size_t k = 0; k < dims.size(); ++k) {
    DegreeHomology d;
    d.betti = dims[k] - in[k].rank - out[k].rank;
    d.torsion = in[k].torsion;
    h.degrees.push_back(std::move(d));
  }
  return h;
}

}  // namespace

HomologySummary homology(const ChainComplexExact& c) {
  check_square_zero(c);
  const std::size_t n = c.dims.size();
  std::vector<SparseMatrix> in, out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(k == 0 ? SparseMatrix::zero(0, c.dims[0]) : c.boundary[k]);
    in.push_back(k + 1 < n ? c.boundary[k + 1] : SparseMatrix::zero(c.dims[k], 0));
  }
  return graded(c.ring, c.dims, in, out);
}

HomologySummary cohomology(const ChainComplexExact& c) {
  check_square_zero(c);
  const std::size_t n = c.dims.size();
  // delta[k] : C^k -> C^{k+1} is the transpose of boundary[k + 1].
  std::vector<SparseMatrix> delta;
  for (std::size_t k = 0; k < n; ++k)
    delta.push_back(k + 1 < n ? c.boundary[k + 1].transpose() : SparseMatrix::zero(0, c.dims[k]));
  std::vector<SparseMatrix> in, out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(delta[k]);
    in.push_back(k == 0 ? SparseMatrix::zero(c.dims[0], 0) : delta[k - 1]);
  }
  return graded(c.ring, c.dims, in, out);
}

UctResult uct_check(const HomologySummary& hom, const HomologySummary& coh) {
  const int top = std::max(hom.top_nonzero(), coh.top_nonzero()) + 1;
  for (int k = 0; k <= top; ++k) {
    const DegreeHomology h = hom.at(k), c = coh.at(k), prev = hom.at(k - 1);
    if (h.betti != c.betti)
      return {false, k, "betti " + std::to_string(c.betti) + " in cohomology vs " + std::to_string(h.betti)};
    if (c.torsion != prev.torsion) return {false, k, "cohomology torsion differs from homology torsion one degree down"};
  }
  return {};
}

HomologySummary reduce_mod(const HomologySummary& integral, int q) {
  HomologySummary out;
  out.ring = Ring::field(q);
  auto divisible = [&](const DegreeHomology& d) {
    int n = 0;
    for (const Int& t : d.torsion)
      if (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(q))) ++n;
    return n;
  };
  for (int k = 0; k <= integral.top_nonzero() + 1; ++k) {
    DegreeHomology d;
    d.betti = integral.at(k).betti + divisible(integral.at(k)) + divisible(integral.at(k - 1));
    out.degrees.push_back(d);
  }
  return out;
}

}  // namespace ihom
