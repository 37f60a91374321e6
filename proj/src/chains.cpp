#include "ihom/chains.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ihom {

namespace {

using FaceList = std::vector<std::pair<int, int>>;  // (face id, sign)
using BoundaryFn = std::function<FaceList(int)>;

FaceList full_boundary(const SimplicialComplex& k, int id) {
  FaceList out;
  if (k.simplex_dim(id) == 0) return out;
  const auto& faces = k.faces(id);
  for (std::size_t j = 0; j < faces.size(); ++j) out.emplace_back(faces[j], j % 2 == 0 ? 1 : -1);
  return out;
}

Int normalize(Int v, const Ring& ring) {
  if (ring.is_field()) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(ring.q));
    return r;
  }
  return v;
}

// Generators of degree k: kernel of the boundary projected onto the
// non-good (k-1)-simplices, inside the span of the good k-simplices.
std::vector<SparseColumn> degree_generators(const SimplicialComplex& k, int degree, const std::vector<char>& good,
                                            const BoundaryFn& boundary, const Ring& ring) {
  std::vector<int> candidates;
  std::vector<FaceList> bad_faces;
  for (int id : k.of_dim(degree)) {
    if (!good[static_cast<std::size_t>(id)]) continue;
    candidates.push_back(id);
    bad_faces.emplace_back();
    for (const auto& [f, sign] : boundary(id))
      if (!good[static_cast<std::size_t>(f)]) bad_faces.back().emplace_back(f, sign);
  }
  return constrained_kernel(candidates, bad_faces, ring);
}

// Coordinates of a chain in an echelon generator family (pivot = first entry).
SparseColumn coordinates(std::map<int, Int> chain, const std::vector<SparseColumn>& gens,
                         const std::map<int, int>& pivot_of, const Ring& ring) {
  SparseColumn coords;
  while (!chain.empty()) {
    const auto [s, c] = *chain.begin();
    const auto it = pivot_of.find(s);
    if (it == pivot_of.end()) throw std::logic_error("boundary leaves the span of the generators");
    const SparseColumn& g = gens[static_cast<std::size_t>(it->second)];
    Int f;
    if (ring.is_field()) {
      Int inv;
      const Int q(ring.q);
      mpz_invert(inv.get_mpz_t(), g.front().second.get_mpz_t(), q.get_mpz_t());
      f = normalize(c * inv, ring);
    } else {
      if (!mpz_divisible_p(c.get_mpz_t(), g.front().second.get_mpz_t()))
        throw std::logic_error("boundary is not an integral combination of the generators");
      f = c / g.front().second;
    }
    for (const auto& [t, v] : g) {
      Int& x = chain[t];
      x = normalize(x - f * v, ring);
      if (x == 0) chain.erase(t);
    }
    coords.emplace_back(it->second, f);
  }
  std::sort(coords.begin(), coords.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return coords;
}

ChainComplexExact build(const SimplicialComplex& k, const Ring& ring, const std::vector<char>& good,
                        const BoundaryFn& boundary) {
  ChainComplexExact c;
  c.ring = ring;
  const int top = k.dim();
  for (int d = 0; d <= top; ++d) {
    c.generators.push_back(degree_generators(k, d, good, boundary, ring));
    c.dims.push_back(static_cast<int>(c.generators.back().size()));
  }
  for (int d = 0; d <= top; ++d) {
    if (d == 0) {
      c.boundary.push_back(SparseMatrix::zero(0, c.dims[0]));
      continue;
    }
    const auto& lower = c.generators[static_cast<std::size_t>(d - 1)];
    std::map<int, int> pivot_of;
    for (std::size_t j = 0; j < lower.size(); ++j) pivot_of.emplace(lower[j].front().first, static_cast<int>(j));
    SparseMatrix m = SparseMatrix::zero(c.dims[static_cast<std::size_t>(d - 1)], c.dims[static_cast<std::size_t>(d)]);
    const auto& gens = c.generators[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::map<int, Int> chain;
      for (const auto& [s, coef] : gens[j])
        for (const auto& [f, sign] : boundary(s)) {
          Int& x = chain[f];
          x = normalize(x + coef * sign, ring);
          if (x == 0) chain.erase(f);
        }
      m.columns[j] = coordinates(std::move(chain), lower, pivot_of, ring);
    }
    c.boundary.push_back(std::move(m));
  }
  check_square_zero(c);
  return c;
}

}  // namespace

void require_full(const SimplicialComplex& k, const Stratification& s) {
  const int w = fullness_witness(k, s);
  if (w >= 0) throw NotFull(w);
}

FilteredComplexView::FilteredComplexView(const SimplicialComplex& k, const Stratification& s) : k_(&k), s_(&s) {
  if (s.assignment().size() != k.size()) throw std::invalid_argument("stratification does not match the complex");
  require_full(k, s);
  levels_ = levels_of(k, s);
  meets_.resize(k.size());
  // Faces may have larger ids than their cofaces, so go up by dimension.
  for (int d = 0; d <= k.dim(); ++d)
    for (int i : k.of_dim(d)) {
      std::vector<int> m{s.of_simplex(i)};
      for (int f : k.faces(i)) {
        const auto& fm = meets_[static_cast<std::size_t>(f)];
        m.insert(m.end(), fm.begin(), fm.end());
      }
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      meets_[static_cast<std::size_t>(i)] = std::move(m);
    }
}

bool FilteredComplexView::regular(int simplex) const {
  return levels_.simplex_level(k_->simplex(simplex)) == s_->n();
}

ExtInt FilteredComplexView::perverse_degree(int simplex, int stratum) const {
  const auto& m = meets_[static_cast<std::size_t>(simplex)];
  if (!std::binary_search(m.begin(), m.end(), stratum)) return ExtInt::neg_inf();
  const int d = s_->dim(stratum);
  int count = 0;
  for (int v : k_->simplex(simplex))
    if (level(v) <= d) ++count;
  return ExtInt(count - 1);
}

FilteredSimplexView filtered_view(const SimplicialComplex& k, const Stratification& s, int simplex) {
  require_full(k, s);
  const VertexLevelMap levels = levels_of(k, s);
  FilteredSimplexView v;
  v.simplex = simplex;
  for (int i = 0; i <= s.n(); ++i) {
    int count = 0;
    for (int x : k.simplex(simplex))
      if (levels.level[static_cast<std::size_t>(x)] <= i) ++count;
    v.decomposition_dims.push_back(count - 1);
  }
  const int n = s.n();
  v.regular = n == 0 ? v.decomposition_dims[0] >= 0 : v.decomposition_dims[static_cast<std::size_t>(n)] >
                                                            v.decomposition_dims[static_cast<std::size_t>(n - 1)];
  return v;
}

ExtInt perverse_degree(const SimplicialComplex& k, const Stratification& s, int simplex, int stratum) {
  return FilteredComplexView(k, s).perverse_degree(simplex, stratum);
}

Allowability allowability(const FilteredComplexView& view, const Perversity& p, int simplex) {
  const Stratification& s = view.strat();
  const int dim = view.complex().simplex_dim(simplex);
  Allowability a;
  a.allowable = true;
  for (int st : view.strata_meeting(simplex)) {
    if (s.regular(st)) continue;
    if (view.perverse_degree(simplex, st) > ExtInt(dim - s.codim(st)) + p(st)) {
      a.allowable = false;
      break;
    }
  }
  a.tame = a.allowable && view.regular(simplex);
  return a;
}

Allowability allowability(const SimplicialComplex& k, const Stratification& s, const Perversity& p, int simplex) {
  check_perversity(s, p);
  return allowability(FilteredComplexView(k, s), p, simplex);
}

ChainComplexExact simplicial_chains(const SimplicialComplex& k, const Ring& ring) {
  const std::vector<char> good(k.size(), 1);
  return build(k, ring, good, [&](int id) { return full_boundary(k, id); });
}

ChainComplexExact intersection_complex(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                                       const Ring& ring) {
  check_perversity(s, p);
  const FilteredComplexView view(k, s);
  std::vector<char> good(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) good[i] = allowability(view, p, static_cast<int>(i)).allowable;
  return build(k, ring, good, [&](int id) { return full_boundary(k, id); });
}

ChainComplexExact tame_complex(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                               const Ring& ring) {
  check_perversity(s, p);
  const FilteredComplexView view(k, s);
  std::vector<char> good(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) good[i] = allowability(view, p, static_cast<int>(i)).tame;
  return build(k, ring, good, [&](int id) {
    FaceList out;
    for (const auto& face : full_boundary(k, id))
      if (view.regular(face.first)) out.push_back(face);
    return out;
  });
}

}  // namespace ihom
