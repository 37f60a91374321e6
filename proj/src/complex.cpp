#include "ihom/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace ihom {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : s) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

Simplex normalized(Simplex s, int vertex_count) {
  std::sort(s.begin(), s.end());
  if (s.empty()) throw std::invalid_argument("empty simplex");
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("simplex with repeated vertex");
  if (s.front() < 0 || s.back() >= vertex_count)
    throw std::invalid_argument("simplex vertex out of range");
  return s;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_facets(int vertex_count, std::vector<Simplex> facets) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  std::set<Simplex> all;
  for (auto& f : facets) {
    Simplex s = normalized(std::move(f), vertex_count);
    if (s.size() > 24) throw std::invalid_argument("simplex too large");
    const unsigned n = static_cast<unsigned>(s.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      all.insert(std::move(face));
    }
  }
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  k.simplices_.assign(all.begin(), all.end());
  k.index();
  return k;
}

SimplicialComplex SimplicialComplex::from_simplices(int vertex_count, std::vector<Simplex> simplices) {
  std::set<Simplex> all;
  for (auto& s : simplices) all.insert(normalized(std::move(s), vertex_count));
  for (const auto& s : all) {
    if (s.size() < 2) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(j));
      if (!all.count(f)) throw std::invalid_argument("simplex list is not closed under faces");
    }
  }
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  k.simplices_.assign(all.begin(), all.end());
  k.index();
  return k;
}

void SimplicialComplex::index() {
  ids_.clear();
  ids_.reserve(simplices_.size());
  dim_ = -1;
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    ids_.emplace(simplices_[i], static_cast<int>(i));
    dim_ = std::max(dim_, static_cast<int>(simplices_[i].size()) - 1);
  }
  vertex_ids_.assign(static_cast<std::size_t>(vertex_count_), -1);
  for (int v = 0; v < vertex_count_; ++v) {
    auto it = ids_.find(Simplex{v});
    if (it == ids_.end()) throw std::invalid_argument("vertex " + std::to_string(v) + " is not used");
    vertex_ids_[static_cast<std::size_t>(v)] = it->second;
  }
  faces_.assign(simplices_.size(), {});
  cofaces_.assign(simplices_.size(), {});
  by_dim_.assign(static_cast<std::size_t>(dim_ + 1), {});
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const Simplex& s = simplices_[i];
    by_dim_[s.size() - 1].push_back(static_cast<int>(i));
    if (s.size() < 2) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(j));
      const int fid = ids_.at(f);
      faces_[i].push_back(fid);
      cofaces_[static_cast<std::size_t>(fid)].push_back(static_cast<int>(i));
    }
  }
  for (auto& c : cofaces_) std::sort(c.begin(), c.end());
}

std::optional<int> SimplicialComplex::find(const Simplex& s) const {
  auto it = ids_.find(s);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int SimplicialComplex::id_of(const Simplex& s) const {
  auto it = ids_.find(s);
  if (it == ids_.end()) throw std::out_of_range("simplex not in complex");
  return it->second;
}

const std::vector<int>& SimplicialComplex::of_dim(int k) const {
  static const std::vector<int> none;
  if (k < 0 || k > dim_) return none;
  return by_dim_[static_cast<std::size_t>(k)];
}

std::vector<int> SimplicialComplex::f_vector() const {
  std::vector<int> f;
  for (const auto& v : by_dim_) f.push_back(static_cast<int>(v.size()));
  return f;
}

long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t k = 0; k < by_dim_.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(by_dim_[k].size());
  return chi;
}

std::vector<int> SimplicialComplex::maximal_simplices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (cofaces_[i].empty()) out.push_back(static_cast<int>(i));
  return out;
}

VertexLevelMap VertexLevelMap::trivial(const SimplicialComplex& k) {
  VertexLevelMap m;
  m.n = k.dim();
  m.level.assign(static_cast<std::size_t>(k.vertex_count()), k.dim());
  return m;
}

void VertexLevelMap::validate(const SimplicialComplex& k) const {
  if (static_cast<int>(level.size()) != k.vertex_count())
    throw std::invalid_argument("level map size does not match vertex count");
  if (k.empty()) return;
  if (n < 0) throw std::invalid_argument("formal dimension must be >= 0 for a nonempty complex");
  bool top = false;
  for (int l : level) {
    if (l < 0 || l > n) throw std::invalid_argument("vertex level outside [0, n]");
    top = top || l == n;
  }
  if (!top) throw std::invalid_argument("no vertex has level n");
}

int VertexLevelMap::simplex_level(const Simplex& s) const {
  int l = -1;
  for (int v : s) l = std::max(l, level[static_cast<std::size_t>(v)]);
  return l;
}

FilteredComplex cone(const FilteredComplex& k, int apex_level) {
  k.levels.validate(k.complex);
  const int n = k.levels.n + 1;
  if (apex_level < 0 || apex_level > n)
    throw std::invalid_argument("apex level must lie in [0, " + std::to_string(n) + "]");
  const int apex = k.complex.vertex_count();
  std::vector<Simplex> facets;
  facets.push_back({apex});
  for (int id : k.complex.maximal_simplices()) {
    Simplex s = k.complex.simplex(id);
    s.push_back(apex);
    facets.push_back(std::move(s));
  }
  FilteredComplex out;
  out.complex = SimplicialComplex::from_facets(apex + 1, std::move(facets));
  out.levels.n = n;
  for (int l : k.levels.level) out.levels.level.push_back(l + 1);
  out.levels.level.push_back(apex_level);
  return out;
}

FilteredComplex cone(const SimplicialComplex& k, int apex_level) {
  return cone(FilteredComplex{k, VertexLevelMap::trivial(k)}, apex_level);
}

FilteredComplex join_sphere(int m, const FilteredComplex& k) {
  if (m < 0) throw std::invalid_argument("sphere dimension must be >= 0");
  k.levels.validate(k.complex);
  const int offset = m + 2;
  std::vector<Simplex> facets;
  for (int omit = 0; omit < m + 2; ++omit) {
    Simplex sphere_facet;
    for (int v = 0; v < m + 2; ++v)
      if (v != omit) sphere_facet.push_back(v);
    if (k.complex.empty()) {
      facets.push_back(sphere_facet);
      continue;
    }
    for (int id : k.complex.maximal_simplices()) {
      Simplex s = sphere_facet;
      for (int v : k.complex.simplex(id)) s.push_back(v + offset);
      facets.push_back(std::move(s));
    }
  }
  FilteredComplex out;
  out.complex = SimplicialComplex::from_facets(k.complex.vertex_count() + offset, std::move(facets));
  out.levels.n = k.levels.n + m + 1;
  out.levels.level.assign(static_cast<std::size_t>(offset), m);
  for (int l : k.levels.level) out.levels.level.push_back(l + m + 1);
  return out;
}

FilteredComplex join_sphere(int m, const SimplicialComplex& k) {
  return join_sphere(m, FilteredComplex{k, VertexLevelMap::trivial(k)});
}

FilteredComplex suspension(const FilteredComplex& k) { return join_sphere(0, k); }
FilteredComplex suspension(const SimplicialComplex& k) { return join_sphere(0, k); }

SimplicialComplex full_simplex(int d) {
  Simplex s;
  for (int v = 0; v <= d; ++v) s.push_back(v);
  return SimplicialComplex::from_facets(d + 1, {s});
}

SimplicialComplex simplex_boundary(int d) {
  std::vector<Simplex> facets;
  for (int omit = 0; omit <= d; ++omit) {
    Simplex s;
    for (int v = 0; v <= d; ++v)
      if (v != omit) s.push_back(v);
    facets.push_back(s);
  }
  return SimplicialComplex::from_facets(d + 1, facets);
}

SimplicialComplex discrete_points(int count) {
  std::vector<Simplex> facets;
  for (int v = 0; v < count; ++v) facets.push_back({v});
  return SimplicialComplex::from_facets(count, facets);
}

SimplicialComplex minimal_torus() {
  std::vector<Simplex> facets;
  for (int i = 0; i < 7; ++i) {
    facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
    facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_facets(7, facets);
}

SimplicialComplex minimal_rp2() {
  return SimplicialComplex::from_facets(
      6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
          {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

}  // namespace ihom
