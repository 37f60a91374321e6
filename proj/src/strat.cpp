#include "ihom/strat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace ihom {

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

private:
  std::vector<int> parent_;
};

// All faces of a simplex (including itself), increasing ids.
std::vector<int> all_faces(const SimplicialComplex& k, int id) {
  std::set<int> seen{id};
  std::vector<int> stack{id};
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int f : k.faces(s))
      if (seen.insert(f).second) stack.push_back(f);
  }
  return {seen.begin(), seen.end()};
}

std::string simplex_text(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

}  // namespace

Stratification Stratification::from_labels(int n, const std::vector<int>& labels, const std::vector<int>& dims) {
  Stratification s;
  s.n_ = n;
  std::map<int, int> renumber;
  for (int label : labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= dims.size())
      throw std::invalid_argument("stratum label without a dimension");
    if (!renumber.count(label)) {
      const int id = static_cast<int>(renumber.size());
      renumber.emplace(label, id);
      Stratum st;
      st.id = id;
      st.dim = dims[static_cast<std::size_t>(label)];
      st.regular = st.dim == n;
      s.strata_.push_back(st);
    }
  }
  s.assignment_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int id = renumber.at(labels[i]);
    s.assignment_.push_back(id);
    s.strata_[static_cast<std::size_t>(id)].simplices.push_back(static_cast<int>(i));
  }
  return s;
}

std::vector<int> Stratification::stratum_dims() const {
  std::vector<int> d;
  for (const auto& st : strata_) d.push_back(st.dim);
  return d;
}

std::vector<int> Stratification::singular_strata() const {
  std::vector<int> out;
  for (const auto& st : strata_)
    if (!st.regular) out.push_back(st.id);
  return out;
}

Stratification strata_from_levels(const SimplicialComplex& k, const VertexLevelMap& levels) {
  levels.validate(k);
  const std::size_t count = k.size();
  std::vector<int> lev(count);
  for (std::size_t i = 0; i < count; ++i) lev[i] = levels.simplex_level(k.simplex(static_cast<int>(i)));
  UnionFind uf(count);
  for (std::size_t i = 0; i < count; ++i)
    for (int f : k.faces(static_cast<int>(i)))
      if (lev[static_cast<std::size_t>(f)] == lev[i]) uf.unite(static_cast<int>(i), f);
  std::map<int, int> max_dim;
  for (std::size_t i = 0; i < count; ++i) {
    const int root = uf.find(static_cast<int>(i));
    const int d = k.simplex_dim(static_cast<int>(i));
    if (d > lev[i])
      throw std::invalid_argument("simplex " + simplex_text(k.simplex(static_cast<int>(i))) + " has dimension " +
                                  std::to_string(d) + " above its level " + std::to_string(lev[i]));
    auto [it, fresh] = max_dim.emplace(root, d);
    if (!fresh) it->second = std::max(it->second, d);
  }
  std::vector<int> labels(count), dims(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const int root = uf.find(static_cast<int>(i));
    labels[i] = root;
    dims[static_cast<std::size_t>(root)] = lev[i];
    if (max_dim.at(root) != lev[i])
      throw std::invalid_argument("level-" + std::to_string(lev[i]) + " component containing simplex " +
                                  simplex_text(k.simplex(root)) + " has geometric dimension " +
                                  std::to_string(max_dim.at(root)));
  }
  return Stratification::from_labels(levels.n, labels, dims);
}

Stratification trivial_stratification(const SimplicialComplex& k) {
  return strata_from_levels(k, VertexLevelMap::trivial(k));
}

VertexLevelMap levels_of(const SimplicialComplex& k, const Stratification& s) {
  VertexLevelMap m;
  m.n = s.n();
  for (int v = 0; v < k.vertex_count(); ++v) m.level.push_back(s.dim(s.of_simplex(k.vertex_id(v))));
  return m;
}

ValidationReport validate(const SimplicialComplex& k, const Stratification& s) {
  ValidationReport report;
  auto add = [&](std::string axiom, int a, int b, int simplex, std::string detail) {
    report.violations.push_back({std::move(axiom), a, b, simplex, std::move(detail)});
  };
  if (s.assignment().size() != k.size()) {
    add("dim", -1, -1, -1, "assignment size does not match the complex");
    return report;
  }
  const int count = static_cast<int>(s.size());

  for (const auto& st : s.strata()) {
    int top = -1, witness = -1;
    for (int id : st.simplices)
      if (k.simplex_dim(id) > top) top = k.simplex_dim(id), witness = id;
    if (st.dim < 0 || st.dim > s.n())
      add("dim", st.id, -1, witness, "stratum dimension outside [0, n]");
    else if (top != st.dim)
      add("dim", st.id, -1, witness,
          "maximal simplex dimension " + std::to_string(top) + " differs from stratum dimension " +
              std::to_string(st.dim));
  }

  std::vector<std::vector<int>> faces(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) faces[i] = all_faces(k, static_cast<int>(i));

  UnionFind uf(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    for (int f : faces[i])
      if (s.of_simplex(f) == s.of_simplex(static_cast<int>(i))) uf.unite(static_cast<int>(i), f);
  for (const auto& st : s.strata()) {
    const int root = uf.find(st.simplices.front());
    for (int id : st.simplices)
      if (uf.find(id) != root) {
        add("connected", st.id, -1, id, "stratum has more than one connected component");
        break;
      }
  }

  // closure[S] = every face of every simplex of S.
  std::vector<std::vector<char>> in_closure(static_cast<std::size_t>(count), std::vector<char>(k.size(), 0));
  for (const auto& st : s.strata())
    for (int id : st.simplices)
      for (int f : faces[static_cast<std::size_t>(id)]) in_closure[static_cast<std::size_t>(st.id)][static_cast<std::size_t>(f)] = 1;

  for (const auto& target : s.strata()) {
    const auto& cl = in_closure[static_cast<std::size_t>(target.id)];
    for (const auto& q : s.strata()) {
      if (q.id == target.id) continue;
      int hit = -1, miss = -1;
      for (int id : q.simplices) {
        if (cl[static_cast<std::size_t>(id)]) {
          if (hit < 0) hit = id;
        } else if (miss < 0) {
          miss = id;
        }
      }
      if (hit < 0) continue;
      if (miss >= 0)
        add("frontier", q.id, target.id, miss,
            "stratum meets the closure of the other but is not contained in it");
      if (q.dim >= target.dim)
        add("order", q.id, target.id, hit, "stratum in the frontier of another does not have smaller dimension");
    }
  }
  return report;
}

StratumPoset::StratumPoset(const SimplicialComplex& k, const Stratification& s)
    : count_(s.size()), le_(s.size() * s.size(), 0) {
  for (std::size_t i = 0; i < count_; ++i) le_[idx(static_cast<int>(i), static_cast<int>(i))] = 1;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const int top = s.of_simplex(static_cast<int>(i));
    for (int f : all_faces(k, static_cast<int>(i))) le_[idx(s.of_simplex(f), top)] = 1;
  }
  for (std::size_t m = 0; m < count_; ++m)
    for (std::size_t a = 0; a < count_; ++a)
      if (le_[a * count_ + m])
        for (std::size_t b = 0; b < count_; ++b)
          if (le_[m * count_ + b]) le_[a * count_ + b] = 1;
}

int StratumPoset::depth(const std::vector<int>& subset) const {
  if (subset.empty()) return -1;
  // Longest path in the strict order restricted to the subset.
  std::vector<int> order = subset;
  std::vector<int> longest(order.size(), 0);
  // Repeated relaxation; the subset is small and the order is acyclic.
  bool changed = true;
  for (std::size_t round = 0; changed && round <= order.size(); ++round) {
    changed = false;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j < order.size(); ++j)
        if (lt(order[j], order[i]) && longest[j] + 1 > longest[i]) {
          longest[i] = longest[j] + 1;
          changed = true;
        }
  }
  return *std::max_element(longest.begin(), longest.end());
}

int StratumPoset::depth() const {
  std::vector<int> all(count_);
  std::iota(all.begin(), all.end(), 0);
  return depth(all);
}

std::vector<int> StratumPoset::maximal(const std::vector<int>& subset) const {
  std::vector<int> out;
  for (int a : subset) {
    bool top = true;
    for (int b : subset)
      if (lt(a, b)) top = false;
    if (top) out.push_back(a);
  }
  return out;
}

int fullness_witness(const SimplicialComplex& k, const Stratification& s) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    int level = -1;
    for (int v : k.simplex(static_cast<int>(i))) level = std::max(level, s.dim(s.of_simplex(k.vertex_id(v))));
    if (level != s.dim(s.of_simplex(static_cast<int>(i)))) return static_cast<int>(i);
  }
  return -1;
}

Subdivided barycentric_subdivide(const SimplicialComplex& k, const Stratification& s) {
  // Full flags of maximal simplices, built from codimension-one face steps.
  std::vector<std::vector<Simplex>> flags(k.size());
  for (int d = 0; d <= k.dim(); ++d)
    for (int id : k.of_dim(d)) {
      auto& mine = flags[static_cast<std::size_t>(id)];
      if (d == 0) {
        mine.push_back({id});
        continue;
      }
      for (int f : k.faces(id))
        for (const Simplex& chain : flags[static_cast<std::size_t>(f)]) {
          Simplex c = chain;
          c.push_back(id);
          mine.push_back(std::move(c));
        }
    }
  std::vector<Simplex> facets;
  for (int m : k.maximal_simplices())
    for (const Simplex& chain : flags[static_cast<std::size_t>(m)]) facets.push_back(chain);
  Subdivided out;
  out.complex = SimplicialComplex::from_facets(static_cast<int>(k.size()), std::move(facets));
  out.barycenter_of.resize(k.size());
  std::iota(out.barycenter_of.begin(), out.barycenter_of.end(), 0);
  std::vector<int> labels;
  labels.reserve(out.complex.size());
  for (const Simplex& chain : out.complex.simplices()) {
    int carrier = chain.front();
    for (int g : chain)
      if (k.simplex_dim(g) > k.simplex_dim(carrier)) carrier = g;
    out.carrier.push_back(carrier);
    labels.push_back(s.of_simplex(carrier));
  }
  out.strat = Stratification::from_labels(s.n(), labels, s.stratum_dims());
  for (const auto& st : s.strata())
    out.stratum_map.push_back(out.strat.of_simplex(out.complex.vertex_id(st.simplices.front())));
  return out;
}

}  // namespace ihom
