#include "ihom/blowup.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "ihom/chains.hpp"

namespace ihom {

namespace {

int degree_below(const BlownUpElement& e, int i) {
  int d = 0;
  for (int j = 0; j < i; ++j) d += static_cast<int>(e.faces[static_cast<std::size_t>(j)].size()) - 1 + e.eps[static_cast<std::size_t>(j)];
  return d;
}

int parity_sign(int x) { return x % 2 == 0 ? 1 : -1; }

// Sign of adding vertex v to factor i (the apex of a cone factor comes last).
int add_sign(const BlownUpElement& e, int i, int v) {
  const Simplex& f = e.faces[static_cast<std::size_t>(i)];
  const int before = static_cast<int>(std::lower_bound(f.begin(), f.end(), v) - f.begin());
  return parity_sign(degree_below(e, i)) * parity_sign(before);
}

int flip_sign(const BlownUpElement& e, int i) {
  return parity_sign(degree_below(e, i)) * parity_sign(static_cast<int>(e.faces[static_cast<std::size_t>(i)].size()));
}

BlownUpElement with_vertex(BlownUpElement e, int i, int v) {
  Simplex& f = e.faces[static_cast<std::size_t>(i)];
  f.insert(std::lower_bound(f.begin(), f.end(), v), v);
  return e;
}

std::vector<Simplex> subsets(const Simplex& s) {
  std::vector<Simplex> out;
  const std::size_t count = std::size_t{1} << s.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Simplex f;
    for (std::size_t b = 0; b < s.size(); ++b)
      if (mask >> b & 1) f.push_back(s[b]);
    out.push_back(std::move(f));
  }
  return out;
}

auto element_key(const BlownUpElement& e) { return std::tie(e.faces, e.eps); }

std::vector<Simplex> pieces_of(const Simplex& simplex, const VertexLevelMap& levels) {
  std::vector<Simplex> pieces(static_cast<std::size_t>(levels.n + 1));
  for (int v : simplex) pieces[static_cast<std::size_t>(levels.level[static_cast<std::size_t>(v)])].push_back(v);
  return pieces;
}

}  // namespace

int BlownUpElement::degree() const {
  const int n = static_cast<int>(eps.size());
  return degree_below(*this, n) + static_cast<int>(faces[static_cast<std::size_t>(n)].size()) - 1;
}

ExtInt BlownUpElement::perverse_degree(int ell) const {
  const int n = static_cast<int>(eps.size());
  if (ell < 1 || ell > n) throw std::out_of_range("perverse degree index outside 1..n");
  const int idx = n - ell;
  if (eps[static_cast<std::size_t>(idx)] == 1) return ExtInt::neg_inf();
  return ExtInt(degree() - degree_below(*this, idx + 1));
}

std::size_t local_basis_size(const std::vector<Simplex>& pieces) {
  if (pieces.empty() || pieces.back().empty()) throw std::invalid_argument("local model needs a nonempty top piece");
  std::size_t size = (std::size_t{1} << pieces.back().size()) - 1;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) size *= (std::size_t{1} << (pieces[i].size() + 1)) - 1;
  return size;
}

LocalBlowup local_blowup(const std::vector<Simplex>& pieces) {
  if (pieces.empty() || pieces.back().empty()) throw std::invalid_argument("local model needs a regular simplex");
  const int n = static_cast<int>(pieces.size()) - 1;
  LocalBlowup out;
  out.n = n;
  std::vector<BlownUpElement> partial{BlownUpElement{}};
  for (int i = 0; i <= n; ++i) {
    std::vector<BlownUpElement> next;
    for (const auto& e : partial)
      for (const Simplex& f : subsets(pieces[static_cast<std::size_t>(i)])) {
        if (i == n) {
          if (f.empty()) continue;
          BlownUpElement x = e;
          x.faces.push_back(f);
          next.push_back(std::move(x));
          continue;
        }
        for (int eps = 0; eps <= 1; ++eps) {
          if (f.empty() && eps == 0) continue;
          BlownUpElement x = e;
          x.faces.push_back(f);
          x.eps.push_back(eps);
          next.push_back(std::move(x));
        }
      }
    partial = std::move(next);
  }
  std::sort(partial.begin(), partial.end(), [](const BlownUpElement& a, const BlownUpElement& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return element_key(a) < element_key(b);
  });
  out.basis = std::move(partial);
  std::map<std::pair<std::vector<Simplex>, std::vector<int>>, int> index;
  for (std::size_t j = 0; j < out.basis.size(); ++j) index.emplace(std::make_pair(out.basis[j].faces, out.basis[j].eps), static_cast<int>(j));

  const int size = static_cast<int>(out.basis.size());
  out.differential = SparseMatrix::zero(size, size);
  for (int j = 0; j < size; ++j) {
    const BlownUpElement& e = out.basis[static_cast<std::size_t>(j)];
    std::map<int, Int> col;
    for (int i = 0; i <= n; ++i) {
      const Simplex& f = e.faces[static_cast<std::size_t>(i)];
      for (int v : pieces[static_cast<std::size_t>(i)]) {
        if (std::binary_search(f.begin(), f.end(), v)) continue;
        const BlownUpElement t = with_vertex(e, i, v);
        col[index.at({t.faces, t.eps})] += add_sign(e, i, v);
      }
      if (i < n && e.eps[static_cast<std::size_t>(i)] == 0) {
        BlownUpElement t = e;
        t.eps[static_cast<std::size_t>(i)] = 1;
        col[index.at({t.faces, t.eps})] += flip_sign(e, i);
      }
    }
    for (auto& [r, v] : col)
      if (v != 0) out.differential.columns[static_cast<std::size_t>(j)].emplace_back(r, std::move(v));
  }
  return out;
}

LocalBlowup local_blowup(const SimplicialComplex& k, const Stratification& s, int simplex) {
  require_full(k, s);
  return local_blowup(pieces_of(k.simplex(simplex), levels_of(k, s)));
}

BlowupCochains blowup_cochains(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                               const Ring& ring, std::size_t cap) {
  if (!ring.is_field()) throw std::invalid_argument("blown-up cohomology needs field coefficients");
  check_perversity(s, p);
  const FilteredComplexView view(k, s);
  const VertexLevelMap levels = levels_of(k, s);
  const int n = s.n();

  BlowupCochains c;
  c.ring = ring;
  c.n = n;
  for (int m : k.maximal_simplices())
    if (view.regular(m)) {
      c.local_total += local_basis_size(pieces_of(k.simplex(m), levels));
      if (c.local_total > cap) throw BlowupTooLarge(c.local_total, cap);
    }

  // Strata meeting some simplex that contains F.
  std::vector<std::vector<int>> star_meets(k.size());
  for (int d = k.dim(); d >= 0; --d)
    for (int id : k.of_dim(d)) {
      std::vector<int> m = view.strata_meeting(id);
      for (int g : k.cofaces(id)) {
        const auto& gm = star_meets[static_cast<std::size_t>(g)];
        m.insert(m.end(), gm.begin(), gm.end());
      }
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      star_meets[static_cast<std::size_t>(id)] = std::move(m);
    }

  struct Raw {
    int degree;
    int face;
    unsigned mask;
  };
  std::vector<Raw> raw;
  for (std::size_t id = 0; id < k.size(); ++id) {
    if (!view.regular(static_cast<int>(id))) continue;
    const auto pieces = pieces_of(k.simplex(static_cast<int>(id)), levels);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      bool ok = true;
      int deg = static_cast<int>(pieces[static_cast<std::size_t>(n)].size()) - 1;
      for (int i = 0; i < n; ++i) {
        const int e = static_cast<int>(mask >> i & 1u);
        if (pieces[static_cast<std::size_t>(i)].empty() && e == 0) ok = false;
        deg += static_cast<int>(pieces[static_cast<std::size_t>(i)].size()) - 1 + e;
      }
      if (ok) raw.push_back({deg, static_cast<int>(id), mask});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
    return std::tie(a.degree, a.face, a.mask) < std::tie(b.degree, b.face, b.mask);
  });
  std::unordered_map<long long, int> index;
  const auto key = [n](int face, unsigned mask) { return (static_cast<long long>(face) << n) | mask; };
  for (const Raw& r : raw) {
    BlownUpElement e;
    e.faces = pieces_of(k.simplex(r.face), levels);
    for (int i = 0; i < n; ++i) e.eps.push_back(static_cast<int>(r.mask >> i & 1u));
    index.emplace(key(r.face, r.mask), static_cast<int>(c.elements.size()));
    c.face.push_back(r.face);
    c.degree.push_back(r.degree);
    bool allowable = true;
    for (int st : star_meets[static_cast<std::size_t>(r.face)]) {
      if (s.regular(st)) continue;
      if (e.perverse_degree(s.codim(st)) > p(st)) allowable = false;
    }
    c.allowable.push_back(allowable);
    c.elements.push_back(std::move(e));
  }

  const int total = static_cast<int>(c.elements.size());
  c.differential = SparseMatrix::zero(total, total);
  for (int j = 0; j < total; ++j) {
    const BlownUpElement& e = c.elements[static_cast<std::size_t>(j)];
    const int face = c.face[static_cast<std::size_t>(j)];
    unsigned mask = 0;
    for (int i = 0; i < n; ++i) mask |= static_cast<unsigned>(e.eps[static_cast<std::size_t>(i)]) << i;
    std::vector<std::pair<int, Int>> col;
    for (int i = 0; i < n; ++i)
      if (e.eps[static_cast<std::size_t>(i)] == 0)
        col.emplace_back(index.at(key(face, mask | 1u << i)), flip_sign(e, i));
    const Simplex& fs = k.simplex(face);
    for (int g : k.cofaces(face)) {
      const Simplex& gs = k.simplex(g);
      int v = gs.back();
      for (std::size_t t = 0; t < fs.size(); ++t)
        if (fs[t] != gs[t]) {
          v = gs[t];
          break;
        }
      col.emplace_back(index.at(key(g, mask)), add_sign(e, levels.level[static_cast<std::size_t>(v)], v));
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    c.differential.columns[static_cast<std::size_t>(j)] = std::move(col);
  }
  if (!(c.differential * c.differential).is_zero()) throw std::logic_error("blown-up differential does not square to zero");

  const int top = raw.empty() ? -1 : raw.back().degree;
  c.generators.resize(static_cast<std::size_t>(top + 1));
  for (int d = 0; d <= top; ++d) {
    std::vector<int> candidates;
    std::vector<std::vector<std::pair<int, int>>> forbidden;
    for (int j = 0; j < total; ++j) {
      if (c.degree[static_cast<std::size_t>(j)] != d || !c.allowable[static_cast<std::size_t>(j)]) continue;
      candidates.push_back(j);
      forbidden.emplace_back();
      for (const auto& [r, v] : c.differential.columns[static_cast<std::size_t>(j)])
        if (!c.allowable[static_cast<std::size_t>(r)]) forbidden.back().emplace_back(r, static_cast<int>(v.get_si()));
    }
    c.generators[static_cast<std::size_t>(d)] = constrained_kernel(candidates, forbidden, ring);
  }
  return c;
}

HomologySummary blowup_cohomology(const BlowupCochains& c) {
  const int top = static_cast<int>(c.generators.size()) - 1;
  std::vector<int> rank(static_cast<std::size_t>(top + 1), 0);
  const int total = static_cast<int>(c.elements.size());
  for (int d = 0; d <= top; ++d) {
    const auto& gens = c.generators[static_cast<std::size_t>(d)];
    SparseMatrix image = SparseMatrix::zero(total, static_cast<int>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::map<int, Int> acc;
      for (const auto& [e, coef] : gens[j])
        for (const auto& [r, v] : c.differential.columns[static_cast<std::size_t>(e)]) acc[r] += coef * v;
      for (auto& [r, v] : acc)
        if (v != 0) image.columns[j].emplace_back(r, std::move(v));
    }
    rank[static_cast<std::size_t>(d)] = rank_mod(image, c.ring.q);
  }
  HomologySummary h;
  h.ring = c.ring;
  for (int d = 0; d <= top; ++d) {
    DegreeHomology x;
    x.betti = static_cast<int>(c.generators[static_cast<std::size_t>(d)].size()) - rank[static_cast<std::size_t>(d)] -
              (d > 0 ? rank[static_cast<std::size_t>(d - 1)] : 0);
    h.degrees.push_back(x);
  }
  return h;
}

HomologySummary blowup_cohomology(const SimplicialComplex& k, const Stratification& s, const Perversity& p,
                                  const Ring& ring, std::size_t cap) {
  return blowup_cohomology(blowup_cochains(k, s, p, ring, cap));
}

}  // namespace ihom
