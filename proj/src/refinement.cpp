#include "ihom/refinement.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ihom {

namespace {

bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

// Connectedness of a union of open simplices, joining a member to each of
// its faces that is also a member.
bool connected_union(const SimplicialComplex& k, const std::vector<int>& simplices) {
  if (simplices.empty()) return true;
  std::map<int, int> parent;
  for (int s : simplices) parent[s] = s;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s : simplices) {
    std::set<int> visited{s};
    std::vector<int> down{s};
    while (!down.empty()) {
      const int d = down.back();
      down.pop_back();
      for (int f : k.faces(d)) {
        if (!visited.insert(f).second) continue;
        down.push_back(f);
        if (parent.count(f)) parent[find(f)] = find(s);
      }
    }
  }
  const int root = find(simplices.front());
  for (int s : simplices)
    if (find(s) != root) return false;
  return true;
}

int max_virtual_dim(const RefinementPair& r) {
  int best = -1;
  for (const auto& st : r.fine.strata())
    if (st.dim < r.coarse.dim(r.target(st.id))) best = std::max(best, st.dim);
  return best;
}

}  // namespace

RefinementPair check_refinement(std::shared_ptr<const SimplicialComplex> k, Stratification fine,
                                Stratification coarse) {
  if (fine.n() != coarse.n()) throw NotARefinement("formal dimensions differ", -1, -1);
  if (fine.assignment().size() != k->size() || coarse.assignment().size() != k->size())
    throw NotARefinement("stratification does not cover the complex", -1, -1);
  RefinementPair r;
  r.map.assign(fine.size(), -1);
  for (const auto& st : fine.strata()) {
    const int target = coarse.of_simplex(st.simplices.front());
    for (int id : st.simplices)
      if (coarse.of_simplex(id) != target)
        throw NotARefinement("fine stratum " + std::to_string(st.id) + " meets two coarse strata", id, st.id);
    if (st.dim > coarse.dim(target))
      throw NotARefinement("fine stratum " + std::to_string(st.id) + " has dimension above its coarse stratum",
                           st.simplices.front(), st.id);
    r.map[static_cast<std::size_t>(st.id)] = target;
  }
  auto fine_order = std::make_shared<StratumPoset>(*k, fine);
  auto coarse_order = std::make_shared<StratumPoset>(*k, coarse);
  for (std::size_t a = 0; a < fine.size(); ++a)
    for (std::size_t b = 0; b < fine.size(); ++b)
      if (fine_order->le(static_cast<int>(a), static_cast<int>(b)) &&
          !coarse_order->le(r.map[a], r.map[b]))
        throw NotARefinement("stratum map does not preserve the order", fine.stratum(static_cast<int>(a)).simplices.front(),
                             static_cast<int>(a));
  r.complex = std::move(k);
  r.fine = std::move(fine);
  r.coarse = std::move(coarse);
  r.fine_order = std::move(fine_order);
  r.coarse_order = std::move(coarse_order);
  return r;
}

StratumTaxonomy classify(const RefinementPair& r) {
  StratumTaxonomy t;
  for (const auto& st : r.fine.strata()) {
    const int target = r.target(st.id);
    if (st.dim == r.coarse.dim(target))
      t.source.push_back(st.id);
    else
      t.virtual_strata.push_back(st.id);
    if (!st.regular && r.coarse.regular(target)) {
      t.exceptional.push_back(st.id);
      if (r.fine.codim(st.id) == 1) t.one_exceptional.push_back(st.id);
    }
  }
  const int top = max_virtual_dim(r);
  for (int v : t.virtual_strata)
    if (r.fine.dim(v) == top) t.v_maximal.push_back(v);
  for (int s : t.source)
    for (int m : t.v_maximal)
      if (r.target(m) == r.target(s) && r.fine_order->le(m, s)) {
        t.stable.push_back(s);
        break;
      }
  return t;
}

MergedPiece merged_piece(const RefinementPair& r, int m) {
  const StratumTaxonomy t = classify(r);
  if (!contains(t.v_maximal, m)) throw std::invalid_argument("stratum is not v-maximal");
  MergedPiece piece;
  piece.target = r.target(m);
  piece.dim = r.coarse.dim(piece.target);
  std::vector<int> simplices;
  for (const auto& st : r.fine.strata()) {
    if (r.target(st.id) != piece.target) continue;
    if (!contains(t.stable, st.id) && !contains(t.v_maximal, st.id)) continue;
    piece.members.push_back(st.id);
    simplices.insert(simplices.end(), st.simplices.begin(), st.simplices.end());
  }
  piece.representative = piece.members.front();
  std::sort(simplices.begin(), simplices.end());
  int top = -1;
  for (int id : simplices) top = std::max(top, r.complex->simplex_dim(id));
  if (top != piece.dim) throw std::logic_error("merged piece does not reach the dimension of its target");
  if (!connected_union(*r.complex, simplices)) throw std::logic_error("merged piece is disconnected");
  return piece;
}

SimpleStep simple_step(const RefinementPair& r) {
  if (r.equal()) throw AlreadyEqual();
  const StratumTaxonomy t = classify(r);
  if (t.v_maximal.empty()) throw std::logic_error("refinement without virtual strata but with unequal partitions");

  SimpleStep step;
  std::map<int, int> class_of_target;  // coarse target -> index into merges
  for (int m : t.v_maximal) {
    if (class_of_target.count(r.target(m))) continue;
    class_of_target.emplace(r.target(m), static_cast<int>(step.merges.size()));
    step.merges.push_back(merged_piece(r, m));
  }

  const int fine_count = static_cast<int>(r.fine.size());
  std::vector<int> dims = r.fine.stratum_dims();
  std::vector<int> relabel(r.fine.size());
  std::iota(relabel.begin(), relabel.end(), 0);
  for (std::size_t c = 0; c < step.merges.size(); ++c) {
    dims.push_back(step.merges[c].dim);
    for (int member : step.merges[c].members) relabel[static_cast<std::size_t>(member)] = fine_count + static_cast<int>(c);
  }
  std::vector<int> labels;
  labels.reserve(r.complex->size());
  for (int s : r.fine.assignment()) labels.push_back(relabel[static_cast<std::size_t>(s)]);
  step.intermediate = Stratification::from_labels(r.fine.n(), labels, dims);

  const ValidationReport report = validate(*r.complex, step.intermediate);
  if (!report.ok())
    throw std::logic_error("intermediate stratification violates " + report.violations.front().axiom + ": " +
                           report.violations.front().detail);
  step.first = check_refinement(r.complex, r.fine, step.intermediate);
  step.second = check_refinement(r.complex, step.intermediate, r.coarse);

  const StratumTaxonomy first = classify(step.first);
  if (first.virtual_strata != t.v_maximal) throw std::logic_error("first step has unexpected virtual strata");
  if (step.first.fine_order->depth(first.virtual_strata) != 0) throw std::logic_error("first step is not simple");
  step.measure_before = max_virtual_dim(r);
  step.measure_after = max_virtual_dim(step.second);
  if (step.measure_after >= step.measure_before) throw std::logic_error("decomposition measure did not decrease");
  return step;
}

std::vector<SimpleStep> simple_decomposition(const RefinementPair& r) {
  std::vector<SimpleStep> steps;
  RefinementPair current = r;
  while (!current.equal()) {
    steps.push_back(simple_step(current));
    current = steps.back().second;
  }
  return steps;
}

SourceLemmaReport check_source_lemmas(const RefinementPair& r) {
  SourceLemmaReport rep;
  const StratumTaxonomy t = classify(r);
  for (const auto& st : r.fine.strata()) {
    bool found = false;
    for (int p : t.source)
      if (r.target(p) == r.target(st.id) && r.fine_order->le(st.id, p)) found = true;
    if (!found) rep.missing_source.push_back(st.id);
  }
  for (std::size_t a = 0; a < r.coarse.size(); ++a)
    for (std::size_t b = 0; b < r.coarse.size(); ++b) {
      if (!r.coarse_order->le(static_cast<int>(a), static_cast<int>(b))) continue;
      bool found = false;
      for (int ra : t.source) {
        if (r.target(ra) != static_cast<int>(a)) continue;
        for (int qb : t.source)
          if (r.target(qb) == static_cast<int>(b) && r.fine_order->le(ra, qb)) found = true;
      }
      if (!found) rep.missing_source_pair.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return rep;
}

}  // namespace ihom
