#include "ihom/fixtures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ihom {

int NamedStratification::id(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw std::out_of_range("no stratum named " + name);
}

std::vector<std::string> NamedStratification::names_of(const std::vector<int>& ids) const {
  std::vector<std::string> out;
  for (int i : ids) out.push_back(names[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// labels[s] indexes into names/dims.
NamedStratification named(int n, const std::vector<int>& labels, const std::vector<std::string>& names,
                          const std::vector<int>& dims) {
  NamedStratification out;
  out.strat = Stratification::from_labels(n, labels, dims);
  out.names.resize(out.strat.size());
  for (const auto& st : out.strat.strata())
    out.names[static_cast<std::size_t>(st.id)] = names[static_cast<std::size_t>(labels[static_cast<std::size_t>(st.simplices.front())])];
  return out;
}

// Names singular strata by the given vertex roles and regular strata M, M2, ...
std::vector<std::string> role_names(const SimplicialComplex& k, const Stratification& s,
                                    const std::map<int, std::string>& vertex_roles) {
  std::vector<std::string> out(s.size());
  for (const auto& [v, name] : vertex_roles) out[static_cast<std::size_t>(s.of_simplex(k.vertex_id(v)))] = name;
  int regular = 0;
  for (const auto& st : s.strata())
    if (out[static_cast<std::size_t>(st.id)].empty()) {
      ++regular;
      out[static_cast<std::size_t>(st.id)] = st.regular ? (regular == 1 ? "M" : "M" + std::to_string(regular))
                                                         : "S" + std::to_string(st.id);
    }
  return out;
}

Perversity by_name(const NamedStratification& ns, const std::map<std::string, ExtInt>& values) {
  std::map<int, ExtInt> ids;
  for (const auto& [name, v] : values) ids[ns.id(name)] = v;
  return make_perversity(ns.strat, ids);
}

PairFixture make_fixture(std::string name, const std::shared_ptr<const SimplicialComplex>& k,
                         const NamedStratification& fine, const NamedStratification& coarse) {
  PairFixture f;
  f.name = std::move(name);
  f.pair = check_refinement(k, fine.strat, coarse.strat);
  f.fine_names = fine.names;
  f.coarse_names = coarse.names;
  f.fine_perversities.push_back({"zero", zero_perversity(fine.strat)});
  f.coarse_perversities.push_back({"zero", zero_perversity(coarse.strat)});
  return f;
}

NamedStratification from_levels_named(const FilteredComplex& fc, const std::map<int, std::string>& roles) {
  NamedStratification ns;
  ns.strat = strata_from_levels(fc.complex, fc.levels);
  ns.names = role_names(fc.complex, ns.strat, roles);
  return ns;
}

NamedStratification trivial_named(const SimplicialComplex& k) {
  NamedStratification ns;
  ns.strat = trivial_stratification(k);
  ns.names = role_names(k, ns.strat, {});
  return ns;
}

// Torus suspension with its poles as point strata.
FilteredComplex torus_suspension() { return suspension(minimal_torus()); }

}  // namespace

SquareExample square_example() {
  constexpr int side = 7;
  constexpr int mid = 3;
  auto vid = [](int x, int y) { return y * side + x; };
  auto is_q2 = [](int x, int y) { return x == 1 && y == 5; };
  auto is_q3 = [](int x, int y) { return x == 5 && y == 5; };
  auto singular = [&](int x, int y) { return y == mid || (x == mid && y < mid) || is_q2(x, y) || is_q3(x, y); };

  std::vector<Simplex> facets;
  for (int y = 0; y + 1 < side; ++y)
    for (int x = 0; x + 1 < side; ++x) {
      const int a = vid(x, y), b = vid(x + 1, y), c = vid(x, y + 1), d = vid(x + 1, y + 1);
      // Diagonal a-d unless it joins two singular vertices.
      if (!(singular(x, y) && singular(x + 1, y + 1))) {
        facets.push_back({a, b, d});
        facets.push_back({a, c, d});
      } else {
        if (singular(x + 1, y) && singular(x, y + 1)) throw std::logic_error("square example: no admissible diagonal");
        facets.push_back({a, b, c});
        facets.push_back({b, c, d});
      }
    }
  for (auto& f : facets) std::sort(f.begin(), f.end());
  auto k = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_facets(side * side, facets));

  enum Label { R1, R2, R3, S1, S2, S3, Q1, Q2, Q3, R4, R5, S4 };
  const std::vector<std::string> names = {"R1", "R2", "R3", "S1", "S2", "S3", "Q1", "Q2", "Q3", "R4", "R5", "S4"};
  const std::vector<int> dims = {2, 2, 2, 1, 1, 1, 0, 0, 0, 2, 2, 1};

  std::vector<int> fine(k->size());
  for (std::size_t id = 0; id < k->size(); ++id) {
    const Simplex& s = k->simplex(static_cast<int>(id));
    const int m = static_cast<int>(s.size());
    int sx = 0, sy = 0;
    bool on_line = true, on_segment = true;
    for (int v : s) {
      const int x = v % side, y = v / side;
      sx += x;
      sy += y;
      on_line = on_line && y == mid;
      on_segment = on_segment && x == mid && y <= mid;
    }
    Label l;
    if (m == 1 && sx == mid && sy == mid) l = Q1;
    else if (m == 1 && is_q2(sx, sy)) l = Q2;
    else if (m == 1 && is_q3(sx, sy)) l = Q3;
    else if (on_line) l = sx < mid * m ? S1 : S2;
    else if (on_segment) l = S3;
    else if (sy > mid * m) l = R1;
    else l = sx < mid * m ? R3 : R2;
    fine[id] = l;
  }
  auto relabel = [&](std::map<int, int> merge) {
    std::vector<int> out = fine;
    for (int& l : out)
      if (merge.count(l)) l = merge[l];
    return out;
  };
  const std::vector<int> inter = relabel({{S3, R4}, {R2, R4}, {R3, R4}});
  const std::vector<int> coarse = relabel({{S3, R4}, {R2, R4}, {R3, R4}, {R1, R5}, {Q2, R5}, {S1, S4}, {S2, S4}, {Q1, S4}});

  SquareExample ex;
  ex.complex = k;
  ex.fine = named(2, fine, names, dims);
  ex.intermediate = named(2, inter, names, dims);
  ex.coarse = named(2, coarse, names, dims);
  for (const NamedStratification* ns : {&ex.fine, &ex.intermediate, &ex.coarse})
    if (!validate(*k, ns->strat).ok()) throw std::logic_error("square example: invalid stratification");
  ex.j = check_refinement(k, ex.fine.strat, ex.intermediate.strat);
  ex.i = check_refinement(k, ex.fine.strat, ex.coarse.strat);
  ex.k = check_refinement(k, ex.intermediate.strat, ex.coarse.strat);
  return ex;
}

PairFixture identity_fixture() {
  const FilteredComplex fc = torus_suspension();
  auto k = std::make_shared<const SimplicialComplex>(fc.complex);
  const NamedStratification s = from_levels_named(fc, {{0, "s"}, {1, "n"}});
  PairFixture f = make_fixture("identity", k, s, s);
  f.fine_perversities.push_back({"top", top_perversity(s.strat)});
  f.fine_perversities.push_back({"mixed", by_name(s, {{"s", ExtInt(0)}, {"n", ExtInt(1)}})});
  f.coarse_perversities = f.fine_perversities;
  return f;
}

namespace {

PairFixture square_fixture(const std::string& name, const SquareExample& ex, const NamedStratification& fine,
                           const RefinementPair& pair) {
  PairFixture f;
  f.name = name;
  f.pair = pair;
  f.fine_names = fine.names;
  f.coarse_names = ex.coarse.names;
  f.fine_perversities.push_back({"zero", zero_perversity(fine.strat)});
  f.coarse_perversities = {{"zero", zero_perversity(ex.coarse.strat)},
                           {"top", top_perversity(ex.coarse.strat)},
                           {"mixed", by_name(ex.coarse, {{"S4", ExtInt(1)}, {"Q3", ExtInt(2)}})}};
  return f;
}

}  // namespace

PairFixture square_fixture_j() {
  const SquareExample ex = square_example();
  PairFixture f;
  f.name = "square-J";
  f.pair = ex.j;
  f.fine_names = ex.fine.names;
  f.coarse_names = ex.intermediate.names;
  f.fine_perversities.push_back({"zero", zero_perversity(ex.fine.strat)});
  f.coarse_perversities.push_back({"zero", zero_perversity(ex.intermediate.strat)});
  return f;
}

PairFixture square_fixture_i() {
  const SquareExample ex = square_example();
  PairFixture f = square_fixture("square-I", ex, ex.fine, ex.i);
  // S3 is 1-exceptional: no top perversity; only p(S3) >= 0 is allowed.
  f.fine_perversities.push_back(
      {"mixed", by_name(ex.fine, {{"S3", ExtInt(1)}, {"Q1", ExtInt(1)}, {"Q3", ExtInt(2)}})});
  return f;
}

PairFixture square_fixture_k() {
  const SquareExample ex = square_example();
  PairFixture f = square_fixture("square-K", ex, ex.intermediate, ex.k);
  f.fine_perversities.push_back({"top", top_perversity(ex.intermediate.strat)});
  f.fine_perversities.push_back(
      {"mixed", by_name(ex.intermediate, {{"Q1", ExtInt(1)}, {"Q3", ExtInt(-1)}})});
  return f;
}

PairFixture cone_point_fixture() {
  const FilteredComplex fc = cone(simplex_boundary(2), 0);
  auto k = std::make_shared<const SimplicialComplex>(fc.complex);
  const NamedStratification fine = from_levels_named(fc, {{fc.complex.vertex_count() - 1, "v"}});
  PairFixture f = make_fixture("cone-point", k, fine, trivial_named(fc.complex));
  // The apex is exceptional of codimension 2: zero is the only K-perversity,
  // and it coincides with the top perversity.
  f.fine_perversities.push_back({"top", top_perversity(fine.strat)});
  return f;
}

PairFixture equator_fixture() {
  const FilteredComplex fc = torus_suspension();
  auto k = std::make_shared<const SimplicialComplex>(fc.complex);
  const NamedStratification coarse = from_levels_named(fc, {{0, "s"}, {1, "n"}});
  constexpr int equator_vertex = 2;
  std::vector<int> labels = coarse.strat.assignment();
  std::vector<int> dims = coarse.strat.stratum_dims();
  std::vector<std::string> names = coarse.names;
  labels[static_cast<std::size_t>(fc.complex.vertex_id(equator_vertex))] = static_cast<int>(dims.size());
  dims.push_back(0);
  names.push_back("e");
  const NamedStratification fine = named(coarse.strat.n(), labels, names, dims);
  PairFixture f = make_fixture("equator", k, fine, coarse);
  f.fine_perversities.push_back({"top", top_perversity(fine.strat)});
  f.fine_perversities.push_back(
      {"mixed", by_name(fine, {{"s", ExtInt(0)}, {"n", ExtInt(1)}, {"e", ExtInt(1)}})});
  f.coarse_perversities.push_back({"top", top_perversity(coarse.strat)});
  f.coarse_perversities.push_back({"mixed", by_name(coarse, {{"s", ExtInt(0)}, {"n", ExtInt(1)}})});
  return f;
}

PairFixture join_fixture() {
  const FilteredComplex fc = join_sphere(1, simplex_boundary(2));
  auto k = std::make_shared<const SimplicialComplex>(fc.complex);
  const NamedStratification fine = from_levels_named(fc, {{0, "S"}});
  PairFixture f = make_fixture("join", k, fine, trivial_named(fc.complex));
  f.fine_perversities.push_back({"top", top_perversity(fine.strat)});
  return f;
}

PairFixture interval_fixture() {
  const FilteredComplex fc = cone(discrete_points(2), 0);
  auto k = std::make_shared<const SimplicialComplex>(fc.complex);
  const NamedStratification fine = from_levels_named(fc, {{fc.complex.vertex_count() - 1, "v"}});
  return make_fixture("interval", k, fine, trivial_named(fc.complex));
}

std::vector<PairFixture> all_fixtures() {
  return {identity_fixture(), square_fixture_j(), square_fixture_i(), square_fixture_k(),
          cone_point_fixture(), equator_fixture(), join_fixture(), interval_fixture()};
}

std::vector<std::pair<std::string, Link>> standard_links() {
  return {{"S0", trivial_link(discrete_points(2))},
          {"S1", trivial_link(simplex_boundary(2))},
          {"T2", trivial_link(minimal_torus())}};
}

Link link_by_name(const std::string& name) {
  for (auto& [n, l] : standard_links())
    if (n == name) return l;
  throw std::invalid_argument("unknown link: " + name);
}

std::vector<LocalCase> standard_local_cases() {
  std::vector<LocalCase> out;
  for (int v = -1; v <= 2; ++v) out.push_back({LocalCase::Kind::Cone, 0, ExtInt(v), ExtInt(0)});
  for (int m = 0; m <= 1; ++m)
    for (int v = 0; v <= 1; ++v) out.push_back({LocalCase::Kind::Join, m, ExtInt(v), ExtInt(0)});
  for (auto [s, n] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
    out.push_back({LocalCase::Kind::Suspension, 0, ExtInt(s), ExtInt(n)});
  return out;
}

PairFixture fixture_by_name(const std::string& name) {
  for (auto& f : all_fixtures())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace ihom
