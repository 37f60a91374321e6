#include "ihom/io.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace ihom {

namespace {

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw FormatError("expected an integer");
}

std::vector<std::string> default_names(const Stratification& s, const std::vector<std::string>& names) {
  if (names.size() == s.size()) return names;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(std::to_string(i));
  return out;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

Json names_json(const std::vector<int>& ids, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (int i : ids) out.push_back(names[static_cast<std::size_t>(i)]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(ExtInt v) {
  if (v.finite()) return Json(v.value());
  return Json(v.to_string());
}

ExtInt extint_from_json(const Json& j) {
  if (j.is_number_integer()) return ExtInt(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf") return ExtInt::pos_inf();
    if (s == "-inf") return ExtInt::neg_inf();
  }
  throw FormatError("expected an integer, \"+inf\" or \"-inf\"");
}

Json space_to_json(const SimplicialComplex& k, const Stratification& s, const std::vector<std::string>& names) {
  Json j;
  j["n"] = s.n();
  j["vertices"] = k.vertex_count();
  j["levels"] = levels_of(k, s).level;
  j["simplices"] = k.simplices();
  j["strata"] = s.assignment();
  j["stratum_dims"] = s.stratum_dims();
  j["stratum_names"] = default_names(s, names);
  return j;
}

SpaceData space_from_json(const Json& j) {
  SpaceData out;
  const int n = field<int>(j, "n");
  const int vertices = field<int>(j, "vertices");
  auto simplices = field<std::vector<Simplex>>(j, "simplices");
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  try {
    out.complex = SimplicialComplex::from_simplices(vertices, simplices);
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad complex: ") + e.what());
  }
  if (j.contains("strata")) {
    // Labels refer to the simplices in input order.
    const auto labels = field<std::vector<int>>(j, "strata");
    const auto dims = field<std::vector<int>>(j, "stratum_dims");
    if (labels.size() != simplices.size()) throw FormatError("\"strata\" needs one label per simplex");
    std::vector<int> canonical(out.complex.size());
    for (std::size_t i = 0; i < simplices.size(); ++i) {
      const int label = labels[i];
      if (label < 0 || static_cast<std::size_t>(label) >= dims.size()) throw FormatError("stratum label out of range");
      canonical[static_cast<std::size_t>(out.complex.id_of(simplices[i]))] = label;
    }
    out.strat = Stratification::from_labels(n, canonical, dims);
    if (j.contains("stratum_names")) {
      const auto names = field<std::vector<std::string>>(j, "stratum_names");
      if (names.size() != dims.size()) throw FormatError("\"stratum_names\" needs one name per stratum label");
      out.names.resize(out.strat.size());
      for (const auto& st : out.strat.strata())
        out.names[static_cast<std::size_t>(st.id)] =
            names[static_cast<std::size_t>(canonical[static_cast<std::size_t>(st.simplices.front())])];
    }
  } else {
    VertexLevelMap levels{n, field<std::vector<int>>(j, "levels")};
    try {
      levels.validate(out.complex);
    } catch (const std::exception& e) {
      throw FormatError(std::string("bad levels: ") + e.what());
    }
    out.strat = strata_from_levels(out.complex, levels);
  }
  const ValidationReport report = validate(out.complex, out.strat);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw FormatError("invalid stratification: " + v.axiom + " (" + v.detail + ")");
  }
  out.names = default_names(out.strat, out.names);
  return out;
}

Json refinement_to_json(const RefinementPair& r, const std::vector<std::string>& fine_names,
                        const std::vector<std::string>& coarse_names) {
  Json j;
  j["fine"] = space_to_json(*r.complex, r.fine, fine_names);
  j["coarse"] = space_to_json(*r.complex, r.coarse, coarse_names);
  return j;
}

RefinementData refinement_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("fine") || !j.contains("coarse"))
    throw FormatError("refinement needs \"fine\" and \"coarse\"");
  SpaceData fine = space_from_json(j.at("fine"));
  SpaceData coarse = space_from_json(j.at("coarse"));
  if (!(fine.complex == coarse.complex)) throw FormatError("fine and coarse sides list different complexes");
  RefinementData out;
  out.fine_names = std::move(fine.names);
  out.coarse_names = std::move(coarse.names);
  out.pair = check_refinement(std::make_shared<const SimplicialComplex>(std::move(fine.complex)),
                              std::move(fine.strat), std::move(coarse.strat));
  return out;
}

Json perversity_to_json(const Stratification& s, const Perversity& p) {
  Json values = Json::object();
  for (int id : s.singular_strata()) values[std::to_string(id)] = to_json(p(id));
  Json j;
  j["values"] = values;
  return j;
}

Perversity perversity_from_json(const Json& j, const Stratification& s) {
  if (!j.is_object() || !j.contains("values") || !j.at("values").is_object())
    throw FormatError("perversity needs a \"values\" object");
  std::map<int, ExtInt> values;
  for (const auto& [key, v] : j.at("values").items()) {
    int id = -1;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) id = -1;
    } catch (const std::exception&) {
    }
    if (id < 0 || static_cast<std::size_t>(id) >= s.size()) throw FormatError("unknown stratum id " + key);
    values[id] = extint_from_json(v);
  }
  try {
    return make_perversity(s, values);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json homology_to_json(const HomologySummary& h, const std::string& theory) {
  Json j;
  j["ring"] = h.ring.to_string();
  if (!theory.empty()) j["theory"] = theory;
  for (int k = 0; k <= h.top_nonzero(); ++k) {
    const DegreeHomology d = h.at(k);
    Json torsion = Json::array();
    for (const Int& t : d.torsion) torsion.push_back(int_json(t));
    j[std::to_string(k)] = Json{{"betti", d.betti}, {"torsion", torsion}};
  }
  return j;
}

HomologySummary homology_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("homology summary must be an object");
  HomologySummary h;
  if (j.contains("ring")) h.ring = Ring::parse(j.at("ring").get<std::string>());
  for (const auto& [key, v] : j.items()) {
    if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    const auto k = static_cast<std::size_t>(std::stoi(key));
    if (h.degrees.size() <= k) h.degrees.resize(k + 1);
    h.degrees[k].betti = field<int>(v, "betti");
    if (v.contains("torsion"))
      for (const auto& t : v.at("torsion")) h.degrees[k].torsion.push_back(int_from_json(t));
  }
  return h;
}

Json chain_complex_to_json(const ChainComplexExact& c) {
  Json j;
  j["ring"] = c.ring.to_string();
  j["dims"] = c.dims;
  Json boundary = Json::array();
  for (const auto& m : c.boundary) {
    const DenseMatrix d = m.to_dense();
    Json rows = Json::array();
    for (int r = 0; r < d.rows(); ++r) {
      Json row = Json::array();
      for (int col = 0; col < d.cols(); ++col) row.push_back(int_json(d(r, col)));
      rows.push_back(row);
    }
    boundary.push_back(rows);
  }
  j["boundary"] = boundary;
  return j;
}

Json validation_to_json(const ValidationReport& r) {
  Json list = Json::array();
  for (const auto& v : r.violations)
    list.push_back({{"axiom", v.axiom}, {"a", v.a}, {"b", v.b}, {"simplex", v.simplex}, {"detail", v.detail}});
  return Json{{"ok", r.ok()}, {"violations", list}};
}

Json k_report_to_json(const KReport& r) {
  auto list = [](const std::vector<KViolation>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back({{"clause", v.clause}, {"s", v.s}, {"q", v.q}, {"detail", v.detail}});
    return out;
  };
  return Json{{"k_perversity", r.is_k()},
              {"relaxed_k_perversity", r.is_relaxed_k()},
              {"one_exceptional", r.one_exceptional},
              {"violations", list(r.strict)},
              {"relaxed_violations", list(r.relaxed)}};
}

Json taxonomy_to_json(const StratumTaxonomy& t, const std::vector<std::string>& names) {
  std::vector<int> source_not_stable;
  for (int s : t.source)
    if (!std::binary_search(t.stable.begin(), t.stable.end(), s)) source_not_stable.push_back(s);
  std::vector<int> virtual_not_maximal;
  for (int s : t.virtual_strata)
    if (!std::binary_search(t.v_maximal.begin(), t.v_maximal.end(), s)) virtual_not_maximal.push_back(s);
  Json j;
  j["source"] = names_json(t.source, names);
  j["source_not_stable"] = names_json(source_not_stable, names);
  j["virtual"] = names_json(t.virtual_strata, names);
  j["virtual_not_maximal"] = names_json(virtual_not_maximal, names);
  j["v_maximal"] = names_json(t.v_maximal, names);
  j["stable"] = names_json(t.stable, names);
  j["exceptional"] = names_json(t.exceptional, names);
  j["one_exceptional"] = names_json(t.one_exceptional, names);
  return j;
}

std::vector<std::string> derived_names(const Stratification& s, const Stratification& a,
                                       const std::vector<std::string>& a_names, const Stratification& b,
                                       const std::vector<std::string>& b_names) {
  std::vector<std::string> out;
  for (const auto& st : s.strata()) {
    auto equal_in = [&](const Stratification& other) {
      const int id = other.of_simplex(st.simplices.front());
      return other.stratum(id).simplices == st.simplices ? id : -1;
    };
    if (const int id = equal_in(a); id >= 0) {
      out.push_back(a_names[static_cast<std::size_t>(id)]);
    } else if (const int id2 = equal_in(b); id2 >= 0) {
      out.push_back(b_names[static_cast<std::size_t>(id2)]);
    } else {
      std::vector<int> inside;
      for (int simplex : st.simplices) inside.push_back(a.of_simplex(simplex));
      std::sort(inside.begin(), inside.end());
      inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
      std::string name;
      for (int id3 : inside) name += (name.empty() ? "" : "+") + a_names[static_cast<std::size_t>(id3)];
      out.push_back(name);
    }
  }
  return out;
}

Json decomposition_to_json(const std::vector<SimpleStep>& steps, const RefinementData& r) {
  Json list = Json::array();
  std::vector<std::string> names = r.fine_names;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const SimpleStep& step = steps[i];
    const std::vector<std::string> next =
        derived_names(step.intermediate, step.first.fine, names, r.pair.coarse, r.coarse_names);
    Json merges = Json::array();
    for (const auto& m : step.merges) {
      const int into = step.first.target(m.representative);
      merges.push_back({{"members", names_json(m.members, names)},
                        {"into", next[static_cast<std::size_t>(into)]},
                        {"dim", m.dim}});
    }
    Json strata = Json::array();
    for (const auto& st : step.intermediate.strata())
      strata.push_back({{"name", next[static_cast<std::size_t>(st.id)]}, {"dim", st.dim}, {"simplices", st.simplices.size()}});
    list.push_back({{"step", i + 1},
                    {"taxonomy", taxonomy_to_json(classify(step.first), names)},
                    {"merges", merges},
                    {"measure_before", step.measure_before},
                    {"measure_after", step.measure_after},
                    {"intermediate", strata}});
    names = next;
  }
  return Json{{"steps", steps.size()}, {"decomposition", list}};
}

Json invariance_to_json(const InvarianceReport& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses) {
    Json j;
    j["clause"] = c.clause;
    j["theory"] = c.theory;
    j["verdict"] = to_string(c.verdict);
    j["asserted"] = c.asserted;
    j["expect_fail"] = c.expect_fail;
    j["matched"] = c.matched();
    if (c.witness_degree >= 0) j["witness_degree"] = c.witness_degree;
    if (!c.alias_of.empty()) j["alias_of"] = c.alias_of;
    if (!c.note.empty()) j["note"] = c.note;
    j["fine"] = homology_to_json(c.fine);
    j["coarse"] = homology_to_json(c.coarse);
    clauses.push_back(std::move(j));
  }
  Json fine_p = Json::array(), coarse_p = Json::array();
  for (const auto& v : r.fine_perversity.values) fine_p.push_back(to_json(v));
  for (const auto& v : r.coarse_perversity.values) coarse_p.push_back(to_json(v));
  return Json{{"instance", r.instance},
              {"mode", r.mode},
              {"level", r.level},
              {"relaxed", r.relaxed},
              {"subdivided", r.subdivided},
              {"fine_perversity", fine_p},
              {"coarse_perversity", coarse_p},
              {"ok", r.ok()},
              {"clauses", clauses}};
}

Json lemma_to_json(const LemmaReport& r) {
  return Json{{"ok", r.ok()}, {"checks", r.checks}, {"failures", r.failures}};
}

Json oracle_to_json(const OracleReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"space", row.space},
           {"theory", row.theory},
           {"pass", row.pass},
           {"computed", row.computed.to_string()},
           {"predicted", row.predicted.to_string()}};
    if (row.witness_degree >= 0) j["witness_degree"] = row.witness_degree;
    rows.push_back(std::move(j));
  }
  return Json{{"ok", r.ok()}, {"rows", rows}};
}

Json fixture_to_json(const PairFixture& f) {
  Json j;
  j["name"] = f.name;
  j["refinement"] = refinement_to_json(f.pair, f.fine_names, f.coarse_names);
  Json fine = Json::object(), coarse = Json::object();
  for (const auto& lp : f.fine_perversities) fine[lp.label] = perversity_to_json(f.pair.fine, lp.p);
  for (const auto& lp : f.coarse_perversities) coarse[lp.label] = perversity_to_json(f.pair.coarse, lp.p);
  j["fine_perversities"] = fine;
  j["coarse_perversities"] = coarse;
  return j;
}

}  // namespace ihom
