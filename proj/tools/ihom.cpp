// Command-line front end: compute, validate, classify, decompose, verify,
// oracle, examples.
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ihom/blowup.hpp"
#include "ihom/chains.hpp"
#include "ihom/fixtures.hpp"
#include "ihom/harness.hpp"
#include "ihom/io.hpp"

using namespace ihom;

namespace {

constexpr int exit_mismatch = 1;
constexpr int exit_error = 2;

struct Config {
  std::string input;
  std::string perversity;
  std::string ring = "Z";
  std::vector<std::string> theories;
  std::string format = "json";
  std::size_t cap = default_blowup_cap;
  std::vector<std::string> expect_fail;
  bool relaxed = false;
  std::string mode = "coarsening";
  std::vector<int> primes{2};
  bool no_blowup = false;
  bool steps = false;
  bool chains = false;
  std::string out;
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

// A file holding a fixture, a refinement or a single space.
struct Input {
  enum class Kind { Space, Refinement, Fixture } kind = Kind::Space;
  SpaceData space;
  RefinementData refinement;
  Json raw;
};

Input load(const std::string& path) {
  Input in;
  in.raw = read_file(path);
  if (in.raw.contains("refinement")) {
    in.kind = Input::Kind::Fixture;
    in.refinement = refinement_from_json(in.raw.at("refinement"));
  } else if (in.raw.contains("fine")) {
    in.kind = Input::Kind::Refinement;
    in.refinement = refinement_from_json(in.raw);
  } else {
    in.space = space_from_json(in.raw);
  }
  return in;
}

const RefinementData& need_refinement(const Input& in) {
  if (in.kind == Input::Kind::Space) throw UsageError("this command needs a refinement or fixture file");
  return in.refinement;
}

void emit(const Config& cfg, const Json& j, const std::string& table) {
  if (cfg.format == "table")
    std::cout << table;
  else
    std::cout << dump(j);
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

std::string join(const Json& list) {
  std::string out;
  for (const auto& v : list) out += (out.empty() ? "" : ", ") + v.get<std::string>();
  return "{" + out + "}";
}

// compute ---------------------------------------------------------------

int run_compute(const Config& cfg) {
  const Input in = load(cfg.input);
  if (in.kind != Input::Kind::Space) throw UsageError("compute needs a space file");
  const SpaceData& sp = in.space;
  const Perversity p =
      cfg.perversity.empty() ? zero_perversity(sp.strat) : perversity_from_json(read_file(cfg.perversity), sp.strat);
  const Ring ring = Ring::parse(cfg.ring);
  std::vector<std::string> theories = cfg.theories;
  if (theories.empty()) {
    theories = {"H", "coH", "tame", "tame-coH"};
    if (ring.is_field()) theories.push_back("blowup");
  }
  if (std::find(theories.begin(), theories.end(), "blowup") != theories.end() && !ring.is_field())
    throw UsageError("blowup needs a field ring (Fq:<prime>)");
  require_full(sp.complex, sp.strat);

  Json out;
  out["ring"] = ring.to_string();
  out["perversity"] = perversity_to_json(sp.strat, p);
  Json results = Json::object();
  std::string table = "theory     ring   homology\n";
  std::optional<ChainComplexExact> ic, tc;
  for (const auto& t : theories) {
    HomologySummary h;
    if (t == "H" || t == "coH") {
      if (!ic) ic = intersection_complex(sp.complex, sp.strat, p, ring);
      h = t == "H" ? homology(*ic) : cohomology(*ic);
    } else if (t == "tame" || t == "tame-coH") {
      if (!tc) tc = tame_complex(sp.complex, sp.strat, p, ring);
      h = t == "tame" ? homology(*tc) : cohomology(*tc);
    } else if (t == "blowup") {
      h = blowup_cohomology(sp.complex, sp.strat, p, ring, cfg.cap);
    } else {
      throw UsageError("unknown theory " + t);
    }
    results[t] = homology_to_json(h, t == "blowup" ? "blowup" : "");
    table += pad(t, 11) + pad(ring.to_string(), 7) + h.to_string() + "\n";
  }
  out["homology"] = results;
  if (cfg.chains) {
    if (!ic) ic = intersection_complex(sp.complex, sp.strat, p, ring);
    if (!tc) tc = tame_complex(sp.complex, sp.strat, p, ring);
    out["chains"] = Json{{"intersection", chain_complex_to_json(*ic)}, {"tame", chain_complex_to_json(*tc)}};
  }
  emit(cfg, out, table);
  return 0;
}

// validate --------------------------------------------------------------

int run_validate(const Config& cfg) {
  const Input in = load(cfg.input);
  Json out;
  std::string table;
  bool ok = true;
  auto strat_report = [&](const std::string& label, const SimplicialComplex& k, const Stratification& s) {
    const ValidationReport r = validate(k, s);
    const int witness = fullness_witness(k, s);
    ok = ok && r.ok();
    Json j = validation_to_json(r);
    j["full"] = witness < 0;
    if (witness >= 0) j["fullness_witness"] = k.simplex(witness);
    out[label] = j;
    table += pad(label, 10) + (r.ok() ? "valid" : "INVALID") + (witness < 0 ? ", full" : ", not full") + "\n";
  };
  if (in.kind == Input::Kind::Space) {
    strat_report("space", in.space.complex, in.space.strat);
    if (!cfg.perversity.empty()) {
      perversity_from_json(read_file(cfg.perversity), in.space.strat);
      out["perversity"] = "ok";
      table += "perversity ok\n";
    }
  } else {
    const RefinementPair& r = in.refinement.pair;
    strat_report("fine", *r.complex, r.fine);
    strat_report("coarse", *r.complex, r.coarse);
    out["refinement"] = "ok";
    table += "refinement ok\n";
    if (!cfg.perversity.empty()) {
      const Perversity p = perversity_from_json(read_file(cfg.perversity), r.fine);
      const KReport k = is_K_perversity(r, p);
      out["k_check"] = k_report_to_json(k);
      table += std::string("K-perversity: ") + (k.is_k() ? "yes" : k.is_relaxed_k() ? "relaxed only" : "no") + "\n";
      for (const auto& v : k.strict) table += "  " + v.clause + " " + v.detail + "\n";
    }
  }
  out["ok"] = ok;
  emit(cfg, out, table);
  return ok ? 0 : exit_mismatch;
}

// classify / decompose ---------------------------------------------------

std::string taxonomy_table(const Json& t) {
  std::string out;
  for (const auto& [k, v] : t.items()) out += pad(k, 22) + join(v) + "\n";
  return out;
}

int run_classify(const Config& cfg) {
  const Input in = load(cfg.input);
  const RefinementData& r = need_refinement(in);
  const Json t = taxonomy_to_json(classify(r.pair), r.fine_names);
  emit(cfg, t, taxonomy_table(t));
  return 0;
}

int run_decompose(const Config& cfg) {
  const Input in = load(cfg.input);
  const RefinementData& r = need_refinement(in);
  const auto steps = simple_decomposition(r.pair);
  const Json j = decomposition_to_json(steps, r);
  std::string table = "steps: " + std::to_string(steps.size()) + "\n";
  for (const auto& step : j.at("decomposition")) {
    table += "\nstep " + std::to_string(step.at("step").get<int>()) + "\n" + taxonomy_table(step.at("taxonomy"));
    for (const auto& m : step.at("merges")) table += "merge " + join(m.at("members")) + " -> " + m.at("into").get<std::string>() + "\n";
    std::string strata;
    for (const auto& s : step.at("intermediate")) strata += (strata.empty() ? "" : ", ") + s.at("name").get<std::string>();
    table += "result {" + strata + "}\n";
  }
  emit(cfg, j, table);
  return 0;
}

// verify -----------------------------------------------------------------

std::string report_table(const InvarianceReport& r) {
  std::ostringstream os;
  os << r.instance << " [" << r.mode << (r.relaxed ? ", relaxed" : "") << (r.subdivided ? ", subdivided" : "")
     << ", " << r.level << "]\n";
  for (const auto& c : r.clauses) {
    os << "  " << pad(c.clause, 4) << pad(c.theory, 9) << pad(to_string(c.verdict), 5);
    os << pad(c.asserted ? (c.expect_fail ? "expect-fail" : "asserted") : "info", 12);
    os << pad(c.fine.to_string(), 18) << pad(c.coarse.to_string(), 18);
    if (!c.note.empty()) os << c.note;
    os << "\n";
  }
  os << "  " << (r.ok() ? "OK" : "MISMATCH") << "\n";
  return os.str();
}

int run_verify(const Config& cfg) {
  const Input in = load(cfg.input);
  const RefinementData& r = need_refinement(in);
  if (cfg.mode != "coarsening" && cfg.mode != "refinement") throw UsageError("--mode is coarsening or refinement");
  const bool coarsening = cfg.mode == "coarsening";
  const Stratification& side = coarsening ? r.pair.fine : r.pair.coarse;

  std::vector<std::pair<std::string, Perversity>> perversities;
  if (!cfg.perversity.empty()) {
    perversities.emplace_back(cfg.perversity, perversity_from_json(read_file(cfg.perversity), side));
  } else if (in.kind == Input::Kind::Fixture) {
    const Json& list = in.raw.at(coarsening ? "fine_perversities" : "coarse_perversities");
    for (const auto& [label, pj] : list.items()) perversities.emplace_back(label, perversity_from_json(pj, side));
  } else {
    perversities.emplace_back("zero", zero_perversity(side));
  }

  VerifyOptions opt;
  opt.ring = Ring::parse(cfg.ring);
  opt.field_primes = cfg.primes;
  opt.relaxed = cfg.relaxed;
  opt.blowup = !cfg.no_blowup;
  opt.cap = cfg.cap;
  for (const auto& t : cfg.expect_fail) {
    if (t != "H" && t != "coH" && t != "tame" && t != "tame-coH" && t != "blowup")
      throw UsageError("unknown theory " + t);
    opt.expect_fail.insert(t);
  }

  const std::string base = in.kind == Input::Kind::Fixture ? in.raw.at("name").get<std::string>() : cfg.input;
  Json reports = Json::array();
  std::string table;
  bool ok = true;
  for (const auto& [label, p] : perversities) {
    opt.instance = base + " " + label;
    const InvarianceReport rep = coarsening ? verify_coarsening(r.pair, p, opt) : verify_refinement(r.pair, p, opt);
    ok = ok && rep.ok();
    Json j = invariance_to_json(rep);
    table += report_table(rep);
    if (coarsening) {
      const LemmaReport lem = check_lemmas(r.pair, p);
      if (!rep.relaxed) ok = ok && lem.ok();
      j["lemmas"] = lemma_to_json(lem);
      table += std::string("  lemmas: ") + (rep.relaxed ? "not applicable (relaxed)" : lem.ok() ? "ok" : "FAILED") + "\n";
    }
    if (coarsening && cfg.steps) {
      Json steps = Json::array();
      for (const auto& s : verify_along_decomposition(r.pair, p, opt)) {
        ok = ok && s.ok();
        steps.push_back(invariance_to_json(s));
        table += report_table(s);
      }
      j["steps"] = steps;
    }
    reports.push_back(std::move(j));
  }
  emit(cfg, Json{{"ok", ok}, {"reports", reports}}, table);
  return ok ? 0 : exit_mismatch;
}

// oracle -----------------------------------------------------------------

int run_oracle(const Config& cfg) {
  Link link;
  if (std::filesystem::exists(cfg.input)) {
    const Input in = load(cfg.input);
    if (in.kind != Input::Kind::Space) throw UsageError("oracle needs a space file or a link name");
    link.complex = in.space.complex;
    link.strat = in.space.strat;
    link.p = cfg.perversity.empty() ? zero_perversity(link.strat)
                                    : perversity_from_json(read_file(cfg.perversity), link.strat);
  } else {
    link = link_by_name(cfg.input);
  }
  const OracleReport rep = oracle_local_formulas(link, standard_local_cases(), Ring::parse(cfg.ring), cfg.cap);
  std::string table;
  for (const auto& row : rep.rows)
    table += pad(row.space, 28) + pad(row.theory, 7) + pad(row.pass ? "PASS" : "FAIL", 5) +
             pad(row.computed.to_string(), 22) + row.predicted.to_string() + "\n";
  emit(cfg, oracle_to_json(rep), table);
  return rep.ok() ? 0 : exit_mismatch;
}

// examples ---------------------------------------------------------------

int run_examples(const Config& cfg) {
  Json index = Json::array();
  auto write = [&](const std::string& name, const Json& j) {
    index.push_back(name + ".json");
    if (cfg.out.empty()) return;
    std::ofstream f(std::filesystem::path(cfg.out) / (name + ".json"));
    f << dump(j);
    if (!f) throw FormatError("cannot write " + name + ".json");
  };
  if (!cfg.out.empty()) std::filesystem::create_directories(cfg.out);
  for (const auto& f : all_fixtures()) write(f.name, fixture_to_json(f));
  for (const auto& [name, link] : standard_links()) write("link-" + name, space_to_json(link.complex, link.strat));
  std::string table;
  for (const auto& n : index) table += n.get<std::string>() + "\n";
  emit(cfg, Json{{"fixtures", index}}, table);
  return 0;
}

void print_error(const std::string& kind, const std::string& message) {
  std::cout << dump(Json{{"error", kind}, {"message", message}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection homology of stratified simplicial complexes"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("input", cfg.input, "JSON file (space, refinement or fixture)")->required();
    sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--ring", cfg.ring, "Z or Fq:<prime>");
    sub->add_option("--cap", cfg.cap, "cap on the blown-up local basis size");
  };
  auto* compute = app.add_subcommand("compute", "homology tables of a space with a perversity");
  common(compute, true);
  compute->add_option("-p,--perversity", cfg.perversity, "perversity JSON (default zero)");
  compute->add_option("--theory", cfg.theories, "H, coH, tame, tame-coH, blowup")->delimiter(',');
  compute->add_flag("--chains", cfg.chains, "include the chain complexes");

  auto* validate_cmd = app.add_subcommand("validate", "stratification axioms and K-perversity check");
  common(validate_cmd, true);
  validate_cmd->add_option("-p,--perversity", cfg.perversity, "perversity JSON on the fine side");

  auto* classify_cmd = app.add_subcommand("classify", "stratum taxonomy of a refinement");
  common(classify_cmd, true);
  auto* decompose = app.add_subcommand("decompose", "simple decomposition of a refinement");
  common(decompose, true);

  auto* verify = app.add_subcommand("verify", "invariance under coarsening or refinement");
  common(verify, true);
  verify->add_option("-p,--perversity", cfg.perversity, "perversity JSON (fine side for coarsening)");
  verify->add_option("--mode", cfg.mode, "coarsening or refinement");
  verify->add_flag("--relaxed", cfg.relaxed, "accept 1-exceptional strata in refinement mode");
  verify->add_option("--expect-fail", cfg.expect_fail, "theory expected to fail");
  verify->add_option("--primes", cfg.primes, "field primes for the blown-up clause")->delimiter(',');
  verify->add_flag("--no-blowup", cfg.no_blowup, "skip the blown-up clause");
  verify->add_flag("--steps", cfg.steps, "also verify each step of the simple decomposition");

  auto* oracle = app.add_subcommand("oracle", "cone, join and suspension formulas over a link");
  common(oracle, true);
  oracle->add_option("-p,--perversity", cfg.perversity, "link perversity JSON");

  auto* examples = app.add_subcommand("examples", "write the built-in fixtures");
  common(examples, false);
  examples->add_option("--out", cfg.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return exit_error;
  }

  try {
    if (*compute) return run_compute(cfg);
    if (*validate_cmd) return run_validate(cfg);
    if (*classify_cmd) return run_classify(cfg);
    if (*decompose) return run_decompose(cfg);
    if (*verify) return run_verify(cfg);
    if (*oracle) return run_oracle(cfg);
    if (*examples) return run_examples(cfg);
  } catch (const UsageError& e) {
    print_error("usage", e.what());
  } catch (const FormatError& e) {
    print_error("format", e.what());
  } catch (const NotKPerversity& e) {
    print_error("not_k_perversity", e.what());
  } catch (const OneExceptionalPresent& e) {
    print_error("one_exceptional_present", e.what());
  } catch (const NotARefinement& e) {
    print_error("not_a_refinement", e.what());
  } catch (const NotFull& e) {
    print_error("not_full", e.what());
  } catch (const BlowupTooLarge& e) {
    print_error("blowup_too_large", e.what());
  } catch (const std::exception& e) {
    print_error("error", e.what());
  }
  return exit_error;
}
