#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "ihom/chains.hpp"
#include "ihom/fixtures.hpp"
#include "ihom/harness.hpp"
#include "ihom/homalg.hpp"
#include "ihom/perversity.hpp"
#include "ihom/refinement.hpp"
#include "ihom/strat.hpp"

namespace ihom {

// Insertion-ordered, so that output is byte-identical run to run.
using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Two-space indented text with a trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);  // FormatError on malformed text

Json to_json(ExtInt v);
ExtInt extint_from_json(const Json& j);

// Space format:
//   {"n", "vertices", "levels", "simplices", "strata", "stratum_dims", "stratum_names"}
// "strata" (one stratum label per simplex) and "stratum_dims" are optional;
// without them the stratification is read off the levels.
struct SpaceData {
  SimplicialComplex complex;
  Stratification strat;
  std::vector<std::string> names;  // per stratum id
};

Json space_to_json(const SimplicialComplex& k, const Stratification& s, const std::vector<std::string>& names = {});
SpaceData space_from_json(const Json& j);

// {"fine": space, "coarse": space}; both sides must list the same complex.
struct RefinementData {
  RefinementPair pair;
  std::vector<std::string> fine_names;
  std::vector<std::string> coarse_names;
};

Json refinement_to_json(const RefinementPair& r, const std::vector<std::string>& fine_names = {},
                        const std::vector<std::string>& coarse_names = {});
RefinementData refinement_from_json(const Json& j);

// {"values": {"<stratum id>": int | "+inf" | "-inf"}} over singular strata.
Json perversity_to_json(const Stratification& s, const Perversity& p);
Perversity perversity_from_json(const Json& j, const Stratification& s);

// {"<k>": {"betti", "torsion"}}, with "ring" and optional "theory" tags.
Json homology_to_json(const HomologySummary& h, const std::string& theory = "");
HomologySummary homology_from_json(const Json& j);

// {"ring", "dims", "boundary": [row-major dense matrices]}.
Json chain_complex_to_json(const ChainComplexExact& c);

Json validation_to_json(const ValidationReport& r);
Json k_report_to_json(const KReport& r);
Json taxonomy_to_json(const StratumTaxonomy& t, const std::vector<std::string>& fine_names);
Json decomposition_to_json(const std::vector<SimpleStep>& steps, const RefinementData& r);
Json invariance_to_json(const InvarianceReport& r);
Json lemma_to_json(const LemmaReport& r);
Json oracle_to_json(const OracleReport& r);
Json fixture_to_json(const PairFixture& f);

// Names for the strata of s: the name of an equal stratum of a or b when
// there is one, otherwise the names of the strata of a inside it, joined by '+'.
std::vector<std::string> derived_names(const Stratification& s, const Stratification& a,
                                       const std::vector<std::string>& a_names, const Stratification& b,
                                       const std::vector<std::string>& b_names);

}  // namespace ihom
