#pragma once

// JSON file formats (all carry "v": 1 and a "kind" tag), DOT rendering of
// cover relations, and content digests.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "latmatch/antimatroid.hpp"
#include "latmatch/augment.hpp"
#include "latmatch/market.hpp"
#include "latmatch/order.hpp"
#include "latmatch/realize.hpp"

namespace latmatch::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Throws Error(Io) if the file cannot be read or is not JSON.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Two-space indented with a trailing newline; keys sorted.
std::string dump(const Json& j);

/// "kind" of a document after checking "v". Throws Error(Io).
std::string document_kind(const Json& j);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t x);

Json poset_to_json(const Poset& p, const std::string& kind = "poset");
/// "leq" pairs are generating pairs; the order is their reflexive-transitive
/// closure.
Poset poset_from_json(const Json& j);
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json matching_to_json(const Matching& mu);
Matching matching_from_json(const Json& j);
Json matchings_to_json(const std::vector<Matching>& all);
std::vector<Matching> matchings_from_json(const Json& j);

Json choice_to_json(const ChoiceSpec& spec);
ChoiceSpec choice_from_json(const Json& j);
Json market_to_json(const MatchingMarket& m);
/// Validates the market before returning it.
MatchingMarket market_from_json(const Json& j);

Json rotations_to_json(const RotationPoset& rp);
RotationPoset rotations_from_json(const Json& j);

Json constraint_to_json(const JoinConstraint& jc);
JoinConstraint constraint_from_json(const Json& j);

/// Extended market plus everything needed to project its matchings back.
struct Bundle {
  ExtendableMarket market;  // market.applied holds the constraints
  std::string source;       // "lattice" | "antimatroid" | "market"
  std::optional<Lattice> lattice;
  std::map<Id, Matching> iso;
  std::optional<PairCosts> costs;
};

Json bundle_to_json(const Bundle& b);
Bundle bundle_from_json(const Json& j);

/// {"ground": [...], "feasible": [[...]...]} or {"ground": [...], "paths":
/// [{"set": [...], "endpoint": x}...]}; either form is validated.
Json antimatroid_to_json(const Antimatroid& a);
Json path_poset_to_json(const PathPoset& pp);
PathPoset path_poset_from_json(const Json& j);
Antimatroid antimatroid_from_json(const Json& j);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// {"ground": {x: int}}.
Json ground_costs_to_json(const GroundCosts& c);
GroundCosts ground_costs_from_json(const Json& j);
/// {"pairs": [[firm, worker, numerator, denominator]...]}.
Json pair_costs_to_json(const PairCosts& c);
PairCosts pair_costs_from_json(const Json& j);

/// Cover edges drawn bottom-up. `labels` overrides node labels.
std::string to_dot(const Poset& p, const std::string& name, const std::map<Id, std::string>& labels = {});

/// Containment order on a family of sets; nodes are named by set_name.
Poset containment_poset(const std::vector<IdSet>& family);

}  // namespace latmatch::io
