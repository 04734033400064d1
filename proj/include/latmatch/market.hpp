#pragma once

// Two-sided matching markets whose agents use one of four data-driven
// path-independent choice-function families.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "latmatch/order.hpp"

namespace latmatch {

/// Best-first list of acceptable sets; C(T) is the first listed set inside T.
struct PreferenceList {
  std::vector<IdSet> list;
  friend bool operator==(const PreferenceList&, const PreferenceList&) = default;
};

/// gamma(T) = alpha over rotation ids, where rotation r counts as present
/// when none of f_rho[r] is offered in T.
struct GammaSpec {
  std::vector<IdSet> alpha_groups;
  std::map<Id, IdSet> f_rho;
  IdSet full_watch() const;
  friend bool operator==(const GammaSpec&, const GammaSpec&) = default;
};

/// Selects everything offered from `watch`, plus `trigger` when gamma fires.
struct Triggered {
  IdSet watch;
  Id trigger;
  GammaSpec gamma;
  friend bool operator==(const Triggered&, const Triggered&) = default;
};

/// {priority} if offered, otherwise the offered part of else_set.
struct IfElse {
  Id priority;
  IdSet else_set;
  friend bool operator==(const IfElse&, const IfElse&) = default;
};

/// Selects the offered part of the best nonempty tier, then each aux worker
/// w' of a pair (w_l, w') that is offered, as long as the selected tier is
/// not better than the tier of w_l (or no tier was hit at all).
struct Regular {
  std::vector<IdSet> tiers;
  std::vector<std::pair<Id, Id>> aux_pairs;
  friend bool operator==(const Regular&, const Regular&) = default;
};

using ChoiceSpec = std::variant<PreferenceList, Triggered, IfElse, Regular>;

const char* kind_name(const ChoiceSpec& spec);

/// Partners that can ever be chosen or affect a choice.
IdSet spec_universe(const ChoiceSpec& spec);

/// Pure evaluation; partners outside the spec universe are ignored.
IdSet choose(const ChoiceSpec& spec, const IdSet& offered);

struct MatchingMarket {
  std::vector<Id> firms;
  std::vector<Id> workers;
  std::map<Id, ChoiceSpec> choice;

  bool is_firm(const Id& id) const;
  bool is_worker(const Id& id) const;
  std::size_t agent_count() const { return firms.size() + workers.size(); }
  friend bool operator==(const MatchingMarket&, const MatchingMarket&) = default;
};

using Pair = std::pair<Id, Id>;  // (firm, worker)
using Matching = std::set<Pair>;

/// Throws InvalidMarket / UnknownPartnerId / DuplicateId.
void validate_market(const MatchingMarket& m);

/// Market-aware choice; throws UnknownPartnerId if `offered` holds an id
/// that is not an agent of the opposite side.
IdSet choose(const MatchingMarket& m, const Id& agent, const IdSet& offered);

IdSet partners(const Matching& mu, const Id& agent);

struct RationalityCheck {
  bool ok = true;
  std::optional<Id> witness;
};

RationalityCheck check_individually_rational(const MatchingMarket& m, const Matching& mu);
bool is_individually_rational(const MatchingMarket& m, const Matching& mu);
std::vector<Pair> blocking_pairs(const MatchingMarket& m, const Matching& mu);
bool is_stable(const MatchingMarket& m, const Matching& mu);

enum class Side { Firms, Workers };

struct DaOptions {
  std::size_t round_cap = 0;  // 0 means 4 * |F| * |W| (at least 16)
};

Matching deferred_acceptance(const MatchingMarket& m, Side proposing, const DaOptions& opts = {});

inline constexpr std::uint64_t kDefaultNodeBound = 1'000'000'000ULL;

struct EnumerateOptions {
  std::uint64_t node_bound = kDefaultNodeBound;
};

struct EnumerateStats {
  std::uint64_t nodes = 0;
};

/// All stable matchings in canonical order. The search walks intervals of
/// the offer-set fixed-point operator and verifies every hit with is_stable.
std::vector<Matching> enumerate_stable(const MatchingMarket& m, const EnumerateOptions& opts = {},
                                       EnumerateStats* stats = nullptr);

/// Slower independent enumerator: backtracking over workers, each taking an
/// individually rational set between its two deferred-acceptance outcomes.
/// Kept as a cross-check for the main search.
std::vector<Matching> enumerate_stable_backtracking(const MatchingMarket& m, const EnumerateOptions& opts = {},
                                                    EnumerateStats* stats = nullptr);

enum class Comparison { Greater, Less, Equal, Incomparable };
const char* to_string(Comparison c);

/// Firm-side order: mu >= nu iff every firm picks mu(f) from mu(f) u nu(f).
Comparison blair_compare(const MatchingMarket& m, const Matching& mu, const Matching& nu);
/// The same comparison read off the workers' choices (reversed).
Comparison blair_compare_workers(const MatchingMarket& m, const Matching& mu, const Matching& nu);

struct StableLattice {
  Lattice lattice;
  std::map<Id, Matching> matchings;  // lattice id -> matching
  Id id_of(const Matching& mu) const;
};

/// Ids are "m" plus a zero-padded canonical index.
std::vector<Id> matching_ids(std::size_t count);

StableLattice stable_lattice(const MatchingMarket& m, const EnumerateOptions& opts = {});
StableLattice lattice_of_matchings(const MatchingMarket& m, const std::vector<Matching>& stable);

enum class PiMode { Auto, Exhaustive, Symmetric, Sampled };

struct PiOptions {
  PiMode mode = PiMode::Auto;
  std::size_t exhaustive_limit = 16;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
};

struct PiReport {
  bool ok = true;
  std::string property;  // "substitutability" | "consistency" | "symmetry"
  IdSet set;             // S in the failing check
  Id removed;            // b with S \ {b}
  Id lost;               // for substitutability: the a that dropped out
  std::uint64_t checked = 0;
  PiMode mode_used = PiMode::Exhaustive;
};

/// Checks substitutability and consistency via single-removal steps over
/// subsets of `universe` (defaults to spec_universe). Exhaustive up to
/// `exhaustive_limit` partners; larger universes are checked exactly up to
/// the symmetry of interchangeable partners, or by sampling on request.
PiReport check_path_independence(const ChoiceSpec& spec, const std::optional<IdSet>& universe = std::nullopt,
                                 const PiOptions& opts = {});

}  // namespace latmatch
