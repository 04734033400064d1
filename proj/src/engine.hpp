#pragma once

// Compiled form of a market: agents and acceptable pairs are indexed, choice
// functions run on bitsets. Internal to the library.

#include <map>
#include <vector>

#include "latmatch/bitset.hpp"
#include "latmatch/market.hpp"

namespace latmatch::detail {

/// A choice function over local partner indices 0..n-1.
class CompiledChoice {
 public:
  CompiledChoice() = default;
  /// `universe` must be sorted and contain spec_universe(spec).
  CompiledChoice(const ChoiceSpec& spec, const std::vector<Id>& universe);

  std::size_t size() const { return n_; }
  Bitset choose(const Bitset& offered) const;

 private:
  enum class Kind { List, Triggered, IfElse, Regular };
  Kind kind_ = Kind::List;
  std::size_t n_ = 0;
  std::vector<Bitset> sets_;  // list entries, tiers, or the f_rho masks
  Bitset mask_;               // watch / else set
  std::size_t single_ = 0;    // trigger / priority
  std::vector<std::vector<std::size_t>> groups_;  // gamma CNF over f_rho indices
  std::vector<std::pair<std::size_t, std::size_t>> aux_;  // (tier of w_l, local w')
};

class Engine {
 public:
  explicit Engine(const MatchingMarket& m);

  std::size_t firm_count() const { return nf_; }
  std::size_t agent_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool is_firm(std::size_t a) const { return a < nf_; }
  const Id& id(std::size_t a) const { return ids_[a]; }
  std::size_t index(const Id& id) const { return index_.at(id); }

  /// Edges of `x` chosen by agent `a` from the edges of `x` incident to it.
  Bitset choose(std::size_t a, const Bitset& x) const;
  /// Union of the choices of all agents on one side.
  Bitset choose_side(bool firms, const Bitset& x) const;
  /// Incident edges of an agent.
  const Bitset& incident(std::size_t a) const { return incident_[a]; }
  Bitset all_edges() const;

  /// Offer-set operator: X_F -> E \ R_W(E \ R_F(X_F)). Monotone for
  /// substitutable markets; its fixed points yield the stable matchings.
  Bitset phi(const Bitset& xf) const;

  Matching to_matching(const Bitset& x) const;
  /// Nullopt if some pair is not an acceptable edge.
  std::optional<Bitset> from_matching(const Matching& mu) const;

 private:
  struct Agent {
    std::vector<std::size_t> local_edge;  // local partner -> edge index (or npos)
    std::vector<std::size_t> edge_local;  // incident edges, by local index order
    CompiledChoice choice;
  };

  std::size_t nf_ = 0;
  std::vector<Id> ids_;
  std::map<Id, std::size_t> index_;
  std::vector<Agent> agents_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Bitset> incident_;
};

}  // namespace latmatch::detail
