#pragma once

// Join-constraint augmentation of markets built on a one-to-one base, its
// projections back to the base, and lattice synthesis.

#include <map>
#include <string>
#include <vector>

#include "latmatch/constraints.hpp"
#include "latmatch/market.hpp"
#include "latmatch/realize.hpp"

namespace latmatch {

/// A join constraint over base rotation ids with the agent sets it touches.
struct RotationJoinConstraint {
  JoinConstraint constraint;
  IdSet alpha_rotations;
  IdSet beta_rotations;
  std::map<Id, IdSet> firms_of;    // alpha rotation -> firms of its minus pairs
  std::map<Id, IdSet> workers_of;  // beta rotation -> workers of its plus pairs
  IdSet alpha_firms;
  IdSet beta_workers;
};

/// Throws UnknownElementId, ArgumentsNotAntichain or OverlappingRotationAgents.
RotationJoinConstraint derive_sets(const JoinConstraint& jc, const RotationPoset& rp);

struct ExtendableMarket {
  MatchingMarket market;
  RealizedBase base;
  std::map<Id, Id> copy_map;  // regular worker -> base worker
  IdSet aux_workers;
  IdSet aux_firms;
  std::map<Id, std::vector<std::pair<Id, Id>>> a_f;  // base firm -> (base worker, aux worker)
  std::size_t augment_count = 0;
  std::vector<JoinConstraint> applied;

  bool is_base_firm(const Id& f) const;
  bool is_regular_worker(const Id& w) const { return copy_map.count(w) != 0; }
  /// Base worker w together with all of its copies.
  IdSet copies_of(const Id& base_worker) const;
};

/// The base as an extendable market of itself (no aux agents, no copies).
ExtendableMarket as_extendable(const RealizedBase& base);

/// Adds aux worker "w0#k", aux firm "f0#k" and one copy "<w>#k" per worker
/// of the beta rotations, with k = augment_count + 1.
ExtendableMarket augment(const ExtendableMarket& em, const RotationJoinConstraint& rjc);

/// Maps this step's new copies to their base workers and drops pairs with
/// this step's aux agents.
Matching project_zeta(const ExtendableMarket& before, const ExtendableMarket& after, const Matching& mu);

/// Base-firm pairs with regular workers, workers mapped to the base. Throws
/// ProjectionNotStable if the result is not stable in the base market.
Matching project_xi(const ExtendableMarket& em, const Matching& mu);

/// Folds augment over `omega` in order, starting from as_extendable(base).
ExtendableMarket omega_extend(const RealizedBase& base, const std::vector<JoinConstraint>& omega);

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<Matching> stable;     // stable matchings of the extended market
  std::vector<Matching> image;      // their base projections
  std::vector<Matching> expected;   // base stable matchings meeting every constraint
  bool ok() const;
};

VerifyReport verify_extension(const RealizedBase& base, const ExtendableMarket& em,
                              const std::vector<JoinConstraint>& omega, const EnumerateOptions& opts = {});

struct Synthesis {
  ExtendableMarket market;
  std::vector<JoinConstraint> omega;  // order constraints, then lattice constraints
  std::map<Id, Matching> iso;         // lattice element -> stable matching
  StableLattice stable;
};

/// Builds a market whose stable matchings form a lattice isomorphic to `l`.
/// Throws IsomorphismFailure if the final check does not pass.
Synthesis synthesize_from_lattice(const Lattice& l, const EnumerateOptions& opts = {});

}  // namespace latmatch
