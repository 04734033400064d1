#pragma once

// Join constraints "alpha(T) => beta(T)" over a representation poset, and
// their De Morgan duals.

#include <vector>

#include "latmatch/order.hpp"

namespace latmatch {

/// alpha: conjunction over groups of the disjunction inside each group.
/// beta: conjunction over its ids.
struct JoinConstraint {
  std::vector<IdSet> alpha_groups;
  IdSet beta;

  /// Sorts and dedups groups so that structural equality is meaningful.
  JoinConstraint& canonicalize();
  IdSet alpha_ids() const;

  friend auto operator<=>(const JoinConstraint&, const JoinConstraint&) = default;
};

/// beta_c: disjunction over its ids. alpha_c: disjunction over groups of the
/// conjunction inside each group.
struct ComplementJoinConstraint {
  IdSet beta_c;
  std::vector<IdSet> alpha_c_groups;

  ComplementJoinConstraint& canonicalize();

  friend auto operator<=>(const ComplementJoinConstraint&, const ComplementJoinConstraint&) = default;
};

struct JoinEval {
  bool alpha = false;
  bool beta = false;
  bool satisfied = true;
};

/// Conjunction of disjunctions; the empty conjunction is 1, an empty group is 0.
bool eval_cnf(const std::vector<IdSet>& groups, const IdSet& t);
/// Disjunction of conjunctions; the empty disjunction is 0, an empty group is 1.
bool eval_dnf(const std::vector<IdSet>& groups, const IdSet& t);

/// Throws UnknownElementId if an argument is not in `rep` (when given).
JoinEval eval_join_constraint(const JoinConstraint& jc, const IdSet& t, const Poset* rep = nullptr);

/// Throws UnknownElementId, or AlphaArgumentsComparable with the offending pair.
void validate_join_constraint(const JoinConstraint& jc, const Poset& rep);

/// One constraint per ordered pair of elements (bottom/bottom skipped), with
/// singleton alpha groups, deduplicated and canonically ordered. Ids are
/// join-irreducibles of `l`.
std::vector<JoinConstraint> constraints_from_lattice(const Lattice& l);

std::vector<IdSet> filter_lower_sets(const std::vector<IdSet>& family, const std::vector<JoinConstraint>& omega);

ComplementJoinConstraint complement(const JoinConstraint& jc);
JoinConstraint uncomplement(const ComplementJoinConstraint& cjc);

bool satisfies_complement(const IdSet& t, const ComplementJoinConstraint& cjc);

}  // namespace latmatch
