#pragma once

// Finite posets and lattices over opaque string ids.
//
// Elements are always stored in lexicographic id order; every canonical
// ordering in the library derives from that.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latmatch/error.hpp"

namespace latmatch {

using Id = std::string;
using IdSet = std::set<Id>;

/// Orders id sets by cardinality, then lexicographically.
struct BySizeThenLex {
  bool operator()(const IdSet& a, const IdSet& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class Poset {
 public:
  Poset() = default;

  /// Builds a poset without validation. `leq` is row-major over `elements`,
  /// which must already be sorted and unique. Use validate_poset() for
  /// untrusted input.
  Poset(std::vector<Id> elements, std::vector<char> leq);

  /// The trivial order (identity relation) on `ids`.
  static Poset trivial(std::vector<Id> ids);

  /// Reflexive-transitive closure of `pairs`, then validated.
  static Poset from_pairs(std::vector<Id> ids, const std::vector<std::pair<Id, Id>>& pairs);

  std::size_t size() const { return elements_.size(); }
  const std::vector<Id>& elements() const { return elements_; }
  const Id& element(std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> find(const Id& id) const;
  std::size_t index(const Id& id) const;  // throws UnknownElement
  bool contains(const Id& id) const { return find(id).has_value(); }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
  bool lt(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  bool leq(const Id& x, const Id& y) const { return leq(index(x), index(y)); }
  bool lt(const Id& x, const Id& y) const { return lt(index(x), index(y)); }
  bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }

  /// Cover pairs (lower, upper) in canonical order.
  std::vector<std::pair<Id, Id>> covers() const;
  std::vector<std::pair<std::size_t, std::size_t>> cover_indices() const;

  bool is_lower_set(const IdSet& s) const;
  IdSet down_closure(const IdSet& s) const;
  Poset restrict_to(const IdSet& subset) const;

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  std::vector<Id> elements_;
  std::vector<char> leq_;
};

/// Validates a boolean relation over `elements` (row i, column j means
/// elements[i] <= elements[j]). Throws NotReflexive / NotAntisymmetric /
/// NotTransitive with witness ids.
Poset validate_poset(const std::vector<Id>& elements, const std::vector<std::vector<bool>>& relation);

class Lattice {
 public:
  Lattice() = default;
  Lattice(Poset order, std::vector<std::size_t> join, std::vector<std::size_t> meet);

  const Poset& order() const { return order_; }
  std::size_t size() const { return order_.size(); }
  const std::vector<Id>& elements() const { return order_.elements(); }

  std::size_t join(std::size_t i, std::size_t j) const { return join_[i * size() + j]; }
  std::size_t meet(std::size_t i, std::size_t j) const { return meet_[i * size() + j]; }
  const Id& join(const Id& x, const Id& y) const;
  const Id& meet(const Id& x, const Id& y) const;

  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  /// Join of a set; the join of the empty set is the bottom.
  Id join_all(const IdSet& s) const;
  Id meet_all(const IdSet& s) const;

 private:
  Poset order_;
  std::vector<std::size_t> join_;
  std::vector<std::size_t> meet_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
};

/// Computes join/meet tables by enumerating bounds. Throws NotALattice with
/// the failing pair followed by the minimal upper (or maximal lower) bounds.
Lattice lattice_from_order(const Poset& p);

/// Builds a lattice from join/meet tables given as ids, derives the order from
/// the join table and cross-checks it against the meet table and against the
/// recomputed tables.
Lattice lattice_from_tables(const std::vector<Id>& elements,
                            const std::vector<std::vector<Id>>& join,
                            const std::vector<std::vector<Id>>& meet);

struct JoinIrreducibles {
  IdSet members;
  Poset order;  // induced from the lattice
};

JoinIrreducibles join_irreducibles(const Lattice& l);

inline constexpr std::size_t kDefaultElementBound = 20;

/// All lower closed sets, ordered by size then lexicographically.
std::vector<IdSet> lower_sets(const Poset& p, std::size_t bound = kDefaultElementBound);

/// x -> { join-irreducible x' : x' <= x }.
std::map<Id, IdSet> canonical_partial_rep(const Lattice& l);

struct OrderCheck {
  bool ok = true;
  std::vector<Id> witness;  // failing pair (or the unmatched target for surjectivity)
  std::string reason;
};

OrderCheck check_order_embedding(const std::map<Id, Id>& f, const Poset& src, const Poset& dst);
/// Target order is set containment: f(x) >= f(y) iff f(x) contains f(y).
OrderCheck check_order_embedding(const std::map<Id, IdSet>& f, const Poset& src);

OrderCheck check_order_isomorphism(const std::map<Id, Id>& f, const Poset& src, const Poset& dst);
/// Isomorphism onto the family `dst` ordered by containment.
OrderCheck check_order_isomorphism(const std::map<Id, IdSet>& f, const Poset& src,
                                   const std::vector<IdSet>& dst);

/// An order isomorphism from `a` onto `b`, if one exists. Backtracking over
/// elements with matching up/down counts; meant for small orders.
std::optional<std::map<Id, Id>> find_order_isomorphism(const Poset& a, const Poset& b);

IdSet maximal_elements(const Poset& p, const IdSet& s);

struct DistributivityCheck {
  bool distributive = true;
  std::vector<Id> witness;  // a, b, c with a v (b ^ c) != (a v b) ^ (a v c)
};

DistributivityCheck is_distributive(const Lattice& l);

}  // namespace latmatch
