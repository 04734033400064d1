#pragma once

// Antimatroids, their path posets and complement-constraint encodings, the
// independent-set gadget, and the reduction from minimum cost feasible sets
// to minimum cost stable matchings.

#include <boost/rational.hpp>

#include <map>
#include <random>
#include <vector>

#include "latmatch/augment.hpp"
#include "latmatch/constraints.hpp"
#include "latmatch/market.hpp"
#include "latmatch/realize.hpp"

namespace latmatch {

struct Antimatroid {
  std::vector<Id> ground;         // sorted
  std::vector<IdSet> feasible;    // size-then-lex order, deduplicated
  friend bool operator==(const Antimatroid&, const Antimatroid&) = default;
};

/// Sorts the ground set and canonically orders and dedups the family.
Antimatroid make_antimatroid(std::vector<Id> ground, std::vector<IdSet> feasible);

struct AntimatroidCheck {
  bool ok = true;
  std::string reason;
  std::vector<IdSet> witness;
};

AntimatroidCheck check_antimatroid(const Antimatroid& a);
/// Throws NotAnAntimatroid; the witness lists the offending sets by name.
void validate_antimatroid(const Antimatroid& a);

bool is_feasible(const Antimatroid& a, const IdSet& s);
/// Elements g of `g_set` with g_set \ {g} feasible.
IdSet endpoints(const Antimatroid& a, const IdSet& g_set);

struct Path {
  IdSet set;
  Id endpoint;
  friend bool operator==(const Path&, const Path&) = default;
};

struct PathPoset {
  std::vector<Id> ground;
  std::vector<Path> paths;  // size-then-lex order of the sets
  friend bool operator==(const PathPoset&, const PathPoset&) = default;
};

/// Feasible sets with exactly one endpoint. Also computes the nonempty
/// feasible sets that are not the union of two feasible proper subsets and
/// throws NotAnAntimatroid if the two disagree.
PathPoset compute_path_poset(const Antimatroid& a);
std::vector<IdSet> union_irreducible_sets(const Antimatroid& a);

/// Paths contained in `s`.
std::vector<Path> paths_within(const PathPoset& pp, const IdSet& s);
/// Unions of all subfamilies of paths, plus the empty set.
Antimatroid family_from_path_poset(const PathPoset& pp);

/// One complement constraint per ground element x: beta_c = {x}; one alpha_c
/// group per path ending at x, holding the endpoints of the paths inside it.
std::vector<ComplementJoinConstraint> antimatroid_constraints(const PathPoset& pp);
/// Subsets of `ground` satisfying every constraint, size-then-lex order.
std::vector<IdSet> filter_subsets(const std::vector<Id>& ground, const std::vector<ComplementJoinConstraint>& omega);

struct Graph {
  std::vector<Id> vertices;
  std::vector<std::pair<Id, Id>> edges;
};

/// "e:u-v" with u < v.
Id edge_id(const Id& u, const Id& v);
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph random_graph(std::mt19937_64& rng, std::size_t n, double density);

using GroundCosts = std::map<Id, long long>;
using Rational = boost::rational<long long>;
using PairCosts = std::map<Pair, Rational>;

struct WeightedAntimatroid {
  Antimatroid family;
  GroundCosts weights;
};

/// Ground set V plus one element per edge; a set is feasible when every edge
/// in it has an endpoint in it. Weights are 1 - degree on vertices and 1 on
/// edges. Throws InvalidInput on unknown or repeated edges and self-loops.
WeightedAntimatroid independent_set_antimatroid(const Graph& g);

enum class Sense { Min, Max };

struct FeasibleOptimum {
  IdSet set;
  long long value = 0;
};

/// Brute force over the family; the first optimum in family order wins.
FeasibleOptimum min_cost_feasible(const Antimatroid& a, const GroundCosts& c, Sense sense = Sense::Min);

long long ground_cost(const GroundCosts& c, const IdSet& s);
Rational pair_cost(const PairCosts& c, const Matching& mu);

/// c'(f,w) = c(x) / |minus| for every lost pair of the rotation of x.
PairCosts transfer_costs(const RealizedBase& base, const GroundCosts& c);

struct Reduction {
  RealizedBase base;
  std::vector<JoinConstraint> omega;
  ExtendableMarket market;
  PairCosts costs;

  /// Ground elements whose rotations are not applied in the projection.
  IdSet recover(const Matching& mu) const;
};

Reduction reduce_to_matching(const PathPoset& pp, const GroundCosts& c);

struct StableOptimum {
  Matching matching;
  Rational value;
};

/// Brute force over enumerate_stable; the first optimum in canonical order.
StableOptimum min_cost_stable(const MatchingMarket& m, const PairCosts& c, Sense sense = Sense::Min,
                              const EnumerateOptions& opts = {});

/// Random subsets closed under union, with the ground set added and every
/// inaccessible set repaired by adding a subset one element smaller. A
/// fixture generator, not a uniform sampler. Ground ids are "v1".."vn".
Antimatroid random_antimatroid(std::mt19937_64& rng, std::size_t n);

}  // namespace latmatch
