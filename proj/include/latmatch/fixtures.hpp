#pragma once

// Small reference instances shared by the tests, the acceptance suite and
// `latmatch selftest`.

#include <map>
#include <string>

#include "latmatch/antimatroid.hpp"
#include "latmatch/constraints.hpp"
#include "latmatch/market.hpp"
#include "latmatch/order.hpp"
#include "latmatch/realize.hpp"

namespace latmatch::fixtures {

/// Six-element non-distributive lattice on a..f: a bottom, f top,
/// join-irreducibles b, c, d, e with c below d and e.
Lattice six_element();
Lattice pentagon();  // N5
Lattice diamond();   // M3
Lattice chain(std::size_t n);
Lattice boolean(std::size_t n);  // subsets of {1..n}, ids are "{}", "{1}", "{1,2}", ...

/// The seven firm / seven worker one-to-one market with ten stable
/// matchings and four rotations.
MatchingMarket gi_market();
/// Its stable matchings keyed "mu1".."mu10".
std::map<std::string, Matching> gi_matchings();

struct RotationPairs {
  Matching plus;
  Matching minus;
};
/// Keyed "rho1".."rho4".
std::map<std::string, RotationPairs> gi_rotations();

/// gi_market() with the rotations above under their listed names, ordered
/// rho1 < rho3 and rho1 < rho4, and phi from the six-element lattice's
/// join-irreducibles (b, c, d, e -> rho2, rho1, rho3, rho4).
RealizedBase gi_base();

/// "rho1 and rho2 imply rho3 and rho4".
JoinConstraint gi_worked_constraint();

/// Stable matchings of the market after augmenting gi_base() with
/// gi_worked_constraint(), keyed by the name of their base projection.
std::map<std::string, Matching> aug_matchings();

/// Four-element antimatroid on a, b, c, d whose paths are {a}, {b}, {a,c}
/// and {a,c,d}; eight feasible sets.
Antimatroid ant();

}  // namespace latmatch::fixtures
