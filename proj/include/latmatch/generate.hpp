#pragma once

// Instance generators for property tests and the acceptance suite. These are
// fixture generators, not uniform samplers.

#include <random>

#include "latmatch/market.hpp"
#include "latmatch/order.hpp"

namespace latmatch {

using Rng = std::mt19937_64;

/// All lattices with exactly n elements, one per isomorphism class.
/// Ids are "l0".."l<n-1>" with l0 the bottom. Feasible for n <= 7.
std::vector<Lattice> all_lattices(std::size_t n);

/// Intersection-closed family of random subsets of a small ground set,
/// ordered by inclusion; between 1 and max_elements elements.
Lattice random_lattice(Rng& rng, std::size_t max_elements);

/// Lower sets of a random poset on k elements, ordered by inclusion.
Lattice random_distributive_lattice(Rng& rng, std::size_t k);

/// Strict preference lists over a random bipartite acceptability graph.
MatchingMarket random_one_to_one_market(Rng& rng, std::size_t firms, std::size_t workers, double density);

/// Name of a set of ids as "{x,y}".
std::string set_name(const IdSet& s);

}  // namespace latmatch
