#pragma once

// Rotations of one-to-one markets and the swap-gadget market whose rotation
// poset is an antichain.

#include <map>

#include "latmatch/market.hpp"
#include "latmatch/order.hpp"

namespace latmatch {

struct Rotation {
  Id id;
  Matching plus;   // pairs gained moving up
  Matching minus;  // pairs lost moving up
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

struct RotationPoset {
  Poset order;
  std::map<Id, Rotation> rotations;
  Matching mu_w;  // worker-optimal stable matching, the bottom
  friend bool operator==(const RotationPoset&, const RotationPoset&) = default;
};

struct RealizedBase {
  MatchingMarket market;
  std::map<Id, Id> phi;  // poset element -> rotation id
  RotationPoset rotation_poset;
};

/// One four-agent swap gadget per id: firms "<id>.f1", "<id>.f2" and workers
/// "<id>.w1", "<id>.w2". Rotation ids equal the input ids and the rotation
/// poset is the antichain on them. An empty list gives the empty market.
RealizedBase antichain_base(const std::vector<Id>& ids);

/// Throws NotOneToOne unless every agent has a list of single partners.
void require_one_to_one(const MatchingMarket& m);

/// Rotations are read off the cover pairs of the stable lattice; rotation
/// ids are "rho<k>" in canonical order.
RotationPoset extract_rotations(const MatchingMarket& m, const EnumerateOptions& opts = {});

/// Lower closed set of rotations leading from mu_w to `mu`. Throws
/// NotRepresentable if no such set reproduces `mu`.
IdSet psi_s(const RotationPoset& rp, const Matching& mu);

/// mu_w plus every rotation's plus pairs minus every rotation's minus pairs.
/// Throws NotLowerClosed (witness: rotation, missing predecessor).
Matching psi_s_inverse(const RotationPoset& rp, const IdSet& rotations);

}  // namespace latmatch
