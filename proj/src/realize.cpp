#include "latmatch/realize.hpp"

#include <algorithm>
#include <deque>

namespace latmatch {

RealizedBase antichain_base(const std::vector<Id>& ids) {
  RealizedBase out;
  IdSet seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second) throw Error(ErrorKind::DuplicateId, "element '" + id + "' listed twice", {id});
  std::vector<Id> sorted(seen.begin(), seen.end());
  auto one = [](const Id& x) { return IdSet{x}; };
  for (const auto& id : sorted) {
    const Id f1 = id + ".f1", f2 = id + ".f2", w1 = id + ".w1", w2 = id + ".w2";
    out.market.firms.insert(out.market.firms.end(), {f1, f2});
    out.market.workers.insert(out.market.workers.end(), {w1, w2});
    out.market.choice[f1] = PreferenceList{{one(w2), one(w1)}};
    out.market.choice[f2] = PreferenceList{{one(w1), one(w2)}};
    out.market.choice[w1] = PreferenceList{{one(f1), one(f2)}};
    out.market.choice[w2] = PreferenceList{{one(f2), one(f1)}};
    Rotation r{id, {{f1, w2}, {f2, w1}}, {{f1, w1}, {f2, w2}}};
    out.rotation_poset.rotations[id] = r;
    out.rotation_poset.mu_w.insert(r.minus.begin(), r.minus.end());
    out.phi[id] = id;
  }
  out.rotation_poset.order = Poset::trivial(sorted);
  return out;
}

void require_one_to_one(const MatchingMarket& m) {
  for (const auto& [id, spec] : m.choice) {
    auto* p = std::get_if<PreferenceList>(&spec);
    if (!p) throw Error(ErrorKind::NotOneToOne, "agent '" + id + "' does not use a preference list", {id});
    for (const auto& e : p->list)
      if (e.size() != 1)
        throw Error(ErrorKind::NotOneToOne, "agent '" + id + "' lists a set of several partners", {id});
  }
}

RotationPoset extract_rotations(const MatchingMarket& m, const EnumerateOptions& opts) {
  require_one_to_one(m);
  StableLattice sl;
  try {
    sl = stable_lattice(m, opts);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotALattice || e.kind() == ErrorKind::NotAntisymmetric ||
        e.kind() == ErrorKind::NotTransitive)
      throw Error(ErrorKind::NonLatticeStructure, std::string("stable matchings do not form a lattice: ") + e.what(),
                  e.witness());
    throw;
  }
  const Lattice& l = sl.lattice;
  const Poset& p = l.order();

  // Distinct (plus, minus) differences over cover pairs.
  std::map<std::pair<Matching, Matching>, std::size_t> diff_index;
  std::vector<std::pair<Matching, Matching>> diffs;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> up(p.size());  // (upper, diff)
  for (auto [lo, hi] : p.cover_indices()) {
    const Matching& a = sl.matchings.at(p.element(lo));
    const Matching& b = sl.matchings.at(p.element(hi));
    Matching plus, minus;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::inserter(plus, plus.end()));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(minus, minus.end()));
    auto key = std::make_pair(plus, minus);
    auto [it, fresh] = diff_index.emplace(key, diffs.size());
    if (fresh) diffs.push_back(key);
    up[lo].emplace_back(hi, it->second);
  }

  // Occurrence sets: rotations applied on the way up from the bottom.
  std::vector<std::optional<std::set<std::size_t>>> occ(p.size());
  occ[l.bottom()] = std::set<std::size_t>{};
  std::deque<std::size_t> queue = {l.bottom()};
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (auto [y, d] : up[x]) {
      auto s = *occ[x];
      s.insert(d);
      if (!occ[y]) {
        occ[y] = s;
        queue.push_back(y);
      } else if (*occ[y] != s) {
        throw Error(ErrorKind::NonLatticeStructure, "different paths to a stable matching apply different rotations",
                    {p.element(y)});
      }
    }
  }

  // r below r' iff every occurrence set with r' also has r.
  const std::size_t k = diffs.size();
  std::vector<std::vector<bool>> below(k, std::vector<bool>(k, true));
  for (const auto& s : occ)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (s->count(b) && !s->count(a)) below[a][b] = false;

  // Canonical order: by number of predecessors, then by pair sets.
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  auto preds = [&](std::size_t i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < k; ++j) c += below[j][i] && j != i;
    return c;
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(preds(a), diffs[a].second, diffs[a].first) <
           std::make_tuple(preds(b), diffs[b].second, diffs[b].first);
  });
  const std::size_t width = std::to_string(k).size();
  std::vector<Id> name(k);
  for (std::size_t pos = 0; pos < k; ++pos) {
    std::string digits = std::to_string(pos + 1);
    name[order[pos]] = "rho" + std::string(width - digits.size(), '0') + digits;
  }

  RotationPoset rp;
  std::vector<Id> ids;
  std::vector<std::vector<bool>> rel(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) ids.push_back(name[i]);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) rel[a][b] = below[a][b];
  try {
    rp.order = validate_poset(ids, rel);
  } catch (const Error& e) {
    throw Error(ErrorKind::NonLatticeStructure, std::string("rotation order is not a partial order: ") + e.what(),
                e.witness());
  }
  for (std::size_t i = 0; i < k; ++i) rp.rotations[name[i]] = Rotation{name[i], diffs[i].first, diffs[i].second};
  rp.mu_w = sl.matchings.at(l.elements()[l.bottom()]);
  return rp;
}

namespace {

bool contains_all(const Matching& big, const Matching& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool disjoint(const Matching& a, const Matching& b) {
  for (const auto& x : a)
    if (b.count(x)) return false;
  return true;
}

}  // namespace

IdSet psi_s(const RotationPoset& rp, const Matching& mu) {
  // Apply exposed rotations whose lost pairs are all absent from mu; a lost
  // pair is removed only by its own rotation, so this never overshoots.
  IdSet applied;
  Matching cur = rp.mu_w;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [id, r] : rp.rotations) {
      if (applied.count(id)) continue;
      bool ready = true;
      const std::size_t i = rp.order.index(id);
      for (std::size_t j = 0; j < rp.order.size() && ready; ++j)
        if (rp.order.lt(j, i) && !applied.count(rp.order.element(j))) ready = false;
      if (!ready || !contains_all(cur, r.minus) || !disjoint(r.minus, mu)) continue;
      for (const auto& x : r.minus) cur.erase(x);
      cur.insert(r.plus.begin(), r.plus.end());
      applied.insert(id);
      progress = true;
    }
  }
  if (psi_s_inverse(rp, applied) != mu)
    throw Error(ErrorKind::NotRepresentable, "matching is not reached by any lower closed set of rotations");
  return applied;
}

Matching psi_s_inverse(const RotationPoset& rp, const IdSet& rotations) {
  for (const auto& id : rotations) {
    if (!rp.rotations.count(id)) throw Error(ErrorKind::UnknownElementId, "unknown rotation '" + id + "'", {id});
    const std::size_t i = rp.order.index(id);
    for (std::size_t j = 0; j < rp.order.size(); ++j)
      if (rp.order.lt(j, i) && !rotations.count(rp.order.element(j)))
        throw Error(ErrorKind::NotLowerClosed, "rotation '" + id + "' needs '" + rp.order.element(j) + "'",
                    {id, rp.order.element(j)});
  }
  Matching out = rp.mu_w;
  for (const auto& id : rotations) {
    const auto& r = rp.rotations.at(id);
    out.insert(r.plus.begin(), r.plus.end());
  }
  for (const auto& id : rotations)
    for (const auto& x : rp.rotations.at(id).minus) out.erase(x);
  return out;
}

}  // namespace latmatch
