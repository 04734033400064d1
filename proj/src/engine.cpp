#include "engine.hpp"

#include <algorithm>
#include <limits>

namespace latmatch::detail {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct LocalIndex {
  const std::vector<Id>& universe;
  std::size_t operator()(const Id& id) const {
    auto it = std::lower_bound(universe.begin(), universe.end(), id);
    if (it == universe.end() || *it != id)
      throw Error(ErrorKind::UnknownPartnerId, "'" + id + "' is outside the compiled universe", {id});
    return static_cast<std::size_t>(it - universe.begin());
  }
  Bitset mask(const IdSet& s) const {
    Bitset b(universe.size());
    for (const auto& x : s) b.set((*this)(x));
    return b;
  }
};

}  // namespace

CompiledChoice::CompiledChoice(const ChoiceSpec& spec, const std::vector<Id>& universe) : n_(universe.size()) {
  LocalIndex at{universe};
  if (auto* p = std::get_if<PreferenceList>(&spec)) {
    kind_ = Kind::List;
    for (const auto& entry : p->list) sets_.push_back(at.mask(entry));
  } else if (auto* t = std::get_if<Triggered>(&spec)) {
    kind_ = Kind::Triggered;
    mask_ = at.mask(t->watch);
    single_ = at(t->trigger);
    std::map<Id, std::size_t> rot;
    auto rot_index = [&](const Id& r) {
      auto [it, fresh] = rot.emplace(r, sets_.size());
      if (fresh) {
        auto f = t->gamma.f_rho.find(r);
        sets_.push_back(f == t->gamma.f_rho.end() ? Bitset(n_) : at.mask(f->second));
      }
      return it->second;
    };
    for (const auto& g : t->gamma.alpha_groups) {
      std::vector<std::size_t> group;
      for (const auto& r : g) group.push_back(rot_index(r));
      groups_.push_back(std::move(group));
    }
  } else if (auto* e = std::get_if<IfElse>(&spec)) {
    kind_ = Kind::IfElse;
    single_ = at(e->priority);
    mask_ = at.mask(e->else_set);
  } else {
    const auto& r = std::get<Regular>(spec);
    kind_ = Kind::Regular;
    for (const auto& tier : r.tiers) sets_.push_back(at.mask(tier));
    for (const auto& [wl, wp] : r.aux_pairs) {
      std::size_t tier = npos;
      for (std::size_t i = 0; i < r.tiers.size(); ++i)
        if (r.tiers[i].count(wl)) tier = i;
      if (tier == npos) throw Error(ErrorKind::InvalidMarket, "aux pair names '" + wl + "' outside every tier", {wl});
      aux_.emplace_back(tier, at(wp));
    }
  }
}

Bitset CompiledChoice::choose(const Bitset& offered) const {
  switch (kind_) {
    case Kind::List:
      for (const auto& s : sets_)
        if (s.is_subset_of(offered)) return s;
      return Bitset(n_);
    case Kind::Triggered: {
      Bitset out = offered & mask_;
      if (offered.test(single_)) {
        bool gamma = true;
        for (const auto& g : groups_) {
          bool any = false;
          for (auto r : g)
            if (!sets_[r].intersects(offered)) {
              any = true;
              break;
            }
          if (!any) {
            gamma = false;
            break;
          }
        }
        if (gamma) out.set(single_);
      }
      return out;
    }
    case Kind::IfElse: {
      if (offered.test(single_)) {
        Bitset out(n_);
        out.set(single_);
        return out;
      }
      return offered & mask_;
    }
    case Kind::Regular: {
      std::size_t hit = npos;
      Bitset out(n_);
      for (std::size_t i = 0; i < sets_.size(); ++i)
        if (sets_[i].intersects(offered)) {
          hit = i;
          out = offered & sets_[i];
          break;
        }
      for (auto [tier, wp] : aux_)
        if (offered.test(wp) && (hit == npos || tier <= hit)) out.set(wp);
      return out;
    }
  }
  return Bitset(n_);
}

Engine::Engine(const MatchingMarket& m) : nf_(m.firms.size()) {
  validate_market(m);
  ids_ = m.firms;
  ids_.insert(ids_.end(), m.workers.begin(), m.workers.end());
  for (std::size_t i = 0; i < ids_.size(); ++i) index_[ids_[i]] = i;

  std::vector<std::vector<Id>> universe(ids_.size());
  std::vector<IdSet> uset(ids_.size());
  for (std::size_t a = 0; a < ids_.size(); ++a) {
    uset[a] = spec_universe(m.choice.at(ids_[a]));
    universe[a].assign(uset[a].begin(), uset[a].end());
  }

  agents_.resize(ids_.size());
  for (std::size_t a = 0; a < ids_.size(); ++a) {
    agents_[a].choice = CompiledChoice(m.choice.at(ids_[a]), universe[a]);
    agents_[a].local_edge.assign(universe[a].size(), npos);
  }
  for (std::size_t f = 0; f < nf_; ++f)
    for (std::size_t k = 0; k < universe[f].size(); ++k) {
      const std::size_t w = index_.at(universe[f][k]);
      if (!uset[w].count(ids_[f])) continue;
      const std::size_t e = edges_.size();
      edges_.emplace_back(f, w);
      agents_[f].local_edge[k] = e;
      auto kw = std::lower_bound(universe[w].begin(), universe[w].end(), ids_[f]) - universe[w].begin();
      agents_[w].local_edge[static_cast<std::size_t>(kw)] = e;
    }
  incident_.assign(ids_.size(), Bitset(edges_.size()));
  for (std::size_t a = 0; a < ids_.size(); ++a) {
    auto& ag = agents_[a];
    ag.edge_local.assign(edges_.size(), npos);
    for (std::size_t k = 0; k < ag.local_edge.size(); ++k)
      if (ag.local_edge[k] != npos) {
        incident_[a].set(ag.local_edge[k]);
        ag.edge_local[ag.local_edge[k]] = k;
      }
  }
}

Bitset Engine::choose(std::size_t a, const Bitset& x) const {
  const auto& ag = agents_[a];
  Bitset local(ag.choice.size());
  Bitset mine = x & incident_[a];
  mine.for_each([&](std::size_t e) { local.set(ag.edge_local[e]); });
  Bitset picked = ag.choice.choose(local);
  Bitset out(edges_.size());
  picked.for_each([&](std::size_t k) {
    if (ag.local_edge[k] != npos) out.set(ag.local_edge[k]);
  });
  return out;
}

Bitset Engine::choose_side(bool firms, const Bitset& x) const {
  Bitset out(edges_.size());
  const std::size_t lo = firms ? 0 : nf_;
  const std::size_t hi = firms ? nf_ : ids_.size();
  for (std::size_t a = lo; a < hi; ++a)
    if (x.intersects(incident_[a])) out |= choose(a, x);
  return out;
}

Bitset Engine::all_edges() const {
  Bitset b(edges_.size());
  b.fill();
  return b;
}

Bitset Engine::phi(const Bitset& xf) const {
  const Bitset all = all_edges();
  Bitset rejected_f = xf - choose_side(true, xf);
  Bitset xw = all - rejected_f;
  Bitset rejected_w = xw - choose_side(false, xw);
  return all - rejected_w;
}

Matching Engine::to_matching(const Bitset& x) const {
  Matching mu;
  x.for_each([&](std::size_t e) { mu.emplace(ids_[edges_[e].first], ids_[edges_[e].second]); });
  return mu;
}

std::optional<Bitset> Engine::from_matching(const Matching& mu) const {
  Bitset b(edges_.size());
  for (const auto& [f, w] : mu) {
    auto fi = index_.find(f);
    auto wi = index_.find(w);
    if (fi == index_.end() || wi == index_.end()) return std::nullopt;
    bool found = false;
    incident_[fi->second].for_each([&](std::size_t e) {
      if (edges_[e].second == wi->second) {
        b.set(e);
        found = true;
      }
    });
    if (!found) return std::nullopt;
  }
  return b;
}

}  // namespace latmatch::detail
