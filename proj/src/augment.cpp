#include "latmatch/augment.hpp"

#include <algorithm>

namespace latmatch {

namespace {

std::vector<Id> strict_list(const MatchingMarket& m, const Id& agent) {
  std::vector<Id> out;
  for (const auto& e : std::get<PreferenceList>(m.choice.at(agent)).list) out.push_back(*e.begin());
  return out;
}

std::string show(const Matching& mu) {
  std::string s = "{";
  for (const auto& [f, w] : mu) s += "(" + f + "," + w + ")";
  return s + "}";
}

}  // namespace

RotationJoinConstraint derive_sets(const JoinConstraint& jc, const RotationPoset& rp) {
  RotationJoinConstraint r;
  r.constraint = jc;
  r.constraint.canonicalize();
  r.alpha_rotations = jc.alpha_ids();
  r.beta_rotations = jc.beta;
  for (const auto* ids : {&r.alpha_rotations, &r.beta_rotations})
    for (const auto& id : *ids)
      if (!rp.rotations.count(id)) throw Error(ErrorKind::UnknownElementId, "unknown rotation '" + id + "'", {id});
  for (const auto& x : r.alpha_rotations)
    for (const auto& y : r.alpha_rotations)
      if (rp.order.lt(x, y))
        throw Error(ErrorKind::ArgumentsNotAntichain, "alpha rotations " + x + " and " + y + " are comparable", {x, y});

  for (const auto& id : r.alpha_rotations) {
    IdSet fs;
    for (const auto& [f, w] : rp.rotations.at(id).minus) fs.insert(f);
    for (const auto& [other, ofs] : r.firms_of)
      for (const auto& f : fs)
        if (ofs.count(f))
          throw Error(ErrorKind::OverlappingRotationAgents,
                      "alpha rotations " + other + " and " + id + " share firm " + f, {other, id, f});
    r.alpha_firms.insert(fs.begin(), fs.end());
    r.firms_of[id] = std::move(fs);
  }
  for (const auto& id : r.beta_rotations) {
    IdSet ws;
    for (const auto& [f, w] : rp.rotations.at(id).plus) ws.insert(w);
    r.beta_workers.insert(ws.begin(), ws.end());
    r.workers_of[id] = std::move(ws);
  }
  return r;
}

bool ExtendableMarket::is_base_firm(const Id& f) const { return base.market.choice.count(f) && base.market.is_firm(f); }

IdSet ExtendableMarket::copies_of(const Id& base_worker) const {
  IdSet out;
  for (const auto& [w, b] : copy_map)
    if (b == base_worker) out.insert(w);
  return out;
}

ExtendableMarket as_extendable(const RealizedBase& base) {
  require_one_to_one(base.market);
  ExtendableMarket em;
  em.market = base.market;
  em.base = base;
  for (const auto& w : base.market.workers) em.copy_map[w] = w;
  return em;
}

ExtendableMarket augment(const ExtendableMarket& em, const RotationJoinConstraint& rjc) {
  ExtendableMarket out = em;
  const std::size_t k = ++out.augment_count;
  const std::string tag = "#" + std::to_string(k);
  const Id w0 = "w0" + tag;
  const Id f0 = "f0" + tag;
  const auto& rotations = em.base.rotation_poset.rotations;

  // New copies of the beta workers, each listing f0 then the tail of the
  // base list from the least preferred firm that a beta rotation gives it.
  IdSet new_copies;
  for (const auto& wj : rjc.beta_workers) {
    const auto base_list = strict_list(em.base.market, wj);
    std::optional<std::size_t> start;
    Id chosen;
    for (const auto& rho : rjc.beta_rotations)
      for (const auto& [f, w] : rotations.at(rho).plus) {
        if (w != wj) continue;
        auto pos = static_cast<std::size_t>(std::find(base_list.begin(), base_list.end(), f) - base_list.begin());
        if (pos == base_list.size())
          throw Error(ErrorKind::InvalidMarket, "firm " + f + " is not on the list of " + wj, {f, wj});
        if (start && *start == pos && chosen != f)
          throw Error(ErrorKind::OverlappingRotationAgents, "tied candidate firms for " + wj, {wj, f, chosen});
        if (!start || pos > *start) {
          start = pos;
          chosen = f;
        }
      }
    const Id copy = wj + tag;
    PreferenceList list;
    list.list.push_back({f0});
    for (std::size_t i = *start; i < base_list.size(); ++i) list.list.push_back({base_list[i]});
    out.market.choice[copy] = std::move(list);
    out.market.workers.push_back(copy);
    out.copy_map[copy] = wj;
    new_copies.insert(copy);
  }

  out.market.workers.push_back(w0);
  out.market.firms.push_back(f0);
  out.aux_workers.insert(w0);
  out.aux_firms.insert(f0);

  Triggered trig;
  trig.watch = rjc.alpha_firms;
  trig.trigger = f0;
  trig.gamma.alpha_groups = rjc.constraint.alpha_groups;
  trig.gamma.f_rho = rjc.firms_of;
  out.market.choice[w0] = std::move(trig);
  out.market.choice[f0] = IfElse{w0, new_copies};

  for (const auto& rho : rjc.alpha_rotations)
    for (const auto& [f, w] : rotations.at(rho).minus) out.a_f[f].emplace_back(w, w0);

  for (const auto& f : em.base.market.firms) {
    Regular reg;
    for (const auto& w : strict_list(em.base.market, f)) reg.tiers.push_back(out.copies_of(w));
    auto it = out.a_f.find(f);
    if (it != out.a_f.end()) reg.aux_pairs = it->second;
    out.market.choice[f] = std::move(reg);
  }

  out.applied.push_back(rjc.constraint);
  validate_market(out.market);
  return out;
}

Matching project_zeta(const ExtendableMarket& before, const ExtendableMarket& after, const Matching& mu) {
  Matching out;
  for (const auto& [f, w] : mu) {
    if (after.aux_firms.count(f) && !before.aux_firms.count(f)) continue;
    if (after.aux_workers.count(w) && !before.aux_workers.count(w)) continue;
    if (after.copy_map.count(w) && !before.copy_map.count(w))
      out.emplace(f, after.copy_map.at(w));
    else
      out.emplace(f, w);
  }
  return out;
}

Matching project_xi(const ExtendableMarket& em, const Matching& mu) {
  Matching out;
  for (const auto& [f, w] : mu)
    if (em.is_base_firm(f) && em.is_regular_worker(w)) out.emplace(f, em.copy_map.at(w));
  if (!is_stable(em.base.market, out))
    throw Error(ErrorKind::ProjectionNotStable, "projection " + show(out) + " is not stable in the base market");
  return out;
}

ExtendableMarket omega_extend(const RealizedBase& base, const std::vector<JoinConstraint>& omega) {
  ExtendableMarket em = as_extendable(base);
  for (const auto& jc : omega) em = augment(em, derive_sets(jc, base.rotation_poset));
  return em;
}

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

VerifyReport verify_extension(const RealizedBase& base, const ExtendableMarket& em,
                              const std::vector<JoinConstraint>& omega, const EnumerateOptions& opts) {
  VerifyReport rep;
  rep.stable = enumerate_stable(em.market, opts);

  CheckResult proj{"projections are stable in the base", true, ""};
  for (const auto& mu : rep.stable) {
    try {
      rep.image.push_back(project_xi(em, mu));
    } catch (const Error& e) {
      proj.ok = false;
      proj.detail = e.what();
      break;
    }
  }
  rep.checks.push_back(proj);
  if (!proj.ok) return rep;

  std::set<Matching> image(rep.image.begin(), rep.image.end());
  rep.checks.push_back({"projection is one-to-one", image.size() == rep.image.size(),
                        std::to_string(rep.image.size() - image.size()) + " collisions"});

  const auto base_stable = enumerate_stable(base.market, opts);
  for (const auto& mu : base_stable) {
    const IdSet r = psi_s(base.rotation_poset, mu);
    if (std::all_of(omega.begin(), omega.end(),
                    [&](const JoinConstraint& jc) { return eval_join_constraint(jc, r).satisfied; }))
      rep.expected.push_back(mu);
  }
  std::set<Matching> expected(rep.expected.begin(), rep.expected.end());
  std::string missing;
  for (const auto& mu : expected)
    if (!image.count(mu)) missing += show(mu);
  for (const auto& mu : image)
    if (!expected.count(mu)) missing += " extra " + show(mu);
  rep.checks.push_back({"image equals the constrained base matchings", image == expected, missing});

  bool order_ok = true;
  std::string order_detail;
  for (std::size_t i = 0; i < rep.stable.size() && order_ok; ++i)
    for (std::size_t j = 0; j < rep.stable.size() && order_ok; ++j) {
      const auto up = blair_compare(em.market, rep.stable[i], rep.stable[j]);
      const auto down = blair_compare(base.market, rep.image[i], rep.image[j]);
      const bool geq_up = up == Comparison::Greater || up == Comparison::Equal;
      const bool geq_down = down == Comparison::Greater || down == Comparison::Equal;
      if (geq_up != geq_down) {
        order_ok = false;
        order_detail = show(rep.image[i]) + " vs " + show(rep.image[j]);
      }
    }
  rep.checks.push_back({"projection is an order isomorphism", order_ok, order_detail});

  if (!base_stable.empty()) {
    const Matching top = deferred_acceptance(base.market, Side::Firms);
    const Matching bottom = deferred_acceptance(base.market, Side::Workers);
    rep.checks.push_back({"base top and bottom survive", image.count(top) && image.count(bottom), ""});
  }
  return rep;
}

Synthesis synthesize_from_lattice(const Lattice& l, const EnumerateOptions& opts) {
  const auto ji = join_irreducibles(l);
  const RealizedBase base = antichain_base(std::vector<Id>(ji.members.begin(), ji.members.end()));

  std::vector<JoinConstraint> order_part, lattice_part;
  for (const auto& [p, q] : ji.order.covers()) {
    JoinConstraint jc;
    jc.alpha_groups = {{q}};
    jc.beta = {p};
    order_part.push_back(jc);
  }
  std::sort(order_part.begin(), order_part.end());
  for (const auto& jc : constraints_from_lattice(l)) {
    JoinConstraint t;
    for (const auto& g : jc.alpha_groups) {
      IdSet mapped;
      for (const auto& x : g) mapped.insert(base.phi.at(x));
      t.alpha_groups.push_back(mapped);
    }
    for (const auto& x : jc.beta) t.beta.insert(base.phi.at(x));
    lattice_part.push_back(t.canonicalize());
  }
  std::sort(lattice_part.begin(), lattice_part.end());

  Synthesis out;
  out.omega = order_part;
  out.omega.insert(out.omega.end(), lattice_part.begin(), lattice_part.end());
  out.market = omega_extend(base, out.omega);

  const VerifyReport rep = verify_extension(base, out.market, out.omega, opts);
  for (const auto& c : rep.checks)
    if (!c.ok) throw Error(ErrorKind::IsomorphismFailure, "check failed: " + c.name + " " + c.detail);

  std::map<IdSet, Matching> by_rotations;
  for (std::size_t i = 0; i < rep.stable.size(); ++i)
    by_rotations[psi_s(base.rotation_poset, rep.image[i])] = rep.stable[i];
  const auto psi = canonical_partial_rep(l);
  for (const auto& x : l.elements()) {
    IdSet target;
    for (const auto& j : psi.at(x)) target.insert(base.phi.at(j));
    auto it = by_rotations.find(target);
    if (it == by_rotations.end())
      throw Error(ErrorKind::IsomorphismFailure, "no stable matching represents element '" + x + "'", {x});
    out.iso[x] = it->second;
  }
  if (by_rotations.size() != l.size())
    throw Error(ErrorKind::IsomorphismFailure, std::to_string(by_rotations.size()) + " stable matchings for " +
                                                   std::to_string(l.size()) + " lattice elements");

  try {
    out.stable = lattice_of_matchings(out.market.market, rep.stable);
  } catch (const Error& e) {
    throw Error(ErrorKind::IsomorphismFailure, std::string("stable matchings do not form a lattice: ") + e.what());
  }
  std::map<Id, Id> f;
  for (const auto& [x, mu] : out.iso) f[x] = out.stable.id_of(mu);
  const auto check = check_order_isomorphism(f, l.order(), out.stable.lattice.order());
  if (!check.ok) throw Error(ErrorKind::IsomorphismFailure, check.reason, check.witness);
  return out;
}

}  // namespace latmatch
