#include "latmatch/market.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "engine.hpp"

namespace latmatch {

namespace {

bool has(const IdSet& s, const Id& x) { return s.count(x) != 0; }

bool subset(const IdSet& a, const IdSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

IdSet intersect(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace

IdSet GammaSpec::full_watch() const {
  IdSet out;
  for (const auto& [r, fs] : f_rho) out.insert(fs.begin(), fs.end());
  return out;
}

const char* kind_name(const ChoiceSpec& spec) {
  switch (spec.index()) {
    case 0: return "preference_list";
    case 1: return "triggered";
    case 2: return "if_else";
    default: return "regular";
  }
}

IdSet spec_universe(const ChoiceSpec& spec) {
  IdSet u;
  if (auto* p = std::get_if<PreferenceList>(&spec)) {
    for (const auto& e : p->list) u.insert(e.begin(), e.end());
  } else if (auto* t = std::get_if<Triggered>(&spec)) {
    u = t->watch;
    u.insert(t->trigger);
    auto fw = t->gamma.full_watch();
    u.insert(fw.begin(), fw.end());
  } else if (auto* e = std::get_if<IfElse>(&spec)) {
    u = e->else_set;
    u.insert(e->priority);
  } else {
    const auto& r = std::get<Regular>(spec);
    for (const auto& tier : r.tiers) u.insert(tier.begin(), tier.end());
    for (const auto& pr : r.aux_pairs) u.insert(pr.second);
  }
  return u;
}

IdSet choose(const ChoiceSpec& spec, const IdSet& offered) {
  if (auto* p = std::get_if<PreferenceList>(&spec)) {
    for (const auto& e : p->list)
      if (subset(e, offered)) return e;
    return {};
  }
  if (auto* t = std::get_if<Triggered>(&spec)) {
    IdSet out = intersect(offered, t->watch);
    if (has(offered, t->trigger)) {
      // A rotation counts when none of its firms is offered.
      IdSet present;
      for (const auto& g : t->gamma.alpha_groups)
        for (const auto& r : g) {
          auto it = t->gamma.f_rho.find(r);
          if (it == t->gamma.f_rho.end() || intersect(it->second, offered).empty()) present.insert(r);
        }
      bool gamma = std::all_of(t->gamma.alpha_groups.begin(), t->gamma.alpha_groups.end(), [&](const IdSet& g) {
        return std::any_of(g.begin(), g.end(), [&](const Id& r) { return has(present, r); });
      });
      if (gamma) out.insert(t->trigger);
    }
    return out;
  }
  if (auto* e = std::get_if<IfElse>(&spec)) {
    if (has(offered, e->priority)) return {e->priority};
    return intersect(offered, e->else_set);
  }
  const auto& r = std::get<Regular>(spec);
  std::optional<std::size_t> hit;
  IdSet out;
  for (std::size_t i = 0; i < r.tiers.size(); ++i) {
    IdSet part = intersect(offered, r.tiers[i]);
    if (!part.empty()) {
      hit = i;
      out = std::move(part);
      break;
    }
  }
  for (const auto& [wl, wp] : r.aux_pairs) {
    if (!has(offered, wp)) continue;
    std::size_t tier = 0;
    while (tier < r.tiers.size() && !has(r.tiers[tier], wl)) ++tier;
    if (!hit || tier <= *hit) out.insert(wp);
  }
  return out;
}

bool MatchingMarket::is_firm(const Id& id) const { return std::find(firms.begin(), firms.end(), id) != firms.end(); }

bool MatchingMarket::is_worker(const Id& id) const {
  return std::find(workers.begin(), workers.end(), id) != workers.end();
}

void validate_market(const MatchingMarket& m) {
  IdSet firms, workers;
  for (const auto& f : m.firms)
    if (!firms.insert(f).second) throw Error(ErrorKind::DuplicateId, "firm '" + f + "' declared twice", {f});
  for (const auto& w : m.workers) {
    if (!workers.insert(w).second) throw Error(ErrorKind::DuplicateId, "worker '" + w + "' declared twice", {w});
    if (firms.count(w)) throw Error(ErrorKind::DuplicateId, "'" + w + "' is both a firm and a worker", {w});
  }
  for (const auto& [id, spec] : m.choice)
    if (!firms.count(id) && !workers.count(id))
      throw Error(ErrorKind::InvalidMarket, "choice function given for undeclared agent '" + id + "'", {id});

  auto check = [&](bool firm_side, const Id& agent) {
    auto it = m.choice.find(agent);
    if (it == m.choice.end())
      throw Error(ErrorKind::InvalidMarket, "agent '" + agent + "' has no choice function", {agent});
    const IdSet& other = firm_side ? workers : firms;
    for (const auto& x : spec_universe(it->second))
      if (!other.count(x))
        throw Error(ErrorKind::UnknownPartnerId, "agent '" + agent + "' refers to '" + x + "', not on the other side",
                    {agent, x});
    const ChoiceSpec& spec = it->second;
    if (auto* p = std::get_if<PreferenceList>(&spec)) {
      std::set<IdSet> seen;
      for (const auto& e : p->list) {
        if (e.empty()) throw Error(ErrorKind::InvalidMarket, "empty entry in the list of '" + agent + "'", {agent});
        if (!seen.insert(e).second)
          throw Error(ErrorKind::InvalidMarket, "repeated entry in the list of '" + agent + "'", {agent});
      }
    } else if (auto* r = std::get_if<Regular>(&spec)) {
      IdSet in_tiers;
      for (const auto& tier : r->tiers)
        for (const auto& x : tier)
          if (!in_tiers.insert(x).second)
            throw Error(ErrorKind::InvalidMarket, "tiers of '" + agent + "' overlap at '" + x + "'", {agent, x});
      IdSet seconds;
      for (const auto& [wl, wp] : r->aux_pairs) {
        if (!in_tiers.count(wl))
          throw Error(ErrorKind::InvalidMarket, "aux pair of '" + agent + "' names '" + wl + "' outside every tier",
                      {agent, wl});
        if (!seconds.insert(wp).second)
          throw Error(ErrorKind::InvalidMarket, "'" + wp + "' appears twice in aux pairs of '" + agent + "'",
                      {agent, wp});
      }
    }
  };
  for (const auto& f : m.firms) check(true, f);
  for (const auto& w : m.workers) check(false, w);
}

IdSet choose(const MatchingMarket& m, const Id& agent, const IdSet& offered) {
  const bool firm = m.is_firm(agent);
  if (!firm && !m.is_worker(agent)) throw Error(ErrorKind::UnknownElementId, "unknown agent '" + agent + "'", {agent});
  for (const auto& x : offered)
    if (firm ? !m.is_worker(x) : !m.is_firm(x))
      throw Error(ErrorKind::UnknownPartnerId, "'" + x + "' is not on the other side of '" + agent + "'", {agent, x});
  return choose(m.choice.at(agent), offered);
}

IdSet partners(const Matching& mu, const Id& agent) {
  IdSet out;
  for (const auto& [f, w] : mu) {
    if (f == agent) out.insert(w);
    if (w == agent) out.insert(f);
  }
  return out;
}

namespace {

std::map<Id, IdSet> partner_map(const Matching& mu) {
  std::map<Id, IdSet> out;
  for (const auto& [f, w] : mu) {
    out[f].insert(w);
    out[w].insert(f);
  }
  return out;
}

const IdSet& lookup(const std::map<Id, IdSet>& pm, const Id& a) {
  static const IdSet empty;
  auto it = pm.find(a);
  return it == pm.end() ? empty : it->second;
}

}  // namespace

RationalityCheck check_individually_rational(const MatchingMarket& m, const Matching& mu) {
  const auto pm = partner_map(mu);
  for (const auto& [f, w] : mu) {
    if (!m.is_firm(f)) return {false, f};
    if (!m.is_worker(w)) return {false, w};
  }
  for (const auto* side : {&m.firms, &m.workers})
    for (const auto& a : *side) {
      const IdSet& mine = lookup(pm, a);
      if (choose(m.choice.at(a), mine) != mine) return {false, a};
    }
  return {};
}

bool is_individually_rational(const MatchingMarket& m, const Matching& mu) {
  return check_individually_rational(m, mu).ok;
}

std::vector<Pair> blocking_pairs(const MatchingMarket& m, const Matching& mu) {
  const auto pm = partner_map(mu);
  std::vector<Pair> out;
  for (const auto& f : m.firms) {
    const ChoiceSpec& cf = m.choice.at(f);
    const IdSet& mf = lookup(pm, f);
    for (const auto& w : spec_universe(cf)) {
      if (mu.count({f, w})) continue;
      const ChoiceSpec& cw = m.choice.at(w);
      IdSet mw = lookup(pm, w);
      mw.insert(f);
      if (!has(choose(cw, mw), f)) continue;
      IdSet fw = mf;
      fw.insert(w);
      if (has(choose(cf, fw), w)) out.emplace_back(f, w);
    }
  }
  return out;
}

bool is_stable(const MatchingMarket& m, const Matching& mu) {
  return is_individually_rational(m, mu) && blocking_pairs(m, mu).empty();
}

Matching deferred_acceptance(const MatchingMarket& m, Side proposing, const DaOptions& opts) {
  detail::Engine eng(m);
  const bool firms_propose = proposing == Side::Firms;
  std::size_t cap = opts.round_cap ? opts.round_cap : std::max<std::size_t>(16, 4 * m.firms.size() * m.workers.size());
  const Bitset all = eng.all_edges();
  Bitset rejected(eng.edge_count());
  Bitset held(eng.edge_count());
  for (std::size_t round = 0; round < cap; ++round) {
    Bitset offers = eng.choose_side(firms_propose, all - rejected);
    Bitset pool = offers | held;
    held = eng.choose_side(!firms_propose, pool);
    Bitset fresh = pool - held;
    if (fresh.none()) return eng.to_matching(held);
    rejected |= fresh;
  }
  throw Error(ErrorKind::NonConvergence,
              "deferred acceptance did not settle within " + std::to_string(cap) + " rounds");
}

namespace {

void bump(std::uint64_t& nodes, std::uint64_t bound) {
  if (++nodes > bound)
    throw Error(ErrorKind::SearchBoundExceeded, "search explored more than " + std::to_string(bound) + " nodes",
                {std::to_string(nodes)});
}

std::vector<Matching> finish(const MatchingMarket& m, std::set<Matching> found) {
  std::vector<Matching> out;
  for (auto& mu : found) {
    if (!is_stable(m, mu))
      throw Error(ErrorKind::NotPathIndependent,
                  "search produced an unstable matching; the market is likely not path-independent");
    out.push_back(mu);
  }
  return out;
}

}  // namespace

namespace {

// Every fixed point X with lo <= X <= hi has phi(lo) <= X <= phi(hi).
bool tighten(const detail::Engine& eng, Bitset& lo, Bitset& hi) {
  while (true) {
    Bitset lo2 = lo | eng.phi(lo);
    Bitset hi2 = hi & eng.phi(hi);
    if (!lo2.is_subset_of(hi2)) return false;
    if (lo2 == lo && hi2 == hi) return true;
    lo = std::move(lo2);
    hi = std::move(hi2);
  }
}

// Tries both values of each open edge; an edge whose one side tightens to
// nothing is forced to the other. Without this the search wanders into huge
// dead subtrees on augmented markets.
bool probe(const detail::Engine& eng, Bitset& lo, Bitset& hi) {
  bool changed = true;
  while (changed && lo != hi) {
    changed = false;
    const Bitset open = hi - lo;
    for (std::size_t e = open.first(); e < open.size(); e = open.next(e + 1)) {
      if (lo.test(e) || !hi.test(e)) continue;
      Bitset in_lo = lo, in_hi = hi;
      in_lo.set(e);
      const bool in_ok = tighten(eng, in_lo, in_hi);
      Bitset out_lo = lo, out_hi = hi;
      out_hi.reset(e);
      const bool out_ok = tighten(eng, out_lo, out_hi);
      if (!in_ok && !out_ok) return false;
      if (!in_ok) {
        lo = std::move(out_lo);
        hi = std::move(out_hi);
        changed = true;
      } else if (!out_ok) {
        lo = std::move(in_lo);
        hi = std::move(in_hi);
        changed = true;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Matching> enumerate_stable(const MatchingMarket& m, const EnumerateOptions& opts, EnumerateStats* stats) {
  detail::Engine eng(m);
  std::set<Matching> found;
  std::uint64_t nodes = 0;

  struct Frame {
    Bitset lo, hi;
  };
  std::vector<Frame> stack;
  stack.push_back({Bitset(eng.edge_count()), eng.all_edges()});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    bump(nodes, opts.node_bound);
    if (!tighten(eng, fr.lo, fr.hi) || !probe(eng, fr.lo, fr.hi)) continue;
    if (fr.lo == fr.hi) {
      if (eng.phi(fr.lo) == fr.lo) found.insert(eng.to_matching(eng.choose_side(true, fr.lo)));
      continue;
    }
    const std::size_t e = (fr.hi - fr.lo).first();
    Frame out{fr.lo, fr.hi};
    out.hi.reset(e);
    fr.lo.set(e);
    stack.push_back(std::move(out));
    stack.push_back(std::move(fr));
  }
  if (stats) stats->nodes = nodes;
  return finish(m, std::move(found));
}

std::vector<Matching> enumerate_stable_backtracking(const MatchingMarket& m, const EnumerateOptions& opts,
                                                    EnumerateStats* stats) {
  validate_market(m);
  const Matching best_w = deferred_acceptance(m, Side::Workers);
  const Matching best_f = deferred_acceptance(m, Side::Firms);

  std::vector<Id> workers = m.workers;
  std::sort(workers.begin(), workers.end());
  std::uint64_t nodes = 0;

  // Candidate sets per worker.
  std::vector<std::vector<IdSet>> cands(workers.size());
  for (std::size_t i = 0; i < workers.size(); ++i) {
    const Id& w = workers[i];
    const ChoiceSpec& cw = m.choice.at(w);
    std::vector<Id> acc;
    for (const auto& f : spec_universe(cw))
      if (has(spec_universe(m.choice.at(f)), w)) acc.push_back(f);
    if (acc.size() > 24)
      throw Error(ErrorKind::SearchBoundExceeded, "worker '" + w + "' has too many acceptable firms to enumerate",
                  {w});
    const IdSet top = partners(best_w, w);
    const IdSet bottom = partners(best_f, w);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << acc.size()); ++mask) {
      bump(nodes, opts.node_bound);
      IdSet s;
      for (std::size_t k = 0; k < acc.size(); ++k)
        if (mask >> k & 1) s.insert(acc[k]);
      if (choose(cw, s) != s) continue;
      IdSet with_top = s, with_bottom = s;
      with_top.insert(top.begin(), top.end());
      with_bottom.insert(bottom.begin(), bottom.end());
      if (choose(cw, with_top) != top || choose(cw, with_bottom) != s) continue;
      cands[i].push_back(std::move(s));
    }
  }

  std::set<Matching> found;
  std::map<Id, IdSet> firm_sets;
  Matching cur;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    bump(nodes, opts.node_bound);
    if (i == workers.size()) {
      if (is_stable(m, cur)) found.insert(cur);
      return;
    }
    const Id& w = workers[i];
    for (const auto& s : cands[i]) {
      bool ok = true;
      for (const auto& f : s) {
        firm_sets[f].insert(w);
        cur.emplace(f, w);
      }
      // A firm rejecting someone now rejects them in every superset too.
      for (const auto& f : s)
        if (choose(m.choice.at(f), firm_sets[f]) != firm_sets[f]) ok = false;
      if (ok) self(self, i + 1);
      for (const auto& f : s) {
        firm_sets[f].erase(w);
        cur.erase({f, w});
      }
    }
  };
  rec(rec, 0);
  if (stats) stats->nodes = nodes;
  return finish(m, std::move(found));
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Greater: return ">=";
    case Comparison::Less: return "<=";
    case Comparison::Equal: return "=";
    case Comparison::Incomparable: return "incomparable";
  }
  return "?";
}

namespace {

Comparison compare_on(const MatchingMarket& m, const std::vector<Id>& side, const Matching& mu, const Matching& nu) {
  const auto pm = partner_map(mu);
  const auto pn = partner_map(nu);
  bool geq = true, leq = true;
  for (const auto& a : side) {
    const IdSet& x = lookup(pm, a);
    const IdSet& y = lookup(pn, a);
    IdSet u = x;
    u.insert(y.begin(), y.end());
    const IdSet c = choose(m.choice.at(a), u);
    if (c != x) geq = false;
    if (c != y) leq = false;
  }
  if (geq && leq) return Comparison::Equal;
  if (geq) return Comparison::Greater;
  if (leq) return Comparison::Less;
  return Comparison::Incomparable;
}

}  // namespace

Comparison blair_compare(const MatchingMarket& m, const Matching& mu, const Matching& nu) {
  if (mu == nu) return Comparison::Equal;
  return compare_on(m, m.firms, mu, nu);
}

Comparison blair_compare_workers(const MatchingMarket& m, const Matching& mu, const Matching& nu) {
  if (mu == nu) return Comparison::Equal;
  switch (compare_on(m, m.workers, mu, nu)) {
    case Comparison::Greater: return Comparison::Less;
    case Comparison::Less: return Comparison::Greater;
    case Comparison::Equal: return Comparison::Equal;
    default: return Comparison::Incomparable;
  }
}

std::vector<Id> matching_ids(std::size_t count) {
  std::size_t width = 2;
  for (std::size_t c = count ? count - 1 : 0; c >= 100; c /= 10) ++width;
  std::vector<Id> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string digits = std::to_string(i);
    out.push_back("m" + std::string(width - std::min(width, digits.size()), '0') + digits);
  }
  return out;
}

Id StableLattice::id_of(const Matching& mu) const {
  for (const auto& [id, nu] : matchings)
    if (nu == mu) return id;
  throw Error(ErrorKind::UnknownElement, "matching is not in the stable lattice");
}

StableLattice lattice_of_matchings(const MatchingMarket& m, const std::vector<Matching>& stable) {
  std::vector<Matching> sorted = stable;
  std::sort(sorted.begin(), sorted.end());
  const auto ids = matching_ids(sorted.size());
  const std::size_t n = sorted.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = blair_compare(m, sorted[i], sorted[j]);
      rel[i][j] = c == Comparison::Less || c == Comparison::Equal;
    }
  StableLattice out;
  out.lattice = lattice_from_order(validate_poset(ids, rel));
  for (std::size_t i = 0; i < n; ++i) out.matchings[ids[i]] = sorted[i];
  return out;
}

StableLattice stable_lattice(const MatchingMarket& m, const EnumerateOptions& opts) {
  return lattice_of_matchings(m, enumerate_stable(m, opts));
}

namespace {

// Partners with equal signatures can be swapped without changing the choice
// function, so subsets need only be visited up to per-class counts.
std::string signature(const ChoiceSpec& spec, const Id& x) {
  std::ostringstream s;
  if (auto* p = std::get_if<PreferenceList>(&spec)) {
    for (std::size_t i = 0; i < p->list.size(); ++i)
      if (has(p->list[i], x)) s << i << ',';
  } else if (auto* t = std::get_if<Triggered>(&spec)) {
    s << has(t->watch, x) << (t->trigger == x) << ':';
    for (const auto& [r, fs] : t->gamma.f_rho)
      if (has(fs, x)) s << r.size() << '.' << r << ',';
  } else if (auto* e = std::get_if<IfElse>(&spec)) {
    s << (e->priority == x) << has(e->else_set, x);
  } else {
    const auto& r = std::get<Regular>(spec);
    long tier = -1;
    for (std::size_t i = 0; i < r.tiers.size(); ++i)
      if (has(r.tiers[i], x)) tier = static_cast<long>(i);
    s << tier << ':';
    for (const auto& [wl, wp] : r.aux_pairs)
      if (wp == x)
        for (std::size_t i = 0; i < r.tiers.size(); ++i)
          if (has(r.tiers[i], wl)) s << i << ',';
  }
  return s.str();
}

struct PiChecker {
  const ChoiceSpec& spec;
  std::vector<Id> ids;  // local universe
  detail::CompiledChoice choice;
  PiReport report;

  IdSet to_ids(const Bitset& b) const {
    IdSet out;
    b.for_each([&](std::size_t k) { out.insert(ids[k]); });
    return out;
  }

  // Single-removal checks of S against S \ {b}; returns false on failure.
  bool check(const Bitset& s, const Bitset& c, std::size_t b) {
    ++report.checked;
    Bitset smaller = s;
    smaller.reset(b);
    const Bitset c2 = choice.choose(smaller);
    Bitset kept = c;
    kept.reset(b);
    if (!kept.is_subset_of(c2)) {
      report.ok = false;
      report.property = "substitutability";
      report.set = to_ids(s);
      report.removed = ids[b];
      report.lost = ids[(kept - c2).first()];
      return false;
    }
    if (!c.test(b) && c2 != c) {
      report.ok = false;
      report.property = "consistency";
      report.set = to_ids(s);
      report.removed = ids[b];
      return false;
    }
    return true;
  }

  bool check_choice_in(const Bitset& s, const Bitset& c) {
    if (c.is_subset_of(s)) return true;
    report.ok = false;
    report.property = "choice outside offered set";
    report.set = to_ids(s);
    return false;
  }
};

}  // namespace

PiReport check_path_independence(const ChoiceSpec& spec, const std::optional<IdSet>& universe, const PiOptions& opts) {
  const IdSet spec_u = spec_universe(spec);
  const IdSet u = universe ? *universe : spec_u;
  IdSet all = spec_u;
  all.insert(u.begin(), u.end());
  PiChecker pc{spec, std::vector<Id>(all.begin(), all.end()), {}, {}};
  pc.choice = detail::CompiledChoice(spec, pc.ids);
  const std::size_t n = pc.ids.size();
  std::vector<std::size_t> members;  // local indices drawn from u
  for (std::size_t k = 0; k < n; ++k)
    if (u.count(pc.ids[k])) members.push_back(k);

  PiMode mode = opts.mode;
  if (mode == PiMode::Auto) mode = members.size() <= opts.exhaustive_limit ? PiMode::Exhaustive : PiMode::Symmetric;
  pc.report.mode_used = mode;

  if (mode == PiMode::Exhaustive) {
    if (members.size() > 30) throw Error(ErrorKind::SearchBoundExceeded, "universe too large for exhaustive check");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size()); ++mask) {
      Bitset s(n);
      for (std::size_t k = 0; k < members.size(); ++k)
        if (mask >> k & 1) s.set(members[k]);
      const Bitset c = pc.choice.choose(s);
      if (!pc.check_choice_in(s, c)) return pc.report;
      for (std::size_t k = 0; k < members.size(); ++k)
        if ((mask >> k & 1) && !pc.check(s, c, members[k])) return pc.report;
    }
    return pc.report;
  }

  if (mode == PiMode::Sampled) {
    std::mt19937_64 rng(opts.seed);
    for (std::size_t it = 0; it < opts.samples; ++it) {
      Bitset s(n);
      for (auto k : members)
        if (rng() & 1) s.set(k);
      const Bitset c = pc.choice.choose(s);
      if (!pc.check_choice_in(s, c)) return pc.report;
      for (auto k : members)
        if (s.test(k) && !pc.check(s, c, k)) return pc.report;
    }
    return pc.report;
  }

  // Symmetric mode: one canonical subset per vector of class counts.
  std::map<std::string, std::vector<std::size_t>> by_sig;
  for (auto k : members) by_sig[signature(spec, pc.ids[k])].push_back(k);
  std::vector<std::vector<std::size_t>> classes;
  for (auto& [sig, ks] : by_sig) classes.push_back(ks);
  std::vector<std::size_t> count(classes.size(), 0);
  while (true) {
    Bitset s(n);
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = 0; j < count[i]; ++j) s.set(classes[i][j]);
    const Bitset c = pc.choice.choose(s);
    if (!pc.check_choice_in(s, c)) return pc.report;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (count[i] == 0) continue;
      // Equivalent partners inside S are chosen all together or not at all.
      std::size_t chosen = 0;
      for (std::size_t j = 0; j < count[i]; ++j) chosen += c.test(classes[i][j]);
      if (chosen != 0 && chosen != count[i]) {
        pc.report.ok = false;
        pc.report.property = "symmetry";
        pc.report.set = pc.to_ids(s);
        return pc.report;
      }
      if (!pc.check(s, c, classes[i][0])) return pc.report;
    }
    std::size_t i = 0;
    while (i < classes.size() && count[i] == classes[i].size()) count[i++] = 0;
    if (i == classes.size()) break;
    ++count[i];
  }
  return pc.report;
}

}  // namespace latmatch
