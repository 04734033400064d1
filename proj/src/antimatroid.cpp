#include "latmatch/antimatroid.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "latmatch/generate.hpp"

namespace latmatch {

namespace {

using Mask = std::uint64_t;

// Ground-indexed bitmask view of a family.
struct Masks {
  std::vector<Id> ground;
  std::map<Id, std::size_t> index;
  std::vector<Mask> family;
  std::set<Mask> lookup;

  explicit Masks(const Antimatroid& a) : ground(a.ground) {
    if (ground.size() > 62)
      throw Error(ErrorKind::InvalidInput, "ground set of " + std::to_string(ground.size()) + " elements is too large");
    for (std::size_t i = 0; i < ground.size(); ++i) index[ground[i]] = i;
    for (const auto& s : a.feasible) {
      family.push_back(mask(s));
      lookup.insert(family.back());
    }
  }

  Mask mask(const IdSet& s) const {
    Mask m = 0;
    for (const auto& x : s) {
      auto it = index.find(x);
      if (it == index.end()) throw Error(ErrorKind::UnknownElementId, "'" + x + "' is not in the ground set", {x});
      m |= Mask{1} << it->second;
    }
    return m;
  }

  IdSet ids(Mask m) const {
    IdSet out;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (m >> i & 1) out.insert(ground[i]);
    return out;
  }

  bool has(Mask m) const { return lookup.count(m) != 0; }

  Mask endpoints(Mask g) const {
    Mask out = 0;
    for (Mask rest = g; rest; rest &= rest - 1) {
      const Mask bit = rest & (~rest + 1);
      if (has(g & ~bit)) out |= bit;
    }
    return out;
  }
};

std::vector<IdSet> canonical(std::vector<IdSet> sets) {
  std::sort(sets.begin(), sets.end(), BySizeThenLex{});
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

}  // namespace

Antimatroid make_antimatroid(std::vector<Id> ground, std::vector<IdSet> feasible) {
  std::sort(ground.begin(), ground.end());
  if (std::adjacent_find(ground.begin(), ground.end()) != ground.end())
    throw Error(ErrorKind::DuplicateId, "ground element listed twice", {*std::adjacent_find(ground.begin(), ground.end())});
  return Antimatroid{std::move(ground), canonical(std::move(feasible))};
}

AntimatroidCheck check_antimatroid(const Antimatroid& a) {
  const Masks m(a);
  const Mask all = m.ground.size() == 64 ? ~Mask{0} : (Mask{1} << m.ground.size()) - 1;
  for (std::size_t i = 0; i < m.family.size(); ++i)
    for (std::size_t j = i + 1; j < m.family.size(); ++j)
      if (!m.has(m.family[i] | m.family[j]))
        return {false, "not closed under union", {a.feasible[i], a.feasible[j]}};
  if (!m.has(all)) return {false, "the ground set is not feasible", {IdSet(a.ground.begin(), a.ground.end())}};
  if (!m.has(0)) return {false, "the empty set is not feasible", {IdSet{}}};
  for (std::size_t i = 0; i < m.family.size(); ++i)
    if (m.family[i] && !m.endpoints(m.family[i])) return {false, "not accessible", {a.feasible[i]}};
  return {};
}

void validate_antimatroid(const Antimatroid& a) {
  const auto check = check_antimatroid(a);
  if (check.ok) return;
  std::vector<Id> names;
  for (const auto& s : check.witness) names.push_back(set_name(s));
  throw Error(ErrorKind::NotAnAntimatroid, check.reason, names);
}

bool is_feasible(const Antimatroid& a, const IdSet& s) {
  return std::binary_search(a.feasible.begin(), a.feasible.end(), s, BySizeThenLex{});
}

IdSet endpoints(const Antimatroid& a, const IdSet& g_set) {
  const Masks m(a);
  return m.ids(m.endpoints(m.mask(g_set)));
}

std::vector<IdSet> union_irreducible_sets(const Antimatroid& a) {
  const Masks m(a);
  std::vector<IdSet> out;
  for (std::size_t i = 0; i < m.family.size(); ++i) {
    const Mask g = m.family[i];
    if (!g) continue;
    Mask covered = 0;
    for (Mask h : m.family)
      if (h != g && (h & ~g) == 0) covered |= h;
    if (covered != g) out.push_back(a.feasible[i]);
  }
  return out;
}

PathPoset compute_path_poset(const Antimatroid& a) {
  validate_antimatroid(a);
  const Masks m(a);
  PathPoset pp;
  pp.ground = a.ground;
  std::vector<IdSet> by_endpoint;
  for (std::size_t i = 0; i < m.family.size(); ++i) {
    const Mask e = m.endpoints(m.family[i]);
    if (std::popcount(e) != 1) continue;
    pp.paths.push_back({a.feasible[i], m.ground[static_cast<std::size_t>(std::countr_zero(e))]});
    by_endpoint.push_back(a.feasible[i]);
  }
  if (by_endpoint != union_irreducible_sets(a))
    throw Error(ErrorKind::NotAnAntimatroid, "single-endpoint sets differ from union-irreducible sets");
  return pp;
}

std::vector<Path> paths_within(const PathPoset& pp, const IdSet& s) {
  std::vector<Path> out;
  for (const auto& p : pp.paths)
    if (std::includes(s.begin(), s.end(), p.set.begin(), p.set.end())) out.push_back(p);
  return out;
}

Antimatroid family_from_path_poset(const PathPoset& pp) {
  std::set<IdSet> family = {IdSet{}};
  for (const auto& p : pp.paths) {
    std::vector<IdSet> grown;
    for (const auto& s : family) {
      IdSet u = s;
      u.insert(p.set.begin(), p.set.end());
      grown.push_back(std::move(u));
    }
    family.insert(grown.begin(), grown.end());
  }
  return make_antimatroid(pp.ground, std::vector<IdSet>(family.begin(), family.end()));
}

std::vector<ComplementJoinConstraint> antimatroid_constraints(const PathPoset& pp) {
  std::vector<ComplementJoinConstraint> out;
  for (const auto& x : pp.ground) {
    ComplementJoinConstraint cjc;
    cjc.beta_c = {x};
    for (const auto& p : pp.paths) {
      if (p.endpoint != x) continue;
      IdSet group;
      for (const auto& q : paths_within(pp, p.set)) group.insert(q.endpoint);
      cjc.alpha_c_groups.push_back(std::move(group));
    }
    out.push_back(cjc.canonicalize());
  }
  return out;
}

std::vector<IdSet> filter_subsets(const std::vector<Id>& ground, const std::vector<ComplementJoinConstraint>& omega) {
  if (ground.size() > 24)
    throw Error(ErrorKind::InvalidInput, "ground set of " + std::to_string(ground.size()) + " elements is too large");
  std::vector<IdSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground.size()); ++mask) {
    IdSet t;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (mask >> i & 1) t.insert(ground[i]);
    if (std::all_of(omega.begin(), omega.end(), [&](const auto& c) { return satisfies_complement(t, c); }))
      out.push_back(std::move(t));
  }
  return canonical(std::move(out));
}

Id edge_id(const Id& u, const Id& v) { return u < v ? "e:" + u + "-" + v : "e:" + v + "-" + u; }

namespace {

std::vector<Id> numbered_vertices(std::size_t n) {
  std::vector<Id> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

}  // namespace

Graph complete_graph(std::size_t n) {
  Graph g{numbered_vertices(n), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g{numbered_vertices(n), {}};
  for (std::size_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(g.vertices[i], g.vertices[i + 1]);
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g = path_graph(n);
  if (n >= 3) g.edges.emplace_back(g.vertices[n - 1], g.vertices[0]);
  return g;
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, double density) {
  Graph g{numbered_vertices(n), {}};
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
  return g;
}

WeightedAntimatroid independent_set_antimatroid(const Graph& g) {
  IdSet vertices(g.vertices.begin(), g.vertices.end());
  if (vertices.size() != g.vertices.size()) throw Error(ErrorKind::DuplicateId, "vertex listed twice");
  std::map<Id, std::pair<Id, Id>> edges;
  std::map<Id, long long> degree;
  for (const auto& [u, v] : g.edges) {
    if (!vertices.count(u) || !vertices.count(v))
      throw Error(ErrorKind::InvalidInput, "edge endpoint is not a vertex", {u, v});
    if (u == v) throw Error(ErrorKind::InvalidInput, "self-loop on " + u, {u});
    const Id id = edge_id(u, v);
    if (vertices.count(id)) throw Error(ErrorKind::DuplicateId, "edge id collides with a vertex", {id});
    if (!edges.emplace(id, std::minmax(u, v)).second) throw Error(ErrorKind::DuplicateId, "edge listed twice", {id});
    ++degree[u];
    ++degree[v];
  }
  if (g.vertices.size() > 20) throw Error(ErrorKind::InvalidInput, "too many vertices");

  WeightedAntimatroid out;
  std::vector<Id> ground(g.vertices.begin(), g.vertices.end());
  for (const auto& [id, uv] : edges) ground.push_back(id);
  for (const auto& v : g.vertices) out.weights[v] = 1 - degree[v];
  for (const auto& [id, uv] : edges) out.weights[id] = 1;

  std::vector<IdSet> feasible;
  for (std::uint64_t vm = 0; vm < (std::uint64_t{1} << g.vertices.size()); ++vm) {
    IdSet s;
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (vm >> i & 1) s.insert(g.vertices[i]);
    std::vector<Id> allowed;
    for (const auto& [id, uv] : edges)
      if (s.count(uv.first) || s.count(uv.second)) allowed.push_back(id);
    if (allowed.size() > 24) throw Error(ErrorKind::InvalidInput, "too many edges");
    for (std::uint64_t em = 0; em < (std::uint64_t{1} << allowed.size()); ++em) {
      IdSet t = s;
      for (std::size_t i = 0; i < allowed.size(); ++i)
        if (em >> i & 1) t.insert(allowed[i]);
      feasible.push_back(std::move(t));
    }
  }
  out.family = make_antimatroid(std::move(ground), std::move(feasible));
  return out;
}

long long ground_cost(const GroundCosts& c, const IdSet& s) {
  long long total = 0;
  for (const auto& x : s) {
    auto it = c.find(x);
    if (it != c.end()) total += it->second;
  }
  return total;
}

Rational pair_cost(const PairCosts& c, const Matching& mu) {
  Rational total = 0;
  for (const auto& p : mu) {
    auto it = c.find(p);
    if (it != c.end()) total += it->second;
  }
  return total;
}

FeasibleOptimum min_cost_feasible(const Antimatroid& a, const GroundCosts& c, Sense sense) {
  if (a.feasible.empty()) throw Error(ErrorKind::NotAnAntimatroid, "empty family");
  const long long sign = sense == Sense::Min ? 1 : -1;
  FeasibleOptimum best{a.feasible.front(), ground_cost(c, a.feasible.front())};
  for (const auto& s : a.feasible) {
    const long long v = ground_cost(c, s);
    if (sign * v < sign * best.value) best = {s, v};
  }
  return best;
}

PairCosts transfer_costs(const RealizedBase& base, const GroundCosts& c) {
  for (const auto& [x, cost] : c)
    if (!base.phi.count(x)) throw Error(ErrorKind::UnknownElementId, "no rotation for '" + x + "'", {x});
  PairCosts out;
  for (const auto& [x, rho] : base.phi) {
    const auto& r = base.rotation_poset.rotations.at(rho);
    auto it = c.find(x);
    const long long cost = it == c.end() ? 0 : it->second;
    for (const auto& p : r.minus) out[p] = Rational(cost, static_cast<long long>(r.minus.size()));
  }
  return out;
}

IdSet Reduction::recover(const Matching& mu) const {
  const IdSet applied = psi_s(base.rotation_poset, project_xi(market, mu));
  IdSet out;
  for (const auto& [x, rho] : base.phi)
    if (!applied.count(rho)) out.insert(x);
  return out;
}

Reduction reduce_to_matching(const PathPoset& pp, const GroundCosts& c) {
  Reduction r;
  r.base = antichain_base(pp.ground);
  for (const auto& cjc : antimatroid_constraints(pp)) r.omega.push_back(uncomplement(cjc));
  r.market = omega_extend(r.base, r.omega);
  r.costs = transfer_costs(r.base, c);
  return r;
}

StableOptimum min_cost_stable(const MatchingMarket& m, const PairCosts& c, Sense sense, const EnumerateOptions& opts) {
  const auto stable = enumerate_stable(m, opts);
  if (stable.empty()) throw Error(ErrorKind::InvalidMarket, "market has no stable matching");
  StableOptimum best{stable.front(), pair_cost(c, stable.front())};
  for (const auto& mu : stable) {
    const Rational v = pair_cost(c, mu);
    if (sense == Sense::Min ? v < best.value : v > best.value) best = {mu, v};
  }
  return best;
}

Antimatroid random_antimatroid(std::mt19937_64& rng, std::size_t n) {
  if (n > 12) throw Error(ErrorKind::InvalidInput, "random antimatroids are limited to 12 elements");
  const Mask all = (Mask{1} << n) - 1;
  std::set<Mask> family = {0, all};
  std::uniform_int_distribution<Mask> pick(0, all);
  const std::size_t seeds = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
  for (std::size_t i = 0; i < seeds; ++i) family.insert(pick(rng));

  bool changed = true;
  while (changed) {
    changed = false;
    // Close under union.
    std::vector<Mask> cur(family.begin(), family.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j)
        if (family.insert(cur[i] | cur[j]).second) changed = true;
    if (changed) continue;
    // Repair one inaccessible set by adding a random one-smaller subset.
    for (Mask g : family) {
      if (!g) continue;
      bool accessible = false;
      std::vector<Mask> bits;
      for (Mask rest = g; rest; rest &= rest - 1) {
        const Mask bit = rest & (~rest + 1);
        bits.push_back(bit);
        accessible = accessible || family.count(g & ~bit);
      }
      if (accessible) continue;
      family.insert(g & ~bits[std::uniform_int_distribution<std::size_t>(0, bits.size() - 1)(rng)]);
      changed = true;
      break;
    }
  }

  std::vector<Id> ground;
  for (std::size_t i = 1; i <= n; ++i) ground.push_back("v" + std::to_string(i));
  std::vector<IdSet> sets;
  for (Mask f : family) {
    IdSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (f >> i & 1) s.insert(ground[i]);
    sets.push_back(std::move(s));
  }
  return make_antimatroid(std::move(ground), std::move(sets));
}

}  // namespace latmatch
