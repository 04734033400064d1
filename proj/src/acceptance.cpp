#include "latmatch/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "latmatch/antimatroid.hpp"
#include "latmatch/augment.hpp"
#include "latmatch/fixtures.hpp"
#include "latmatch/generate.hpp"
#include "latmatch/io.hpp"
#include "latmatch/realize.hpp"

namespace latmatch::acceptance {

namespace {

struct Tally {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  bool expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond) failures.push_back(what);
    return cond;
  }
};

std::vector<Matching> sorted(std::vector<Matching> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Markets built by criteria 4 and 5, checked again by criterion 6.
struct Shared {
  std::vector<std::pair<std::string, MatchingMarket>> augmented;
};

// ---- 1

void table_of_six_element(Tally& t, Shared&, const Options&) {
  const auto psi = canonical_partial_rep(fixtures::six_element());
  const std::map<Id, IdSet> expected = {{"a", {}},         {"b", {"b"}},      {"c", {"c"}},
                                        {"d", {"c", "d"}}, {"e", {"c", "e"}}, {"f", {"b", "c", "d", "e"}}};
  for (const auto& [x, s] : expected) {
    auto it = psi.find(x);
    t.expect(it != psi.end() && it->second == s,
             "partial representation of " + x + " is " + (it == psi.end() ? "missing" : set_name(it->second)) + ", expected " + set_name(s));
  }
  t.expect(psi.size() == expected.size(), "table has " + std::to_string(psi.size()) + " rows");
}

// ---- 2

void filter_of_six_element(Tally& t, Shared&, const Options&) {
  const auto l = fixtures::six_element();
  const auto ji = join_irreducibles(l);
  const auto family = lower_sets(ji.order);
  t.expect(family.size() == 10, "join-irreducibles have " + std::to_string(family.size()) + " lower sets, expected 10");
  const auto kept = filter_lower_sets(family, constraints_from_lattice(l));
  const std::vector<IdSet> expected = {{}, {"b"}, {"c"}, {"c", "d"}, {"c", "e"}, {"b", "c", "d", "e"}};
  std::set<IdSet> got(kept.begin(), kept.end());
  t.expect(got == std::set<IdSet>(expected.begin(), expected.end()) && kept.size() == expected.size(),
           "filtered family has " + std::to_string(kept.size()) + " sets");
  const auto iso = check_order_isomorphism(canonical_partial_rep(l), l.order(), kept);
  t.expect(iso.ok, "containment on the filtered family is not isomorphic to the lattice: " + iso.reason);
}

// ---- 3

std::map<Id, Id> paper_name_by_pairs(const RotationPoset& rp) {
  std::map<Id, Id> out;
  for (const auto& [name, r] : fixtures::gi_rotations())
    for (const auto& [id, x] : rp.rotations)
      if (x.plus == r.plus && x.minus == r.minus) out[id] = name;
  return out;
}

void golden_instance(Tally& t, Shared&, const Options& opts) {
  const auto m = fixtures::gi_market();
  const auto mus = fixtures::gi_matchings();
  std::vector<Matching> expected;
  for (const auto& [k, mu] : mus) expected.push_back(mu);
  const auto stable = enumerate_stable(m, {opts.node_bound});
  t.expect(sorted(stable) == sorted(expected), "enumeration returned " + std::to_string(stable.size()) + " matchings");

  const auto rp = extract_rotations(m, {opts.node_bound});
  const auto names = paper_name_by_pairs(rp);
  t.expect(rp.rotations.size() == 4, std::to_string(rp.rotations.size()) + " rotations extracted");
  t.expect(names.size() == 4, "only " + std::to_string(names.size()) + " rotations match a listed pair set");
  if (names.size() == 4) {
    std::map<Id, Id> id_of;
    for (const auto& [id, name] : names) id_of[name] = id;
    std::set<std::pair<Id, Id>> strict;
    for (const auto& [a, na] : names)
      for (const auto& [b, nb] : names)
        if (rp.order.lt(a, b)) strict.emplace(na, nb);
    t.expect(strict == std::set<std::pair<Id, Id>>{{"rho1", "rho3"}, {"rho1", "rho4"}},
             "rotation order differs from rho1 < rho3, rho1 < rho4");
  }
  t.expect(deferred_acceptance(m, Side::Firms) == mus.at("mu10"), "firm-proposing outcome is not mu10");
  t.expect(deferred_acceptance(m, Side::Workers) == mus.at("mu1"), "worker-proposing outcome is not mu1");
}

// ---- 4

PreferenceList strict_list(std::initializer_list<const char*> ids) {
  PreferenceList p;
  for (const char* id : ids) p.list.push_back({id});
  return p;
}

void worked_augmentation(Tally& t, Shared& shared, const Options& opts) {
  const auto base = fixtures::gi_base();
  const auto rjc = derive_sets(fixtures::gi_worked_constraint(), base.rotation_poset);
  t.expect(rjc.alpha_firms == IdSet{"f1", "f2", "f3", "f4", "f5"}, "alpha firms = " + set_name(rjc.alpha_firms));
  t.expect(rjc.beta_workers == IdSet{"w3", "w4", "w6", "w7"}, "beta workers = " + set_name(rjc.beta_workers));
  const auto em = augment(as_extendable(base), rjc);
  const auto& m = em.market;
  shared.augmented.emplace_back("worked augmentation", m);

  const std::map<Id, std::vector<std::pair<Id, Id>>> a_f = {
      {"f1", {{"w1", "w0#1"}}}, {"f2", {{"w2", "w0#1"}}}, {"f3", {{"w3", "w0#1"}}},
      {"f4", {{"w4", "w0#1"}}}, {"f5", {{"w5", "w0#1"}}}};
  t.expect(em.a_f == a_f, "aux pair table of the base firms differs");

  const std::map<Id, PreferenceList> copies = {{"w3#1", strict_list({"f0#1", "f6"})},
                                               {"w4#1", strict_list({"f0#1", "f7"})},
                                               {"w6#1", strict_list({"f0#1", "f4"})},
                                               {"w7#1", strict_list({"f0#1", "f2"})}};
  for (const auto& [w, list] : copies) {
    auto it = m.choice.find(w);
    t.expect(it != m.choice.end() && std::holds_alternative<PreferenceList>(it->second) &&
                 std::get<PreferenceList>(it->second) == list,
             "list of copy " + w + " differs");
  }
  const auto gi = fixtures::gi_market();
  for (const auto& w : gi.workers) t.expect(m.choice.at(w) == gi.choice.at(w), "base worker " + w + " changed its list");

  auto f0 = m.choice.find("f0#1");
  t.expect(f0 != m.choice.end() && f0->second == ChoiceSpec{IfElse{"w0#1", {"w3#1", "w4#1", "w6#1", "w7#1"}}},
           "aux firm f0 does not prefer w0 over the beta-worker copies");
  auto w0 = m.choice.find("w0#1");
  t.expect(w0 != m.choice.end() && std::holds_alternative<Triggered>(w0->second) &&
               std::get<Triggered>(w0->second).watch == rjc.alpha_firms &&
               std::get<Triggered>(w0->second).trigger == "f0#1",
           "aux worker w0 does not watch the alpha firms with trigger f0");

  // Firm lists written out as preference lists, compared on every subset.
  PreferenceList f1;
  f1.list = {{"w5"}, {"w0#1", "w1"}, {"w1"}, {"w0#1"}};
  PreferenceList f7;
  f7.list = {{"w4", "w4#1"}, {"w4"}, {"w4#1"}, {"w7", "w7#1"}, {"w7"}, {"w7#1"}};
  const std::vector<Id> u = {"w0#1", "w1", "w4", "w4#1", "w5", "w7", "w7#1"};
  for (const auto& [firm, list] : {std::pair{"f1", f1}, std::pair{"f7", f7}}) {
    bool same = true;
    for (unsigned mask = 0; mask < (1u << u.size()); ++mask) {
      IdSet offer;
      for (std::size_t k = 0; k < u.size(); ++k)
        if (mask >> k & 1) offer.insert(u[k]);
      same = same && choose(m, firm, offer) == choose(ChoiceSpec{list}, offer);
    }
    t.expect(same, std::string("choice of ") + firm + " differs from its written list");
  }

  const auto stable = enumerate_stable(m, {opts.node_bound});
  std::vector<Matching> expected;
  for (const auto& [k, mu] : fixtures::aug_matchings()) expected.push_back(mu);
  t.expect(sorted(stable) == sorted(expected), "augmented market has " + std::to_string(stable.size()) +
                                                   " stable matchings, expected the 7 listed");
  std::set<Matching> image;
  for (const auto& mu : stable) image.insert(project_xi(em, mu));
  const auto mus = fixtures::gi_matchings();
  const std::set<Matching> want = {mus.at("mu1"), mus.at("mu2"), mus.at("mu3"), mus.at("mu5"),
                                   mus.at("mu6"), mus.at("mu9"), mus.at("mu10")};
  t.expect(image == want, "projections are not {mu1,mu2,mu3,mu5,mu6,mu9,mu10}");
}

// ---- 5

struct SynthesisStats {
  double worst_ratio = 0;
  std::string worst_name;
  std::size_t lattices = 0;
};

void synthesis_suite(Tally& t, Shared& shared, const Options& opts, SynthesisStats& stats) {
  std::vector<std::pair<std::string, Lattice>> cases = {
      {"six-element", fixtures::six_element()}, {"N5", fixtures::pentagon()}, {"M3", fixtures::diamond()}};
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = all_lattices(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      cases.emplace_back("all(" + std::to_string(n) + ")#" + std::to_string(i), all[i]);
  }
  Rng rng(opts.seed);
  for (int i = 0; i < 50; ++i) cases.emplace_back("random#" + std::to_string(i), random_lattice(rng, 8));

  for (const auto& [name, l] : cases) {
    ++stats.lattices;
    try {
      const auto s = synthesize_from_lattice(l, {opts.node_bound});
      std::map<Id, Id> f;
      for (const auto& [x, mu] : s.iso) f[x] = s.stable.id_of(mu);
      const auto iso = check_order_isomorphism(f, l.order(), s.stable.lattice.order());
      t.expect(iso.ok, name + ": " + iso.reason);
      const double x4 = std::pow(static_cast<double>(l.size()), 4);
      const double agents = static_cast<double>(s.market.market.agent_count());
      t.expect(agents <= kAgentConstant * x4, name + ": " + std::to_string(s.market.market.agent_count()) +
                                                  " agents for " + std::to_string(l.size()) + " elements");
      if (agents / x4 > stats.worst_ratio) {
        stats.worst_ratio = agents / x4;
        stats.worst_name = name;
      }
      shared.augmented.emplace_back(name, s.market.market);
    } catch (const Error& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
}

// ---- 6

void path_independence_suite(Tally& t, Shared& shared, const Options&, std::size_t& distinct) {
  std::set<std::string> seen;
  for (const auto& [name, m] : shared.augmented)
    for (const auto& [agent, spec] : m.choice) {
      if (!seen.insert(io::choice_to_json(spec).dump()).second) continue;
      const auto rep = check_path_independence(spec);
      t.expect(rep.ok, name + " agent " + agent + ": " + rep.property + " fails at " + set_name(rep.set) +
                           " removing " + rep.removed);
    }
  distinct = seen.size();
}

// ---- 7

void antimatroid_suite(Tally& t, Shared&, const Options& opts) {
  const auto a = fixtures::ant();
  const auto check = check_antimatroid(a);
  t.expect(check.ok, "four-element fixture rejected: " + check.reason);
  t.expect(endpoints(a, {"a", "c", "d"}) == IdSet{"d"}, "{a,c,d} endpoints " + set_name(endpoints(a, {"a", "c", "d"})));
  const auto pp = compute_path_poset(a);
  for (const auto& [s, e] : std::vector<std::pair<IdSet, Id>>{{{"a"}, "a"}, {{"a", "c"}, "c"}, {{"a", "c", "d"}, "d"}}) {
    t.expect(endpoints(a, s) == IdSet{e}, set_name(s) + " does not have unique endpoint " + e);
    t.expect(std::find(pp.paths.begin(), pp.paths.end(), Path{s, e}) != pp.paths.end(), set_name(s) + " is not a path");
  }
  auto filter_matches = [&](const Antimatroid& x, const std::string& name) {
    const auto got = filter_subsets(x.ground, antimatroid_constraints(compute_path_poset(x)));
    t.expect(got == x.feasible, name + ": constraint filter keeps " + std::to_string(got.size()) + " sets, family has " +
                                    std::to_string(x.feasible.size()));
  };
  filter_matches(a, "four-element fixture");
  Rng rng(opts.seed);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_antimatroid(rng, 1 + rng() % 6);
    filter_matches(r, "random#" + std::to_string(i));
  }
}

// ---- 8

std::size_t independence_number(const Graph& g) {
  const std::size_t n = g.vertices.size();
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IdSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(g.vertices[i]);
    bool independent = true;
    for (const auto& [u, v] : g.edges) independent = independent && !(s.count(u) && s.count(v));
    if (independent) best = std::max(best, s.size());
  }
  return best;
}

void reduction_suite(Tally& t, Shared&, const Options& opts) {
  std::vector<std::pair<std::string, Graph>> graphs = {
      {"K3", complete_graph(3)}, {"P3", path_graph(3)}, {"C4", cycle_graph(4)}, {"C5", cycle_graph(5)}};
  Rng rng(opts.seed);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = 1 + rng() % 5;
    graphs.emplace_back("random#" + std::to_string(i), random_graph(rng, n, 0.5));
  }
  for (const auto& [name, g] : graphs) {
    try {
      const auto wa = independent_set_antimatroid(g);
      const auto red = reduce_to_matching(compute_path_poset(wa.family), wa.weights);
      for (const auto sense : {Sense::Min, Sense::Max}) {
        const char* tag = sense == Sense::Min ? "min" : "max";
        const auto brute = min_cost_feasible(wa.family, wa.weights, sense);
        const auto opt = min_cost_stable(red.market.market, red.costs, sense, {opts.node_bound});
        t.expect(opt.value == Rational(brute.value), name + " " + tag + ": market optimum " +
                                                         std::to_string(opt.value.numerator()) + "/" +
                                                         std::to_string(opt.value.denominator()) +
                                                         " vs family optimum " + std::to_string(brute.value));
        const auto rec = red.recover(opt.matching);
        t.expect(is_feasible(wa.family, rec), name + " " + tag + ": recovered " + set_name(rec) + " is not feasible");
        t.expect(ground_cost(wa.weights, rec) == brute.value, name + " " + tag + ": recovered set is not optimal");
        if (sense == Sense::Max)
          t.expect(opt.value == Rational(static_cast<long long>(independence_number(g))),
                   name + ": max weight differs from the independence number");
      }
    } catch (const Error& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
}

// ---- 9

void round_trip_suite(Tally& t, Shared&, const Options& opts) {
  std::vector<std::pair<std::string, MatchingMarket>> markets = {{"golden", fixtures::gi_market()}};
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<Id> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
    markets.emplace_back("antichain(" + std::to_string(n) + ")", antichain_base(ids).market);
  }
  Rng rng(opts.seed);
  for (int i = 0; i < 40; ++i)
    markets.emplace_back("random#" + std::to_string(i), random_one_to_one_market(rng, 5, 5, 0.8));
  for (const auto& [name, m] : markets) {
    try {
      const auto rp = extract_rotations(m, {opts.node_bound});
      for (const auto& d : lower_sets(rp.order)) {
        const auto back = psi_s(rp, psi_s_inverse(rp, d));
        t.expect(back == d, name + ": psi_s(psi_s_inverse(" + set_name(d) + ")) = " + set_name(back));
      }
      const auto sl = stable_lattice(m, {opts.node_bound});
      std::map<Id, IdSet> f;
      for (const auto& [id, mu] : sl.matchings) f[id] = psi_s(rp, mu);
      const auto iso = check_order_isomorphism(f, sl.lattice.order(), lower_sets(rp.order));
      t.expect(iso.ok, name + ": " + iso.reason);
    } catch (const Error& e) {
      t.expect(false, name + ": " + e.what());
    }
  }
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

std::vector<Criterion> run(const Options& opts, const std::vector<int>& only) {
  auto wanted = [&](int n) {
    if (only.empty()) return true;
    if (std::find(only.begin(), only.end(), n) != only.end()) return true;
    // 6 checks the markets built by 4 and 5.
    return (n == 4 || n == 5) && std::find(only.begin(), only.end(), 6) != only.end();
  };
  Shared shared;
  SynthesisStats synth;
  std::size_t distinct_specs = 0;

  struct Entry {
    int number;
    const char* title;
    double limit;
    std::function<void(Tally&)> body;
  };
  const std::vector<Entry> entries = {
      {1, "partial representation table of the six-element lattice", 1,
       [&](Tally& t) { table_of_six_element(t, shared, opts); }},
      {2, "join-constraint filter of the six-element lattice", 1,
       [&](Tally& t) { filter_of_six_element(t, shared, opts); }},
      {3, "golden one-to-one instance", 5, [&](Tally& t) { golden_instance(t, shared, opts); }},
      {4, "worked augmentation", 30, [&](Tally& t) { worked_augmentation(t, shared, opts); }},
      {5, "lattice synthesis suite", 600, [&](Tally& t) { synthesis_suite(t, shared, opts, synth); }},
      {6, "path independence of augmented choice functions", 120,
       [&](Tally& t) { path_independence_suite(t, shared, opts, distinct_specs); }},
      {7, "antimatroid paths and constraint filter", 120, [&](Tally& t) { antimatroid_suite(t, shared, opts); }},
      {8, "antimatroid to stable matching reduction", 600, [&](Tally& t) { reduction_suite(t, shared, opts); }},
      {9, "rotation representation round trip", 60, [&](Tally& t) { round_trip_suite(t, shared, opts); }},
  };

  std::vector<Criterion> out;
  for (const auto& e : entries) {
    if (!wanted(e.number)) continue;
    Criterion c;
    c.number = e.number;
    c.title = e.title;
    c.limit_seconds = e.limit;
    Tally t;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.body(t);
    } catch (const std::exception& ex) {
      t.expect(false, std::string("aborted: ") + ex.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds >= c.limit_seconds)
      t.failures.push_back("took " + fixed(c.seconds, 3) + " s, limit " + fixed(c.limit_seconds, 0) + " s");
    c.failures = t.failures;
    c.ok = t.failures.empty();
    if (!c.ok) {
      c.detail = std::to_string(t.failures.size()) + " failed; first: " + t.failures.front();
    } else {
      c.detail = std::to_string(t.checks) + " checks";
      if (e.number == 5)
        c.detail += ", " + std::to_string(synth.lattices) + " lattices, agents <= " + fixed(kAgentConstant, 1) +
                    " |X|^4 (largest ratio " + fixed(synth.worst_ratio, 3) + " on " + synth.worst_name + ")";
      if (e.number == 6) c.detail += " over " + std::to_string(distinct_specs) + " distinct choice functions";
    }
    out.push_back(std::move(c));
  }
  if (!only.empty())
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const Criterion& c) {
                               return std::find(only.begin(), only.end(), c.number) == only.end();
                             }),
              out.end());
  return out;
}

std::string format_line(const Criterion& c) {
  return "criterion " + std::to_string(c.number) + " " + (c.ok ? "PASS" : "FAIL") + "  " + fixed(c.seconds, 3) + "s/" +
         fixed(c.limit_seconds, 0) + "s  " + c.title + ": " + c.detail;
}

}  // namespace latmatch::acceptance
