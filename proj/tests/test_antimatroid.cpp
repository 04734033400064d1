#include "doctest.h"

#include "latmatch/antimatroid.hpp"
#include "latmatch/fixtures.hpp"
#include "latmatch/generate.hpp"

using namespace latmatch;

namespace {

// Literal pairwise form: nonempty and not A u B for feasible A, B != G.
std::vector<IdSet> not_union_of_two(const Antimatroid& a) {
  std::vector<IdSet> out;
  for (const auto& g : a.feasible) {
    if (g.empty()) continue;
    bool split = false;
    for (const auto& x : a.feasible)
      for (const auto& y : a.feasible) {
        if (x == g || y == g) continue;
        IdSet u = x;
        u.insert(y.begin(), y.end());
        split = split || u == g;
      }
    if (!split) out.push_back(g);
  }
  return out;
}

std::size_t independence_number(const Graph& g) {
  std::size_t best = 0;
  const std::size_t n = g.vertices.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    IdSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.insert(g.vertices[i]);
    bool independent = true;
    for (const auto& [u, v] : g.edges) independent = independent && !(s.count(u) && s.count(v));
    if (independent) best = std::max(best, s.size());
  }
  return best;
}

GroundCosts random_costs(Rng& rng, const std::vector<Id>& ground) {
  GroundCosts c;
  std::uniform_int_distribution<long long> d(-4, 4);
  for (const auto& x : ground) c[x] = d(rng);
  return c;
}

}  // namespace

TEST_CASE("the four-element fixture") {
  const auto a = fixtures::ant();
  validate_antimatroid(a);
  CHECK(a.feasible.size() == 8);
  CHECK(endpoints(a, {"a", "c", "d"}) == IdSet{"d"});
  CHECK(endpoints(a, {}).empty());
  CHECK(endpoints(a, {"a", "c"}) == IdSet{"c"});

  const auto pp = compute_path_poset(a);
  std::vector<Path> expected = {{{"a"}, "a"}, {{"b"}, "b"}, {{"a", "c"}, "c"}, {{"a", "c", "d"}, "d"}};
  CHECK(pp.paths == expected);
  // Each element of {a,c,d} ends a path inside it.
  IdSet ends;
  for (const auto& p : paths_within(pp, {"a", "c", "d"})) ends.insert(p.endpoint);
  CHECK(ends == IdSet{"a", "c", "d"});
}

TEST_CASE("antimatroid validation") {
  auto check = check_antimatroid(make_antimatroid({"a", "b"}, {{}, {"a"}, {"b"}}));
  CHECK_FALSE(check.ok);
  CHECK(check.witness == std::vector<IdSet>{{"a"}, {"b"}});

  check = check_antimatroid(make_antimatroid({"a", "b"}, {{}, {"a"}}));
  CHECK_FALSE(check.ok);
  CHECK(check.reason == "the ground set is not feasible");

  check = check_antimatroid(make_antimatroid({"a", "b"}, {{}, {"a", "b"}}));
  CHECK_FALSE(check.ok);
  CHECK(check.reason == "not accessible");

  try {
    validate_antimatroid(make_antimatroid({"a", "b"}, {{}, {"a"}, {"b"}}));
    FAIL("accepted a family that is not closed under union");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnAntimatroid);
    CHECK(e.witness() == std::vector<Id>{"{a}", "{b}"});
  }
  CHECK_THROWS_AS(make_antimatroid({"a", "a"}, {}), Error);
  CHECK_THROWS_AS(validate_antimatroid(make_antimatroid({"a"}, {{}, {"z"}})), Error);
}

TEST_CASE("path definitions agree") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = random_antimatroid(rng, 1 + trial % 6);
    validate_antimatroid(a);
    const auto pp = compute_path_poset(a);
    std::vector<IdSet> sets;
    for (const auto& p : pp.paths) sets.push_back(p.set);
    CHECK(sets == not_union_of_two(a));
    CHECK(union_irreducible_sets(a) == sets);
  }
  const auto one = compute_path_poset(make_antimatroid({"x"}, {{}, {"x"}}));
  CHECK(one.paths == std::vector<Path>{{{"x"}, "x"}});
}

TEST_CASE("paths generate the family") {
  Rng rng(19);
  auto check = [](const Antimatroid& a) {
    const auto pp = compute_path_poset(a);
    CHECK(family_from_path_poset(pp).feasible == a.feasible);
    for (const auto& g : a.feasible) {
      IdSet u;
      for (const auto& p : paths_within(pp, g)) u.insert(p.set.begin(), p.set.end());
      CHECK(u == g);
    }
  };
  check(fixtures::ant());
  for (int trial = 0; trial < 200; ++trial) check(random_antimatroid(rng, 1 + trial % 6));

  PathPoset single{{"x"}, {{{"x"}, "x"}}};
  CHECK(family_from_path_poset(single).feasible == std::vector<IdSet>{{}, {"x"}});
}

TEST_CASE("complement constraints cut out the family") {
  const auto a = fixtures::ant();
  const auto omega = antimatroid_constraints(compute_path_poset(a));
  CHECK(omega.size() == 4);
  // d ends only {a,c,d}, whose paths end at a, c, d.
  CHECK(omega[3].beta_c == IdSet{"d"});
  CHECK(omega[3].alpha_c_groups == std::vector<IdSet>{{"a", "c", "d"}});
  CHECK(filter_subsets(a.ground, omega) == a.feasible);

  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_antimatroid(rng, 1 + trial % 6);
    const auto pp = compute_path_poset(r);
    const auto om = antimatroid_constraints(pp);
    CHECK(om.size() == r.ground.size());
    CHECK(filter_subsets(r.ground, om) == r.feasible);
    CHECK(filter_subsets(r.ground, om) == family_from_path_poset(pp).feasible);
  }

  // An element on no path has an always-false alpha_c.
  PathPoset hand{{"x", "y"}, {{{"y"}, "y"}}};
  const auto om = antimatroid_constraints(hand);
  CHECK(om[0].alpha_c_groups.empty());
  CHECK(filter_subsets(hand.ground, om) == std::vector<IdSet>{{}, {"y"}});
}

TEST_CASE("independent-set antimatroid") {
  for (const auto& [g, alpha] : {std::pair{complete_graph(3), 1u}, std::pair{path_graph(3), 2u},
                                 std::pair{cycle_graph(4), 2u}, std::pair{cycle_graph(5), 2u},
                                 std::pair{Graph{{"p", "q", "r"}, {}}, 3u}}) {
    const auto w = independent_set_antimatroid(g);
    validate_antimatroid(w.family);
    CHECK(w.family.ground.size() == g.vertices.size() + g.edges.size());
    CHECK(min_cost_feasible(w.family, w.weights, Sense::Max).value == static_cast<long long>(alpha));
    CHECK(independence_number(g) == alpha);
  }
  const auto k3 = independent_set_antimatroid(complete_graph(3));
  CHECK(k3.weights.at("v1") == -1);
  CHECK(k3.weights.at("e:v1-v2") == 1);
  CHECK(is_feasible(k3.family, {"v1", "e:v1-v2", "e:v1-v3"}));
  CHECK_FALSE(is_feasible(k3.family, {"e:v2-v3"}));
  CHECK_THROWS_AS(independent_set_antimatroid(Graph{{"a"}, {{"a", "a"}}}), Error);
  CHECK_THROWS_AS(independent_set_antimatroid(Graph{{"a", "b"}, {{"a", "b"}, {"b", "a"}}}), Error);

  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 1 + trial % 6, 0.5);
    const auto w = independent_set_antimatroid(g);
    CHECK(min_cost_feasible(w.family, w.weights, Sense::Max).value == static_cast<long long>(independence_number(g)));
  }
}

TEST_CASE("minimum cost feasible set") {
  const auto a = fixtures::ant();
  GroundCosts minus_one, one;
  for (const auto& x : a.ground) {
    minus_one[x] = -1;
    one[x] = 1;
  }
  auto r = min_cost_feasible(a, minus_one);
  CHECK(r.set == IdSet{"a", "b", "c", "d"});
  CHECK(r.value == -4);
  r = min_cost_feasible(a, one);
  CHECK(r.set.empty());
  CHECK(r.value == 0);
  // Max is min of the negation.
  CHECK(min_cost_feasible(a, one, Sense::Max).value == 4);
}

TEST_CASE("cost transfer") {
  const auto base = antichain_base({"x", "y"});
  auto c = transfer_costs(base, {{"x", 6}, {"y", 1}});
  CHECK(c.at({"x.f1", "x.w1"}) == Rational(3));
  CHECK(c.at({"x.f2", "x.w2"}) == Rational(3));
  CHECK(c.at({"y.f1", "y.w1"}) == Rational(1, 2));
  CHECK(c.at({"y.f1", "y.w1"}).denominator() == 2);
  CHECK(c.size() == 4);
  for (const auto& [p, v] : transfer_costs(base, {})) CHECK(v == Rational(0));
  CHECK_THROWS_AS(transfer_costs(base, {{"z", 1}}), Error);
}

TEST_CASE("reduction on the four-element fixture") {
  const auto a = fixtures::ant();
  GroundCosts c;
  for (const auto& x : a.ground) c[x] = -1;
  const auto red = reduce_to_matching(compute_path_poset(a), c);
  CHECK(red.omega.size() == 4);
  const auto stable = enumerate_stable(red.market.market);
  CHECK(stable.size() == a.feasible.size());
  std::set<IdSet> recovered;
  for (const auto& mu : stable) {
    const IdSet g = red.recover(mu);
    recovered.insert(g);
    // c'(mu) = c(recovered set).
    CHECK(pair_cost(red.costs, mu) == Rational(ground_cost(c, g)));
  }
  CHECK(recovered == std::set<IdSet>(a.feasible.begin(), a.feasible.end()));
  const auto best = min_cost_stable(red.market.market, red.costs);
  CHECK(best.value == Rational(-4));
  CHECK(red.recover(best.matching) == IdSet{"a", "b", "c", "d"});
  // The firm-optimal matching keeps no lost pair.
  CHECK(pair_cost(red.costs, deferred_acceptance(red.market.market, Side::Firms)) == Rational(0));
  // And the verification pass agrees with the constraint filter.
  const auto rep = verify_extension(red.base, red.market, red.omega);
  CHECK(rep.ok());
}

TEST_CASE("reduction on small cases") {
  const auto single = reduce_to_matching(PathPoset{{"x"}, {{{"x"}, "x"}}}, {{"x", 5}});
  const auto stable = enumerate_stable(single.market.market);
  CHECK(stable.size() == 2);
  std::set<IdSet> rec;
  for (const auto& mu : stable) rec.insert(single.recover(mu));
  CHECK(rec == std::set<IdSet>{{}, {"x"}});

  const auto p3 = independent_set_antimatroid(path_graph(3));
  GroundCosts neg;
  for (const auto& [x, w] : p3.weights) neg[x] = -w;
  const auto red = reduce_to_matching(compute_path_poset(p3.family), neg);
  CHECK(min_cost_stable(red.market.market, red.costs).value == Rational(-2));
  CHECK(min_cost_stable(red.market.market, red.costs).value == Rational(min_cost_feasible(p3.family, neg).value));
}

TEST_CASE("reduction optimum equals the feasible-set optimum") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_antimatroid(rng, 1 + trial % 5);
    const auto c = random_costs(rng, a.ground);
    const auto red = reduce_to_matching(compute_path_poset(a), c);
    const auto stable = enumerate_stable(red.market.market);
    CHECK(stable.size() == a.feasible.size());
    for (const auto& mu : stable) {
      const IdSet g = red.recover(mu);
      CHECK(is_feasible(a, g));
      CHECK(pair_cost(red.costs, mu) == Rational(ground_cost(c, g)));
    }
    for (auto sense : {Sense::Min, Sense::Max}) {
      const auto opt = min_cost_stable(red.market.market, red.costs, sense);
      const auto ref = min_cost_feasible(a, c, sense);
      CHECK(opt.value == Rational(ref.value));
      CHECK(ground_cost(c, red.recover(opt.matching)) == ref.value);
    }
  }
}

TEST_CASE("random antimatroids are valid and deterministic") {
  Rng a(3), b(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_antimatroid(a, 1 + i % 7);
    CHECK(check_antimatroid(x).ok);
    CHECK(x.feasible == random_antimatroid(b, 1 + i % 7).feasible);
  }
}
