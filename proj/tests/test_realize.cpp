#include "doctest.h"

#include "latmatch/fixtures.hpp"
#include "latmatch/generate.hpp"
#include "latmatch/realize.hpp"

using namespace latmatch;

namespace {

// Extracted rotation id -> fixture name, matched on pair sets.
std::map<Id, Id> name_by_pairs(const RotationPoset& rp) {
  std::map<Id, Id> out;
  for (const auto& [name, r] : fixtures::gi_rotations())
    for (const auto& [id, x] : rp.rotations)
      if (x.plus == r.plus && x.minus == r.minus) out[id] = name;
  return out;
}

bool is_one_to_one(const Matching& mu) {
  std::set<Id> fs, ws;
  for (const auto& [f, w] : mu)
    if (!fs.insert(f).second || !ws.insert(w).second) return false;
  return true;
}

}  // namespace

TEST_CASE("rotations of the golden instance") {
  const auto rp = extract_rotations(fixtures::gi_market());
  REQUIRE(rp.rotations.size() == 4);
  const auto names = name_by_pairs(rp);
  REQUIRE(names.size() == 4);
  std::map<Id, Id> id_of;
  for (const auto& [id, name] : names) id_of[name] = id;
  CHECK(rp.order.lt(id_of["rho1"], id_of["rho3"]));
  CHECK(rp.order.lt(id_of["rho1"], id_of["rho4"]));
  for (const auto& other : {"rho1", "rho3", "rho4"}) CHECK_FALSE(rp.order.comparable(rp.order.index(id_of["rho2"]), rp.order.index(id_of[other])));
  CHECK_FALSE(rp.order.comparable(rp.order.index(id_of["rho3"]), rp.order.index(id_of["rho4"])));
  CHECK(rp.mu_w == fixtures::gi_matchings().at("mu1"));
  // Same thing as the hand-written base.
  const auto base = fixtures::gi_base();
  for (const auto& [id, name] : names)
    for (const auto& [id2, name2] : names)
      CHECK(rp.order.leq(id, id2) == base.rotation_poset.order.leq(name, name2));
}

TEST_CASE("rotation ids are canonical") {
  const auto rp = extract_rotations(fixtures::gi_market());
  CHECK(rp.order.elements() == std::vector<Id>{"rho1", "rho2", "rho3", "rho4"});
  CHECK(extract_rotations(fixtures::gi_market()) == rp);
}

TEST_CASE("antichain base") {
  for (std::size_t n : {0u, 1u, 2u, 3u}) {
    std::vector<Id> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
    const auto base = antichain_base(ids);
    CHECK(base.market.agent_count() == 4 * n);
    const auto stable = enumerate_stable(base.market);
    CHECK(stable.size() == (std::size_t{1} << n));
    CHECK(base.rotation_poset.order == Poset::trivial(ids));
    // Extraction agrees up to renaming: n incomparable rotations.
    const auto rp = extract_rotations(base.market);
    CHECK(rp.rotations.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(rp.order.leq(i, j) == (i == j));
    // The bottom is the worker-proposing outcome.
    CHECK(base.rotation_poset.mu_w == deferred_acceptance(base.market, Side::Workers));
  }
  CHECK_THROWS_AS(antichain_base({"a", "a"}), Error);
}

TEST_CASE("unique stable matching has no rotations") {
  MatchingMarket m;
  m.firms = {"f1", "f2"};
  m.workers = {"w1", "w2"};
  m.choice["f1"] = PreferenceList{{{"w1"}, {"w2"}}};
  m.choice["f2"] = PreferenceList{{{"w2"}, {"w1"}}};
  m.choice["w1"] = PreferenceList{{{"f1"}, {"f2"}}};
  m.choice["w2"] = PreferenceList{{{"f2"}, {"f1"}}};
  const auto rp = extract_rotations(m);
  CHECK(rp.rotations.empty());
  CHECK(rp.mu_w == Matching{{"f1", "w1"}, {"f2", "w2"}});
}

TEST_CASE("rotation extraction needs strict lists") {
  MatchingMarket m;
  m.firms = {"f1"};
  m.workers = {"w1", "w2"};
  m.choice["f1"] = PreferenceList{{{"w1", "w2"}}};
  m.choice["w1"] = PreferenceList{{{"f1"}}};
  m.choice["w2"] = PreferenceList{{{"f1"}}};
  try {
    extract_rotations(m);
    FAIL("accepted a many-to-one market");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOneToOne);
  }
}

TEST_CASE("psi_s on the golden instance") {
  const auto base = fixtures::gi_base();
  const auto& rp = base.rotation_poset;
  const auto mus = fixtures::gi_matchings();
  CHECK(psi_s(rp, mus.at("mu1")).empty());
  CHECK(psi_s(rp, mus.at("mu3")) == IdSet{"rho1"});
  CHECK(psi_s(rp, mus.at("mu2")) == IdSet{"rho2"});
  CHECK(psi_s(rp, mus.at("mu10")) == IdSet{"rho1", "rho2", "rho3", "rho4"});
  // mu10 lacks (f2,w4) even though it is a plus pair of rho1.
  CHECK_FALSE(mus.at("mu10").count({"f2", "w4"}));

  CHECK(psi_s_inverse(rp, {}) == mus.at("mu1"));
  CHECK(psi_s_inverse(rp, {"rho2"}) == mus.at("mu2"));
  CHECK(psi_s_inverse(rp, {"rho1", "rho2", "rho3", "rho4"}) == mus.at("mu10"));
  try {
    psi_s_inverse(rp, {"rho3"});
    FAIL("accepted a set that is not lower closed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLowerClosed);
    CHECK(e.witness() == std::vector<Id>{"rho3", "rho1"});
  }
  CHECK_THROWS_AS(psi_s_inverse(rp, {"rho9"}), Error);
  try {
    psi_s(rp, {{"f1", "w1"}});
    FAIL("represented a non-stable matching");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRepresentable);
  }
}

TEST_CASE("psi_s is an order isomorphism onto the lower sets") {
  auto check_market = [](const MatchingMarket& m) {
    const auto rp = extract_rotations(m);
    const auto sl = stable_lattice(m);
    std::map<Id, IdSet> f;
    for (const auto& [id, mu] : sl.matchings) {
      f[id] = psi_s(rp, mu);
      CHECK(psi_s_inverse(rp, f[id]) == mu);
    }
    const auto res = check_order_isomorphism(f, sl.lattice.order(), lower_sets(rp.order));
    CHECK_MESSAGE(res.ok, res.reason);
  };
  check_market(fixtures::gi_market());
  Rng rng(7);
  for (int i = 0; i < 40; ++i) check_market(random_one_to_one_market(rng, 5, 5, 0.8));
}

TEST_CASE("rotation facts on random markets") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = random_one_to_one_market(rng, 5, 6, 0.7);
    const auto rp = extract_rotations(m);
    std::map<Id, std::size_t> pair_owner;
    for (const auto& [id, r] : rp.rotations) {
      CHECK(is_one_to_one(r.plus));
      CHECK(r.plus.size() == r.minus.size());
      // Each firm on a rotation trades one partner for another.
      std::set<Id> pf, mf;
      for (const auto& [f, w] : r.plus) pf.insert(f);
      for (const auto& [f, w] : r.minus) mf.insert(f);
      CHECK(pf == mf);
      // A pair is lost by at most one rotation.
      for (const auto& x : r.minus) CHECK(pair_owner.emplace(x.first + "|" + x.second, 0).second);
    }
    // Two rotations sharing a firm are comparable.
    for (const auto& [a, ra] : rp.rotations)
      for (const auto& [b, rb] : rp.rotations) {
        if (a >= b) continue;
        bool share = false;
        for (const auto& [f, w] : ra.minus)
          for (const auto& [g, v] : rb.minus) share = share || f == g;
        if (share) CHECK(rp.order.comparable(rp.order.index(a), rp.order.index(b)));
      }
  }
}
