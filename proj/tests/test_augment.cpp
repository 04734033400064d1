#include "doctest.h"

#include <chrono>

#include "latmatch/augment.hpp"
#include "latmatch/fixtures.hpp"
#include "latmatch/generate.hpp"

using namespace latmatch;

namespace {

const IdSet kAllCopies = {"w3#1", "w4#1", "w6#1", "w7#1"};

ExtendableMarket worked_augmentation() {
  const auto base = fixtures::gi_base();
  return augment(as_extendable(base), derive_sets(fixtures::gi_worked_constraint(), base.rotation_poset));
}

PreferenceList strict(std::vector<Id> ids) {
  PreferenceList p;
  for (auto& id : ids) p.list.push_back({id});
  return p;
}

std::vector<Matching> sorted(std::vector<Matching> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("derived agent sets of the worked constraint") {
  const auto base = fixtures::gi_base();
  const auto r = derive_sets(fixtures::gi_worked_constraint(), base.rotation_poset);
  CHECK(r.alpha_rotations == IdSet{"rho1", "rho2"});
  CHECK(r.beta_rotations == IdSet{"rho3", "rho4"});
  CHECK(r.alpha_firms == IdSet{"f1", "f2", "f3", "f4", "f5"});
  CHECK(r.beta_workers == IdSet{"w3", "w4", "w6", "w7"});
  CHECK(r.firms_of.at("rho1") == IdSet{"f2", "f3", "f4"});
  CHECK(r.firms_of.at("rho2") == IdSet{"f1", "f5"});
}

TEST_CASE("derive_sets errors") {
  const auto rp = fixtures::gi_base().rotation_poset;
  JoinConstraint jc;
  jc.alpha_groups = {{"rho9"}};
  try {
    derive_sets(jc, rp);
    FAIL("accepted an unknown rotation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownElementId);
  }
  jc.alpha_groups = {{"rho1"}, {"rho3"}};
  jc.beta = {};
  try {
    derive_sets(jc, rp);
    FAIL("accepted comparable alpha rotations");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArgumentsNotAntichain);
  }
  // Overlapping firms can only come from comparable rotations in a one-to-one
  // market, so build a poset that hides the comparability.
  auto loose = rp;
  loose.order = Poset::trivial({"rho1", "rho2", "rho3", "rho4"});
  try {
    derive_sets(jc, loose);
    FAIL("accepted alpha rotations sharing a firm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OverlappingRotationAgents);
  }
}

TEST_CASE("worked augmentation reproduces every constructed piece") {
  const auto em = worked_augmentation();
  const auto& m = em.market;
  CHECK(em.aux_workers == IdSet{"w0#1"});
  CHECK(em.aux_firms == IdSet{"f0#1"});
  CHECK(m.agent_count() == 14 + 2 + 4);

  std::map<Id, std::vector<std::pair<Id, Id>>> a_f = {
      {"f1", {{"w1", "w0#1"}}}, {"f2", {{"w2", "w0#1"}}}, {"f3", {{"w3", "w0#1"}}},
      {"f4", {{"w4", "w0#1"}}}, {"f5", {{"w5", "w0#1"}}}};
  CHECK(em.a_f == a_f);

  CHECK(std::get<PreferenceList>(m.choice.at("w3#1")) == strict({"f0#1", "f6"}));
  CHECK(std::get<PreferenceList>(m.choice.at("w4#1")) == strict({"f0#1", "f7"}));
  CHECK(std::get<PreferenceList>(m.choice.at("w6#1")) == strict({"f0#1", "f4"}));
  CHECK(std::get<PreferenceList>(m.choice.at("w7#1")) == strict({"f0#1", "f2"}));

  const auto& ie = std::get<IfElse>(m.choice.at("f0#1"));
  CHECK(ie.priority == "w0#1");
  CHECK(ie.else_set == kAllCopies);

  const auto& tr = std::get<Triggered>(m.choice.at("w0#1"));
  CHECK(tr.watch == IdSet{"f1", "f2", "f3", "f4", "f5"});
  CHECK(tr.trigger == "f0#1");

  // Base workers keep their lists.
  const auto gi = fixtures::gi_market();
  for (const auto& w : gi.workers) CHECK(m.choice.at(w) == gi.choice.at(w));

  // f1 behaves as ({w5},{w0,w1},{w1},{w0}) and f7 as
  // ({w4,w4''},{w4},{w4''},{w7,w7''},{w7},{w7''}).
  PreferenceList f1;
  f1.list = {{"w5"}, {"w0#1", "w1"}, {"w1"}, {"w0#1"}};
  PreferenceList f7;
  f7.list = {{"w4", "w4#1"}, {"w4"}, {"w4#1"}, {"w7", "w7#1"}, {"w7"}, {"w7#1"}};
  for (const auto& [firm, list] : {std::pair{"f1", f1}, std::pair{"f7", f7}}) {
    const std::vector<Id> u = {"w0#1", "w1", "w4", "w4#1", "w5", "w7", "w7#1"};
    for (unsigned mask = 0; mask < (1u << u.size()); ++mask) {
      IdSet t;
      for (std::size_t k = 0; k < u.size(); ++k)
        if (mask >> k & 1) t.insert(u[k]);
      CHECK(choose(m, firm, t) == choose(ChoiceSpec{list}, t));
    }
  }
  // w0 takes f0 only when no alpha firm is offered.
  CHECK(choose(m, "w0#1", {"f0#1"}) == IdSet{"f0#1"});
  CHECK(choose(m, "w0#1", {"f0#1", "f3"}) == IdSet{"f3"});
}

TEST_CASE("stable matchings after the worked augmentation") {
  const auto em = worked_augmentation();
  const auto t0 = std::chrono::steady_clock::now();
  const auto stable = enumerate_stable(em.market);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(30));

  std::vector<Matching> expected;
  for (const auto& [k, mu] : fixtures::aug_matchings()) expected.push_back(mu);
  CHECK(sorted(stable) == sorted(expected));
  CHECK(sorted(enumerate_stable_backtracking(em.market)) == sorted(expected));

  const auto gi = fixtures::gi_matchings();
  for (const auto& [k, mu] : fixtures::aug_matchings()) {
    CHECK(project_xi(em, mu) == gi.at(k));
    CHECK(is_stable(em.market, mu));
  }
  CHECK(deferred_acceptance(em.market, Side::Workers) == fixtures::aug_matchings().at("mu1"));
  CHECK(deferred_acceptance(em.market, Side::Firms) == fixtures::aug_matchings().at("mu10"));

  const auto sl = lattice_of_matchings(em.market, stable);
  CHECK(sl.lattice.size() == 7);
  const auto rep = verify_extension(fixtures::gi_base(), em, {fixtures::gi_worked_constraint()});
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.ok, (c.name + ": " + c.detail));
}

TEST_CASE("every choice function of the augmented market is path independent") {
  const auto em = worked_augmentation();
  for (const auto& [agent, spec] : em.market.choice) {
    const auto rep = check_path_independence(spec, std::nullopt);
    CHECK_MESSAGE(rep.ok, agent);
  }
}

TEST_CASE("zeta projection") {
  const auto base = fixtures::gi_base();
  const auto before = as_extendable(base);
  const auto after = worked_augmentation();
  const auto gi = fixtures::gi_matchings();
  CHECK(project_zeta(before, after, fixtures::aug_matchings().at("mu10")) == gi.at("mu10"));
  CHECK(project_zeta(before, after, fixtures::aug_matchings().at("mu1")) == gi.at("mu1"));
  CHECK(project_zeta(before, before, gi.at("mu4")) == gi.at("mu4"));
  CHECK_THROWS_AS(project_xi(after, {{"f1", "w1"}}), Error);
}

TEST_CASE("empty constraint list leaves the market alone") {
  const auto base = fixtures::gi_base();
  const auto em = omega_extend(base, {});
  CHECK(em.market.choice == base.market.choice);
  const auto rep = verify_extension(base, em, {});
  CHECK(rep.ok());
  CHECK(rep.image.size() == 10);
}

TEST_CASE("constraints on an antichain base") {
  const auto base = antichain_base({"p", "q"});
  // q implies p: three of the four matchings survive.
  JoinConstraint chain;
  chain.alpha_groups = {{"q"}};
  chain.beta = {"p"};
  auto em = omega_extend(base, {chain});
  auto rep = verify_extension(base, em, {chain});
  CHECK(rep.ok());
  CHECK(rep.stable.size() == 3);

  // Two stages: additionally p implies q.
  JoinConstraint back;
  back.alpha_groups = {{"p"}};
  back.beta = {"q"};
  em = omega_extend(base, {chain, back});
  CHECK(em.augment_count == 2);
  rep = verify_extension(base, em, {chain, back});
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.ok, (c.name + ": " + c.detail));
  CHECK(rep.stable.size() == 2);
  CHECK(em.market.agent_count() == 8 + (2 + 2) + (2 + 2));
}

TEST_CASE("each augmentation adds two aux agents plus one copy per beta worker") {
  Rng rng(5);
  const auto base = antichain_base({"a", "b", "c"});
  for (int trial = 0; trial < 20; ++trial) {
    JoinConstraint jc;
    std::vector<Id> ids = {"a", "b", "c"};
    std::shuffle(ids.begin(), ids.end(), rng);
    jc.alpha_groups = {{ids[0]}};
    if (rng() % 2) jc.alpha_groups.push_back({ids[1]});
    jc.beta = {ids[2]};
    const auto rjc = derive_sets(jc, base.rotation_poset);
    const auto em = augment(as_extendable(base), rjc);
    CHECK(em.market.agent_count() == base.market.agent_count() + 2 + rjc.beta_workers.size());
    const auto rep = verify_extension(base, em, {jc});
    for (const auto& c : rep.checks) CHECK_MESSAGE(c.ok, (c.name + ": " + c.detail));
  }
}

TEST_CASE("synthesis on small lattices") {
  for (const auto& l : {fixtures::six_element(), fixtures::pentagon(), fixtures::diamond(), fixtures::chain(1),
                        fixtures::chain(3), fixtures::boolean(2)}) {
    const auto s = synthesize_from_lattice(l);
    CHECK(s.iso.size() == l.size());
    CHECK(s.stable.lattice.size() == l.size());
    std::map<Id, Id> f;
    for (const auto& [x, mu] : s.iso) f[x] = s.stable.id_of(mu);
    CHECK(check_order_isomorphism(f, l.order(), s.stable.lattice.order()).ok);
    for (const auto& [agent, spec] : s.market.market.choice) CHECK_MESSAGE(check_path_independence(spec, std::nullopt).ok, agent);
  }
}

TEST_CASE("synthesis on every lattice up to six elements") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& l : all_lattices(n)) {
      const auto s = synthesize_from_lattice(l);
      CHECK(s.stable.lattice.size() == n);
    }
}
