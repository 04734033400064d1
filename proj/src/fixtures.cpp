#include "latmatch/fixtures.hpp"

namespace latmatch::fixtures {

namespace {

PreferenceList strict(std::initializer_list<const char*> ids) {
  PreferenceList p;
  for (const char* id : ids) p.list.push_back({id});
  return p;
}

Matching firm_row(std::initializer_list<const char*> workers) {
  Matching mu;
  int f = 1;
  for (const char* w : workers) mu.emplace("f" + std::to_string(f++), w);
  return mu;
}

const IdSet kAugCopies = {"w3#1", "w4#1", "w6#1", "w7#1"};

Matching with_copies_at_f0(Matching mu) {
  for (const auto& w : kAugCopies) mu.emplace("f0#1", w);
  return mu;
}

}  // namespace

Lattice six_element() {
  return lattice_from_order(Poset::from_pairs(
      {"a", "b", "c", "d", "e", "f"},
      {{"a", "b"}, {"a", "c"}, {"c", "d"}, {"c", "e"}, {"b", "f"}, {"d", "f"}, {"e", "f"}}));
}

Lattice pentagon() {
  return lattice_from_order(
      Poset::from_pairs({"0", "1", "x", "y", "z"}, {{"0", "x"}, {"x", "y"}, {"y", "1"}, {"0", "z"}, {"z", "1"}}));
}

Lattice diamond() {
  return lattice_from_order(Poset::from_pairs(
      {"0", "1", "x", "y", "z"}, {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "1"}, {"y", "1"}, {"z", "1"}}));
}

Lattice chain(std::size_t n) {
  std::vector<Id> ids;
  std::vector<std::pair<Id, Id>> pairs;
  for (std::size_t i = 1; i <= n; ++i) {
    ids.push_back("x" + std::to_string(i));
    if (i > 1) pairs.emplace_back("x" + std::to_string(i - 1), "x" + std::to_string(i));
  }
  return lattice_from_order(Poset::from_pairs(ids, pairs));
}

Lattice boolean(std::size_t n) {
  auto name = [&](unsigned mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (!first) s += ",";
        s += std::to_string(i + 1);
        first = false;
      }
    return s + "}";
  };
  std::vector<Id> ids;
  std::vector<std::pair<Id, Id>> pairs;
  for (unsigned m = 0; m < (1u << n); ++m) {
    ids.push_back(name(m));
    for (std::size_t i = 0; i < n; ++i)
      if (!(m >> i & 1)) pairs.emplace_back(name(m), name(m | (1u << i)));
  }
  return lattice_from_order(Poset::from_pairs(ids, pairs));
}

MatchingMarket gi_market() {
  MatchingMarket m;
  for (int i = 1; i <= 7; ++i) {
    m.firms.push_back("f" + std::to_string(i));
    m.workers.push_back("w" + std::to_string(i));
  }
  m.choice["f1"] = strict({"w5", "w1"});
  m.choice["f2"] = strict({"w7", "w4", "w2"});
  m.choice["f3"] = strict({"w2", "w3"});
  m.choice["f4"] = strict({"w6", "w3", "w4"});
  m.choice["f5"] = strict({"w1", "w5"});
  m.choice["f6"] = strict({"w3", "w6"});
  m.choice["f7"] = strict({"w4", "w7"});
  m.choice["w1"] = strict({"f1", "f5"});
  m.choice["w2"] = strict({"f2", "f3"});
  m.choice["w3"] = strict({"f3", "f4", "f6"});
  m.choice["w4"] = strict({"f4", "f2", "f7"});
  m.choice["w5"] = strict({"f5", "f1"});
  m.choice["w6"] = strict({"f6", "f4"});
  m.choice["w7"] = strict({"f7", "f2"});
  return m;
}

std::map<std::string, Matching> gi_matchings() {
  return {
      {"mu1", firm_row({"w1", "w2", "w3", "w4", "w5", "w6", "w7"})},
      {"mu2", firm_row({"w5", "w2", "w3", "w4", "w1", "w6", "w7"})},
      {"mu3", firm_row({"w1", "w4", "w2", "w3", "w5", "w6", "w7"})},
      {"mu4", firm_row({"w5", "w4", "w2", "w3", "w1", "w6", "w7"})},
      {"mu5", firm_row({"w1", "w4", "w2", "w6", "w5", "w3", "w7"})},
      {"mu6", firm_row({"w1", "w7", "w2", "w3", "w5", "w6", "w4"})},
      {"mu7", firm_row({"w5", "w4", "w2", "w6", "w1", "w3", "w7"})},
      {"mu8", firm_row({"w5", "w7", "w2", "w3", "w1", "w6", "w4"})},
      {"mu9", firm_row({"w1", "w7", "w2", "w6", "w5", "w3", "w4"})},
      {"mu10", firm_row({"w5", "w7", "w2", "w6", "w1", "w3", "w4"})},
  };
}

std::map<std::string, RotationPairs> gi_rotations() {
  return {
      {"rho1", {{{"f2", "w4"}, {"f3", "w2"}, {"f4", "w3"}}, {{"f2", "w2"}, {"f3", "w3"}, {"f4", "w4"}}}},
      {"rho2", {{{"f1", "w5"}, {"f5", "w1"}}, {{"f1", "w1"}, {"f5", "w5"}}}},
      {"rho3", {{{"f4", "w6"}, {"f6", "w3"}}, {{"f4", "w3"}, {"f6", "w6"}}}},
      {"rho4", {{{"f2", "w7"}, {"f7", "w4"}}, {{"f2", "w4"}, {"f7", "w7"}}}},
  };
}

RealizedBase gi_base() {
  RealizedBase out;
  out.market = gi_market();
  for (const auto& [id, r] : gi_rotations()) out.rotation_poset.rotations[id] = Rotation{id, r.plus, r.minus};
  out.rotation_poset.order = Poset::from_pairs({"rho1", "rho2", "rho3", "rho4"}, {{"rho1", "rho3"}, {"rho1", "rho4"}});
  out.rotation_poset.mu_w = gi_matchings().at("mu1");
  out.phi = {{"b", "rho2"}, {"c", "rho1"}, {"d", "rho3"}, {"e", "rho4"}};
  return out;
}

JoinConstraint gi_worked_constraint() {
  JoinConstraint jc;
  jc.alpha_groups = {{"rho1"}, {"rho2"}};
  jc.beta = {"rho3", "rho4"};
  return jc;
}

Antimatroid ant() {
  return make_antimatroid({"a", "b", "c", "d"}, {{},
                                                {"a"},
                                                {"b"},
                                                {"a", "b"},
                                                {"a", "c"},
                                                {"a", "b", "c"},
                                                {"a", "c", "d"},
                                                {"a", "b", "c", "d"}});
}

std::map<std::string, Matching> aug_matchings() {
  std::map<std::string, Matching> out;
  out["mu1"] = with_copies_at_f0({{"f1", "w1"}, {"f1", "w0#1"}, {"f2", "w2"}, {"f2", "w0#1"}, {"f3", "w3"},
                                  {"f3", "w0#1"}, {"f4", "w4"}, {"f4", "w0#1"}, {"f5", "w5"}, {"f5", "w0#1"},
                                  {"f6", "w6"}, {"f7", "w7"}});
  out["mu2"] = with_copies_at_f0({{"f1", "w5"}, {"f2", "w2"}, {"f2", "w0#1"}, {"f3", "w3"}, {"f3", "w0#1"},
                                  {"f4", "w4"}, {"f4", "w0#1"}, {"f5", "w1"}, {"f6", "w6"}, {"f7", "w7"}});
  out["mu3"] = with_copies_at_f0({{"f1", "w1"}, {"f1", "w0#1"}, {"f2", "w4"}, {"f3", "w2"}, {"f4", "w3"},
                                  {"f5", "w5"}, {"f5", "w0#1"}, {"f6", "w6"}, {"f7", "w7"}});
  out["mu5"] = with_copies_at_f0({{"f1", "w1"}, {"f1", "w0#1"}, {"f2", "w4"}, {"f3", "w2"}, {"f4", "w6"},
                                  {"f5", "w5"}, {"f5", "w0#1"}, {"f6", "w3"}, {"f7", "w7"}});
  out["mu6"] = with_copies_at_f0({{"f1", "w1"}, {"f1", "w0#1"}, {"f2", "w7"}, {"f3", "w2"}, {"f4", "w3"},
                                  {"f5", "w5"}, {"f5", "w0#1"}, {"f6", "w6"}, {"f7", "w4"}});
  out["mu9"] = with_copies_at_f0({{"f1", "w1"}, {"f1", "w0#1"}, {"f2", "w7"}, {"f3", "w2"}, {"f4", "w6"},
                                  {"f5", "w5"}, {"f5", "w0#1"}, {"f6", "w3"}, {"f7", "w4"}});
  out["mu10"] = {{"f1", "w5"}, {"f2", "w7"}, {"f2", "w7#1"}, {"f3", "w2"}, {"f4", "w6"}, {"f4", "w6#1"},
                 {"f5", "w1"}, {"f6", "w3"}, {"f6", "w3#1"}, {"f7", "w4"}, {"f7", "w4#1"}, {"f0#1", "w0#1"}};
  return out;
}

}  // namespace latmatch::fixtures
