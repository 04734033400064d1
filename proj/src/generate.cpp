#include "latmatch/generate.hpp"

#include <algorithm>
#include <numeric>

namespace latmatch {

std::string set_name(const IdSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ",";
    out += x;
    first = false;
  }
  return out + "}";
}

std::vector<Lattice> all_lattices(std::size_t n) {
  if (n == 0) return {};
  if (n > 7) throw Error(ErrorKind::EnumerationBoundExceeded, "lattice enumeration is limited to 7 elements");
  std::vector<Id> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("l" + std::to_string(i));
  if (n == 1) return {lattice_from_order(Poset::trivial(ids))};

  const std::size_t k = n - 2;  // inner elements 1..k
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) slots.emplace_back(i, j);

  auto encode = [&](const std::vector<std::vector<bool>>& r, const std::vector<std::size_t>& perm) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) code = code << 1 | (r[perm[i]][perm[j]] ? 1u : 0u);
    return code;
  };

  std::set<std::uint64_t> seen;
  std::vector<Lattice> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) r[slots[s].first][slots[s].second] = true;
    bool closed = true;
    for (std::size_t a = 0; a < k && closed; ++a)
      for (std::size_t b = 0; b < k && closed; ++b)
        for (std::size_t c = 0; c < k && closed; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) closed = false;
    if (!closed) continue;

    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t canon = ~std::uint64_t{0};
    do canon = std::min(canon, encode(r, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.count(canon)) continue;

    std::vector<std::pair<Id, Id>> pairs;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      pairs.emplace_back(ids[0], ids[i]);
      pairs.emplace_back(ids[i], ids[n - 1]);
    }
    pairs.emplace_back(ids[0], ids[n - 1]);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (r[a][b]) pairs.emplace_back(ids[a + 1], ids[b + 1]);
    try {
      out.push_back(lattice_from_order(Poset::from_pairs(ids, pairs)));
      seen.insert(canon);
    } catch (const Error&) {
      // not a lattice
    }
  }
  return out;
}

namespace {

Lattice inclusion_lattice(const std::set<IdSet>& family) {
  std::vector<Id> ids;
  std::vector<std::pair<Id, Id>> pairs;
  for (const auto& a : family) {
    ids.push_back(set_name(a));
    for (const auto& b : family)
      if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end())) pairs.emplace_back(set_name(a), set_name(b));
  }
  return lattice_from_order(Poset::from_pairs(ids, pairs));
}

}  // namespace

Lattice random_lattice(Rng& rng, std::size_t max_elements) {
  if (max_elements == 0) throw Error(ErrorKind::InvalidInput, "max_elements must be positive");
  const std::vector<Id> ground = {"1", "2", "3", "4", "5"};
  std::uniform_int_distribution<std::size_t> target_dist(1, max_elements);
  const std::size_t target = target_dist(rng);
  while (true) {
    std::set<IdSet> family = {IdSet(ground.begin(), ground.end())};
    for (std::size_t attempt = 0; attempt < 16 * target + 32 && family.size() < target; ++attempt) {
      IdSet s;
      for (const auto& g : ground)
        if (rng() % 2) s.insert(g);
      std::set<IdSet> next = family;
      next.insert(s);
      // Close under intersection.
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<IdSet> cur(next.begin(), next.end());
        for (const auto& a : cur)
          for (const auto& b : cur) {
            IdSet c;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(c, c.end()));
            if (next.insert(c).second) grew = true;
          }
      }
      if (next.size() <= max_elements) family = std::move(next);
    }
    if (family.size() <= max_elements) return inclusion_lattice(family);
  }
}

Lattice random_distributive_lattice(Rng& rng, std::size_t k) {
  std::vector<Id> ids;
  std::vector<std::pair<Id, Id>> pairs;
  for (std::size_t i = 0; i < k; ++i) ids.push_back("p" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (rng() % 3 == 0) pairs.emplace_back(ids[i], ids[j]);
  const Poset p = Poset::from_pairs(ids, pairs);
  const auto sets = lower_sets(p);
  return inclusion_lattice(std::set<IdSet>(sets.begin(), sets.end()));
}

MatchingMarket random_one_to_one_market(Rng& rng, std::size_t firms, std::size_t workers, double density) {
  MatchingMarket m;
  for (std::size_t i = 0; i < firms; ++i) m.firms.push_back("f" + std::to_string(i + 1));
  for (std::size_t j = 0; j < workers; ++j) m.workers.push_back("w" + std::to_string(j + 1));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::map<Id, std::vector<Id>> acc;
  for (const auto& f : m.firms)
    for (const auto& w : m.workers)
      if (coin(rng) < density) {
        acc[f].push_back(w);
        acc[w].push_back(f);
      }
  for (const auto* side : {&m.firms, &m.workers})
    for (const auto& a : *side) {
      auto list = acc[a];
      std::shuffle(list.begin(), list.end(), rng);
      PreferenceList p;
      for (const auto& x : list) p.list.push_back({x});
      m.choice[a] = p;
    }
  return m;
}

}  // namespace latmatch
