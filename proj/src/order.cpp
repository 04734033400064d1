#include "latmatch/order.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace latmatch {

namespace {

std::vector<Id> sorted_unique(std::vector<Id> ids) {
  std::sort(ids.begin(), ids.end());
  auto dup = std::adjacent_find(ids.begin(), ids.end());
  if (dup != ids.end()) throw Error(ErrorKind::DuplicateId, "duplicate element id '" + *dup + "'", {*dup});
  return ids;
}

}  // namespace

Poset::Poset(std::vector<Id> elements, std::vector<char> leq)
    : elements_(std::move(elements)), leq_(std::move(leq)) {}

Poset Poset::trivial(std::vector<Id> ids) {
  ids = sorted_unique(std::move(ids));
  const std::size_t n = ids.size();
  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  return Poset(std::move(ids), std::move(leq));
}

Poset Poset::from_pairs(std::vector<Id> ids, const std::vector<std::pair<Id, Id>>& pairs) {
  ids = sorted_unique(std::move(ids));
  const std::size_t n = ids.size();
  auto idx = [&](const Id& id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) throw Error(ErrorKind::UnknownElement, "unknown element '" + id + "'", {id});
    return static_cast<std::size_t>(it - ids.begin());
  };
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (const auto& [x, y] : pairs) rel[idx(x)][idx(y)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;
  return validate_poset(ids, rel);
}

std::optional<std::size_t> Poset::find(const Id& id) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
  if (it == elements_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t Poset::index(const Id& id) const {
  auto i = find(id);
  if (!i) throw Error(ErrorKind::UnknownElement, "unknown element '" + id + "'", {id});
  return *i;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::cover_indices() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!lt(i, j)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (lt(i, k) && lt(k, j)) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

std::vector<std::pair<Id, Id>> Poset::covers() const {
  std::vector<std::pair<Id, Id>> out;
  for (auto [i, j] : cover_indices()) out.emplace_back(elements_[i], elements_[j]);
  return out;
}

bool Poset::is_lower_set(const IdSet& s) const {
  for (const auto& x : s) {
    const std::size_t j = index(x);
    for (std::size_t i = 0; i < size(); ++i)
      if (leq(i, j) && !s.count(elements_[i])) return false;
  }
  return true;
}

IdSet Poset::down_closure(const IdSet& s) const {
  IdSet out;
  for (const auto& x : s) {
    const std::size_t j = index(x);
    for (std::size_t i = 0; i < size(); ++i)
      if (leq(i, j)) out.insert(elements_[i]);
  }
  return out;
}

Poset Poset::restrict_to(const IdSet& subset) const {
  std::vector<std::size_t> keep;
  for (const auto& x : subset) keep.push_back(index(x));
  std::vector<Id> ids;
  for (auto i : keep) ids.push_back(elements_[i]);
  const std::size_t m = keep.size();
  std::vector<char> rel(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) rel[a * m + b] = leq(keep[a], keep[b]) ? 1 : 0;
  return Poset(std::move(ids), std::move(rel));
}

Poset validate_poset(const std::vector<Id>& elements, const std::vector<std::vector<bool>>& relation) {
  const std::size_t n = elements.size();
  if (relation.size() != n)
    throw Error(ErrorKind::InvalidInput, "relation matrix must be square over the element list");
  for (const auto& row : relation)
    if (row.size() != n) throw Error(ErrorKind::InvalidInput, "relation matrix must be square over the element list");

  // Canonical (sorted) element order.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return elements[a] < elements[b]; });
  std::vector<Id> ids;
  for (auto p : perm) ids.push_back(elements[p]);
  sorted_unique(ids);

  std::vector<char> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = relation[perm[i]][perm[j]] ? 1 : 0;
  auto r = [&](std::size_t i, std::size_t j) { return leq[i * n + j] != 0; };

  for (std::size_t i = 0; i < n; ++i)
    if (!r(i, i)) throw Error(ErrorKind::NotReflexive, ids[i] + " is not related to itself", {ids[i]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (r(i, j) && r(j, i))
        throw Error(ErrorKind::NotAntisymmetric, ids[i] + " <= " + ids[j] + " and back", {ids[i], ids[j]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r(i, j))
        for (std::size_t k = 0; k < n; ++k)
          if (r(j, k) && !r(i, k))
            throw Error(ErrorKind::NotTransitive, ids[i] + " <= " + ids[j] + " <= " + ids[k] + " but not " +
                                                      ids[i] + " <= " + ids[k],
                        {ids[i], ids[j], ids[k]});
  return Poset(std::move(ids), std::move(leq));
}

Lattice::Lattice(Poset order, std::vector<std::size_t> join, std::vector<std::size_t> meet)
    : order_(std::move(order)), join_(std::move(join)), meet_(std::move(meet)) {
  const std::size_t n = order_.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool is_top = true, is_bottom = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!order_.leq(j, i)) is_top = false;
      if (!order_.leq(i, j)) is_bottom = false;
    }
    if (is_top) top_ = i;
    if (is_bottom) bottom_ = i;
  }
}

const Id& Lattice::join(const Id& x, const Id& y) const {
  return order_.element(join(order_.index(x), order_.index(y)));
}

const Id& Lattice::meet(const Id& x, const Id& y) const {
  return order_.element(meet(order_.index(x), order_.index(y)));
}

Id Lattice::join_all(const IdSet& s) const {
  std::size_t acc = bottom_;
  for (const auto& x : s) acc = join(acc, order_.index(x));
  return order_.element(acc);
}

Id Lattice::meet_all(const IdSet& s) const {
  std::size_t acc = top_;
  for (const auto& x : s) acc = meet(acc, order_.index(x));
  return order_.element(acc);
}

Lattice lattice_from_order(const Poset& p) {
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::NotALattice, "empty poset has no top or bottom");
  std::vector<std::size_t> join(n * n), meet(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<std::size_t> upper, lower;
      for (std::size_t z = 0; z < n; ++z) {
        if (p.leq(x, z) && p.leq(y, z)) upper.push_back(z);
        if (p.leq(z, x) && p.leq(z, y)) lower.push_back(z);
      }
      auto extreme = [&](const std::vector<std::size_t>& bounds, bool least) -> std::vector<std::size_t> {
        std::vector<std::size_t> ext;
        for (auto z : bounds) {
          bool dominated = false;
          for (auto u : bounds)
            if (least ? p.lt(u, z) : p.lt(z, u)) dominated = true;
          if (!dominated) ext.push_back(z);
        }
        return ext;
      };
      auto lub = extreme(upper, true);
      auto glb = extreme(lower, false);
      if (lub.size() != 1 || glb.size() != 1) {
        std::vector<Id> witness = {p.element(x), p.element(y)};
        for (auto z : (lub.size() != 1 ? lub : glb)) witness.push_back(p.element(z));
        throw Error(ErrorKind::NotALattice,
                    "pair (" + p.element(x) + ", " + p.element(y) + ") has " +
                        (lub.size() != 1 ? std::to_string(lub.size()) + " minimal upper bounds"
                                         : std::to_string(glb.size()) + " maximal lower bounds"),
                    std::move(witness));
      }
      join[x * n + y] = lub.front();
      meet[x * n + y] = glb.front();
    }
  return Lattice(p, std::move(join), std::move(meet));
}

Lattice lattice_from_tables(const std::vector<Id>& elements,
                            const std::vector<std::vector<Id>>& join,
                            const std::vector<std::vector<Id>>& meet) {
  const std::size_t n = elements.size();
  if (join.size() != n || meet.size() != n)
    throw Error(ErrorKind::InvalidInput, "join/meet tables must be square over the element list");
  std::map<Id, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[elements[i]] = i;
  auto at = [&](const std::vector<std::vector<Id>>& t, std::size_t i, std::size_t j) -> std::size_t {
    if (t[i].size() != n) throw Error(ErrorKind::InvalidInput, "join/meet tables must be square");
    auto it = pos.find(t[i][j]);
    if (it == pos.end()) throw Error(ErrorKind::UnknownElement, "unknown element '" + t[i][j] + "'", {t[i][j]});
    return it->second;
  };
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool by_join = at(join, i, j) == j;
      const bool by_meet = at(meet, i, j) == i;
      if (by_join != by_meet)
        throw Error(ErrorKind::NotALattice,
                    "join and meet tables disagree on " + elements[i] + " <= " + elements[j],
                    {elements[i], elements[j]});
      rel[i][j] = by_join;
    }
  Poset order = validate_poset(elements, rel);
  Lattice lat = lattice_from_order(order);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Id& x = elements[i];
      const Id& y = elements[j];
      if (lat.join(x, y) != join[i][j] || lat.meet(x, y) != meet[i][j])
        throw Error(ErrorKind::NotALattice, "tables are not the join/meet of the order they induce at (" + x +
                                                ", " + y + ")",
                    {x, y});
    }
  return lat;
}

JoinIrreducibles join_irreducibles(const Lattice& l) {
  const Poset& p = l.order();
  IdSet members;
  // Join-irreducible iff not the bottom and exactly one lower cover.
  std::vector<int> lower_covers(p.size(), 0);
  for (auto [lo, hi] : p.cover_indices()) ++lower_covers[hi];
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != l.bottom() && lower_covers[i] == 1) members.insert(p.element(i));
  return {members, p.restrict_to(members)};
}

std::vector<IdSet> lower_sets(const Poset& p, std::size_t bound) {
  const std::size_t n = p.size();
  if (n > bound)
    throw Error(ErrorKind::EnumerationBoundExceeded,
                std::to_string(n) + " elements exceed the enumeration bound " + std::to_string(bound));
  if (n > 63) throw Error(ErrorKind::EnumerationBoundExceeded, "at most 63 elements are supported");

  // Visit elements along a linear extension; an element may join the set
  // only when everything strictly below it is already in.
  std::vector<std::size_t> linear(n);
  std::iota(linear.begin(), linear.end(), 0);
  std::vector<std::size_t> below_count(n, 0);
  std::vector<std::uint64_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.lt(j, i)) {
        below[i] |= std::uint64_t{1} << j;
        ++below_count[i];
      }
  std::stable_sort(linear.begin(), linear.end(), [&](auto a, auto b) { return below_count[a] < below_count[b]; });

  std::vector<std::uint64_t> masks;
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t cur) -> void {
    if (pos == n) {
      masks.push_back(cur);
      return;
    }
    const std::size_t e = linear[pos];
    self(self, pos + 1, cur);
    if ((below[e] & cur) == below[e]) self(self, pos + 1, cur | (std::uint64_t{1} << e));
  };
  rec(rec, 0, 0);

  std::vector<IdSet> out;
  out.reserve(masks.size());
  for (auto m : masks) {
    IdSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.insert(p.element(i));
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), BySizeThenLex{});
  return out;
}

std::map<Id, IdSet> canonical_partial_rep(const Lattice& l) {
  const auto ji = join_irreducibles(l);
  std::map<Id, IdSet> psi;
  for (const auto& x : l.elements()) {
    IdSet s;
    for (const auto& j : ji.members)
      if (l.order().leq(j, x)) s.insert(j);
    psi[x] = std::move(s);
  }
  return psi;
}

namespace {

bool includes(const IdSet& a, const IdSet& b) { return std::includes(a.begin(), a.end(), b.begin(), b.end()); }

template <typename Value, typename Geq>
OrderCheck embedding_impl(const std::map<Id, Value>& f, const Poset& src, Geq geq) {
  for (const auto& x : src.elements())
    if (!f.count(x)) return {false, {x}, "map is not defined on " + x};
  for (const auto& x : src.elements())
    for (const auto& y : src.elements()) {
      const bool lhs = src.leq(y, x);
      const bool rhs = geq(f.at(x), f.at(y));
      if (lhs != rhs)
        return {false, {x, y}, lhs ? "order not preserved" : "order reflected where the source has none"};
    }
  return {};
}

}  // namespace

OrderCheck check_order_embedding(const std::map<Id, Id>& f, const Poset& src, const Poset& dst) {
  for (const auto& [x, y] : f)
    if (!dst.contains(y)) return {false, {x, y}, "image " + y + " is not an element of the target"};
  return embedding_impl(f, src, [&](const Id& a, const Id& b) { return dst.leq(b, a); });
}

OrderCheck check_order_embedding(const std::map<Id, IdSet>& f, const Poset& src) {
  return embedding_impl(f, src, [](const IdSet& a, const IdSet& b) { return includes(a, b); });
}

OrderCheck check_order_isomorphism(const std::map<Id, Id>& f, const Poset& src, const Poset& dst) {
  auto emb = check_order_embedding(f, src, dst);
  if (!emb.ok) return emb;
  std::set<Id> image;
  for (const auto& x : src.elements()) image.insert(f.at(x));
  for (const auto& y : dst.elements())
    if (!image.count(y)) return {false, {y}, "target element " + y + " is not in the image"};
  return {};
}

OrderCheck check_order_isomorphism(const std::map<Id, IdSet>& f, const Poset& src, const std::vector<IdSet>& dst) {
  auto emb = check_order_embedding(f, src);
  if (!emb.ok) return emb;
  std::set<IdSet> image;
  for (const auto& x : src.elements()) image.insert(f.at(x));
  std::set<IdSet> target(dst.begin(), dst.end());
  for (const auto& s : image)
    if (!target.count(s)) return {false, {}, "image contains a set outside the target family"};
  for (const auto& s : target)
    if (!image.count(s)) {
      std::vector<Id> w(s.begin(), s.end());
      return {false, w, "target set is not in the image"};
    }
  return {};
}

std::optional<std::map<Id, Id>> find_order_isomorphism(const Poset& a, const Poset& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  auto signature = [](const Poset& p, std::size_t i) {
    std::size_t down = 0, up = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      down += p.leq(j, i);
      up += p.leq(i, j);
    }
    return std::pair{down, up};
  };
  std::vector<std::pair<std::size_t, std::size_t>> sig_a(n), sig_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig_a[i] = signature(a, i);
    sig_b[i] = signature(b, i);
  }
  // Assign a's elements by increasing down-set size so that most
  // comparabilities are checked early.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sig_a[x] < sig_a[y]; });

  std::vector<std::size_t> image(n);
  std::vector<char> used(n, 0);
  auto extend = [&](auto& self, std::size_t k) -> bool {
    if (k == n) return true;
    const std::size_t x = order[k];
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || sig_b[y] != sig_a[x]) continue;
      bool fits = true;
      for (std::size_t q = 0; q < k && fits; ++q) {
        const std::size_t z = order[q];
        fits = a.leq(z, x) == b.leq(image[z], y) && a.leq(x, z) == b.leq(y, image[z]);
      }
      if (!fits) continue;
      image[x] = y;
      used[y] = 1;
      if (self(self, k + 1)) return true;
      used[y] = 0;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  std::map<Id, Id> out;
  for (std::size_t i = 0; i < n; ++i) out[a.element(i)] = b.element(image[i]);
  return out;
}

IdSet maximal_elements(const Poset& p, const IdSet& s) {
  IdSet out;
  for (const auto& z : s) {
    bool dominated = false;
    for (const auto& u : s)
      if (p.lt(z, u)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(z);
  }
  return out;
}

DistributivityCheck is_distributive(const Lattice& l) {
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), l.join(a, c)))
          return {false, {l.elements()[a], l.elements()[b], l.elements()[c]}};
  return {};
}

}  // namespace latmatch
