#include "latmatch/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "latmatch/generate.hpp"

namespace latmatch::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Io, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

Id id_from(const Json& j) {
  if (!j.is_string()) bad("expected a string id, got " + j.dump());
  return j.get<std::string>();
}

std::vector<Id> ids_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of ids, got " + j.dump());
  std::vector<Id> out;
  for (const auto& x : j) out.push_back(id_from(x));
  return out;
}

IdSet set_from(const Json& j) {
  const auto v = ids_from(j);
  IdSet s(v.begin(), v.end());
  if (s.size() != v.size()) bad("repeated id in " + j.dump());
  return s;
}

std::vector<IdSet> sets_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of id arrays, got " + j.dump());
  std::vector<IdSet> out;
  for (const auto& x : j) out.push_back(set_from(x));
  return out;
}

Json sets_to(const std::vector<IdSet>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

std::pair<Id, Id> pair_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a pair of ids, got " + j.dump());
  return {id_from(j[0]), id_from(j[1])};
}

std::vector<std::pair<Id, Id>> pairs_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of pairs, got " + j.dump());
  std::vector<std::pair<Id, Id>> out;
  for (const auto& x : j) out.push_back(pair_from(x));
  return out;
}

Json pairs_to(const std::vector<std::pair<Id, Id>>& v) {
  Json a = Json::array();
  for (const auto& [x, y] : v) a.push_back(Json::array({x, y}));
  return a;
}

std::map<Id, Id> id_map_from(const Json& j) {
  if (!j.is_object()) bad("expected an object of ids, got " + j.dump());
  std::map<Id, Id> out;
  for (const auto& [k, v] : j.items()) out[k] = id_from(v);
  return out;
}

long long integer_from(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<long long>();
}

Json header(const std::string& kind) { return Json{{"v", kFormatVersion}, {"kind", kind}}; }

void expect_kind(const Json& j, const std::string& kind) {
  const auto k = document_kind(j);
  if (k != kind) bad("expected a '" + kind + "' document, got '" + k + "'");
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json read_json_file(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'", {path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'", {path});
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'", {path});
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string document_kind(const Json& j) {
  const auto& v = field(j, "v");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    bad("unsupported format version " + v.dump() + " (expected " + std::to_string(kFormatVersion) + ")");
  const auto& k = field(j, "kind");
  if (!k.is_string()) bad("'kind' must be a string");
  return k.get<std::string>();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

// ---- orders

Json poset_to_json(const Poset& p, const std::string& kind) {
  Json j = header(kind);
  j["elements"] = p.elements();
  j["leq"] = pairs_to(p.covers());
  return j;
}

Poset poset_from_json(const Json& j) {
  auto elements = ids_from(field(j, "elements"));
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw Error(ErrorKind::DuplicateId, "repeated element id", {*std::adjacent_find(elements.begin(), elements.end())});
  const auto pairs = j.contains("leq") ? pairs_from(j.at("leq")) : std::vector<std::pair<Id, Id>>{};
  for (const auto& [x, y] : pairs)
    for (const auto& z : {x, y})
      if (!std::binary_search(elements.begin(), elements.end(), z))
        throw Error(ErrorKind::UnknownElement, "order pair names unknown element '" + z + "'", {z});
  return Poset::from_pairs(elements, pairs);
}

Json lattice_to_json(const Lattice& l) { return poset_to_json(l.order(), "lattice"); }

Lattice lattice_from_json(const Json& j) {
  expect_kind(j, "lattice");
  return lattice_from_order(poset_from_json(j));
}

// ---- matchings

Json matching_to_json(const Matching& mu) {
  Json a = Json::array();
  for (const auto& [f, w] : mu) a.push_back(Json::array({f, w}));
  return a;
}

Matching matching_from_json(const Json& j) {
  const auto v = pairs_from(j);
  Matching mu(v.begin(), v.end());
  if (mu.size() != v.size()) bad("repeated pair in matching " + j.dump());
  return mu;
}

Json matchings_to_json(const std::vector<Matching>& all) {
  Json j = header("matchings");
  j["count"] = all.size();
  Json a = Json::array();
  for (const auto& mu : all) a.push_back(matching_to_json(mu));
  j["matchings"] = a;
  return j;
}

std::vector<Matching> matchings_from_json(const Json& j) {
  expect_kind(j, "matchings");
  const auto& a = field(j, "matchings");
  if (!a.is_array()) bad("'matchings' must be an array");
  std::vector<Matching> out;
  for (const auto& x : a) out.push_back(matching_from_json(x));
  return out;
}

// ---- markets

Json choice_to_json(const ChoiceSpec& spec) {
  Json j;
  j["family"] = kind_name(spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PreferenceList>) {
          j["list"] = sets_to(s.list);
        } else if constexpr (std::is_same_v<T, Triggered>) {
          j["watch"] = s.watch;
          j["trigger"] = s.trigger;
          j["alpha_groups"] = sets_to(s.gamma.alpha_groups);
          Json f = Json::object();
          for (const auto& [r, firms] : s.gamma.f_rho) f[r] = firms;
          j["f_rho"] = f;
        } else if constexpr (std::is_same_v<T, IfElse>) {
          j["priority"] = s.priority;
          j["else"] = s.else_set;
        } else {
          j["tiers"] = sets_to(s.tiers);
          j["aux_pairs"] = pairs_to(s.aux_pairs);
        }
      },
      spec);
  return j;
}

ChoiceSpec choice_from_json(const Json& j) {
  const auto family = id_from(field(j, "family"));
  if (family == "preference_list") return PreferenceList{sets_from(field(j, "list"))};
  if (family == "triggered") {
    Triggered t;
    t.watch = set_from(field(j, "watch"));
    t.trigger = id_from(field(j, "trigger"));
    t.gamma.alpha_groups = sets_from(field(j, "alpha_groups"));
    const auto& f = field(j, "f_rho");
    if (!f.is_object()) bad("'f_rho' must be an object");
    for (const auto& [r, firms] : f.items()) t.gamma.f_rho[r] = set_from(firms);
    return t;
  }
  if (family == "if_else") return IfElse{id_from(field(j, "priority")), set_from(field(j, "else"))};
  if (family == "regular") return Regular{sets_from(field(j, "tiers")), pairs_from(field(j, "aux_pairs"))};
  bad("unknown choice family '" + family + "'");
}

Json market_to_json(const MatchingMarket& m) {
  Json j = header("market");
  j["firms"] = m.firms;
  j["workers"] = m.workers;
  Json c = Json::object();
  for (const auto& [a, spec] : m.choice) c[a] = choice_to_json(spec);
  j["choice"] = c;
  return j;
}

MatchingMarket market_from_json(const Json& j) {
  expect_kind(j, "market");
  MatchingMarket m;
  m.firms = ids_from(field(j, "firms"));
  m.workers = ids_from(field(j, "workers"));
  const auto& c = field(j, "choice");
  if (!c.is_object()) bad("'choice' must be an object");
  for (const auto& [a, spec] : c.items()) m.choice[a] = choice_from_json(spec);
  validate_market(m);
  return m;
}

// ---- rotations

Json rotations_to_json(const RotationPoset& rp) {
  Json j = poset_to_json(rp.order, "rotations");
  Json a = Json::array();
  for (const auto& [id, r] : rp.rotations)
    a.push_back(Json{{"id", id}, {"plus", matching_to_json(r.plus)}, {"minus", matching_to_json(r.minus)}});
  j["rotations"] = a;
  j["mu_w"] = matching_to_json(rp.mu_w);
  return j;
}

RotationPoset rotations_from_json(const Json& j) {
  expect_kind(j, "rotations");
  RotationPoset rp;
  rp.order = poset_from_json(j);
  const auto& a = field(j, "rotations");
  if (!a.is_array()) bad("'rotations' must be an array");
  for (const auto& r : a) {
    const auto id = id_from(field(r, "id"));
    if (!rp.order.contains(id)) throw Error(ErrorKind::UnknownElement, "rotation '" + id + "' is not in the order", {id});
    if (!rp.rotations.emplace(id, Rotation{id, matching_from_json(field(r, "plus")), matching_from_json(field(r, "minus"))}).second)
      throw Error(ErrorKind::DuplicateId, "rotation '" + id + "' listed twice", {id});
  }
  if (rp.rotations.size() != rp.order.size()) bad("every element of the order needs a rotation entry");
  rp.mu_w = matching_from_json(field(j, "mu_w"));
  return rp;
}

Json constraint_to_json(const JoinConstraint& jc) {
  return Json{{"alpha", sets_to(jc.alpha_groups)}, {"beta", jc.beta}};
}

JoinConstraint constraint_from_json(const Json& j) {
  JoinConstraint jc;
  jc.alpha_groups = sets_from(field(j, "alpha"));
  jc.beta = set_from(field(j, "beta"));
  return jc;
}

// ---- bundles

Json bundle_to_json(const Bundle& b) {
  const auto& em = b.market;
  Json j = header("bundle");
  j["source"] = b.source;
  j["market"] = market_to_json(em.market);
  j["base"] = Json{{"market", market_to_json(em.base.market)},
                   {"phi", em.base.phi},
                   {"rotations", rotations_to_json(em.base.rotation_poset)}};
  j["copy_map"] = em.copy_map;
  j["aux_workers"] = em.aux_workers;
  j["aux_firms"] = em.aux_firms;
  Json af = Json::object();
  for (const auto& [f, v] : em.a_f) af[f] = pairs_to(v);
  j["a_f"] = af;
  j["augment_count"] = em.augment_count;
  Json omega = Json::array();
  for (const auto& jc : em.applied) omega.push_back(constraint_to_json(jc));
  j["omega"] = omega;
  if (b.lattice) j["lattice"] = lattice_to_json(*b.lattice);
  if (!b.iso.empty()) {
    Json iso = Json::object();
    for (const auto& [x, mu] : b.iso) iso[x] = matching_to_json(mu);
    j["iso"] = iso;
  }
  if (b.costs) j["costs"] = pair_costs_to_json(*b.costs);
  return j;
}

Bundle bundle_from_json(const Json& j) {
  expect_kind(j, "bundle");
  Bundle b;
  b.source = id_from(field(j, "source"));
  auto& em = b.market;
  em.market = market_from_json(field(j, "market"));
  const auto& base = field(j, "base");
  em.base.market = market_from_json(field(base, "market"));
  em.base.phi = id_map_from(field(base, "phi"));
  em.base.rotation_poset = rotations_from_json(field(base, "rotations"));
  for (const auto& [x, rho] : em.base.phi)
    if (!em.base.rotation_poset.rotations.count(rho))
      throw Error(ErrorKind::UnknownElementId, "phi maps '" + x + "' to unknown rotation '" + rho + "'", {x, rho});
  em.copy_map = id_map_from(field(j, "copy_map"));
  em.aux_workers = set_from(field(j, "aux_workers"));
  em.aux_firms = set_from(field(j, "aux_firms"));
  const auto& af = field(j, "a_f");
  if (!af.is_object()) bad("'a_f' must be an object");
  for (const auto& [f, v] : af.items()) em.a_f[f] = pairs_from(v);
  const auto count = integer_from(field(j, "augment_count"));
  if (count < 0) bad("'augment_count' must be nonnegative");
  em.augment_count = static_cast<std::size_t>(count);
  const auto& omega = field(j, "omega");
  if (!omega.is_array()) bad("'omega' must be an array");
  for (const auto& c : omega) em.applied.push_back(constraint_from_json(c));
  if (j.contains("lattice")) b.lattice = lattice_from_json(j.at("lattice"));
  if (j.contains("iso")) {
    const auto& iso = j.at("iso");
    if (!iso.is_object()) bad("'iso' must be an object");
    for (const auto& [x, mu] : iso.items()) b.iso[x] = matching_from_json(mu);
  }
  if (j.contains("costs")) b.costs = pair_costs_from_json(j.at("costs"));
  return b;
}

// ---- antimatroids, graphs, costs

Json antimatroid_to_json(const Antimatroid& a) {
  Json j = header("antimatroid");
  j["ground"] = a.ground;
  j["feasible"] = sets_to(a.feasible);
  return j;
}

Json path_poset_to_json(const PathPoset& pp) {
  Json j = header("antimatroid");
  j["ground"] = pp.ground;
  Json a = Json::array();
  for (const auto& p : pp.paths) a.push_back(Json{{"set", p.set}, {"endpoint", p.endpoint}});
  j["paths"] = a;
  return j;
}

PathPoset path_poset_from_json(const Json& j) {
  expect_kind(j, "antimatroid");
  if (j.contains("feasible")) return compute_path_poset(antimatroid_from_json(j));
  PathPoset pp;
  pp.ground = ids_from(field(j, "ground"));
  const auto& a = field(j, "paths");
  if (!a.is_array()) bad("'paths' must be an array");
  for (const auto& p : a) pp.paths.push_back(Path{set_from(field(p, "set")), id_from(field(p, "endpoint"))});
  // Round trip through the family so that malformed path lists are caught.
  const auto fam = family_from_path_poset(pp);
  validate_antimatroid(fam);
  const auto canonical = compute_path_poset(fam);
  std::vector<Path> given = pp.paths;
  std::sort(given.begin(), given.end(), [](const Path& x, const Path& y) {
    return BySizeThenLex{}(x.set, y.set) || (x.set == y.set && x.endpoint < y.endpoint);
  });
  if (given != canonical.paths)
    throw Error(ErrorKind::NotAnAntimatroid, "listed paths are not exactly the paths of the family they generate");
  return canonical;
}

Antimatroid antimatroid_from_json(const Json& j) {
  expect_kind(j, "antimatroid");
  if (!j.contains("feasible")) return family_from_path_poset(path_poset_from_json(j));
  auto a = make_antimatroid(ids_from(field(j, "ground")), sets_from(field(j, "feasible")));
  validate_antimatroid(a);
  return a;
}

Json graph_to_json(const Graph& g) {
  Json j = header("graph");
  j["vertices"] = g.vertices;
  j["edges"] = pairs_to(g.edges);
  return j;
}

Graph graph_from_json(const Json& j) {
  expect_kind(j, "graph");
  return Graph{ids_from(field(j, "vertices")), pairs_from(field(j, "edges"))};
}

Json ground_costs_to_json(const GroundCosts& c) {
  Json j = header("costs");
  j["ground"] = c;
  return j;
}

GroundCosts ground_costs_from_json(const Json& j) {
  expect_kind(j, "costs");
  const auto& g = field(j, "ground");
  if (!g.is_object()) bad("'ground' must be an object");
  GroundCosts c;
  for (const auto& [x, v] : g.items()) c[x] = integer_from(v);
  return c;
}

Json pair_costs_to_json(const PairCosts& c) {
  Json j = header("costs");
  Json a = Json::array();
  for (const auto& [p, v] : c) a.push_back(Json::array({p.first, p.second, v.numerator(), v.denominator()}));
  j["pairs"] = a;
  return j;
}

PairCosts pair_costs_from_json(const Json& j) {
  expect_kind(j, "costs");
  const auto& a = field(j, "pairs");
  if (!a.is_array()) bad("'pairs' must be an array");
  PairCosts c;
  for (const auto& row : a) {
    if (!row.is_array() || row.size() != 4) bad("a pair cost is [firm, worker, numerator, denominator], got " + row.dump());
    const auto den = integer_from(row[3]);
    if (den == 0) bad("zero denominator in " + row.dump());
    const Pair p{id_from(row[0]), id_from(row[1])};
    if (!c.emplace(p, Rational(integer_from(row[2]), den)).second) bad("repeated pair cost " + row.dump());
  }
  return c;
}

// ---- DOT

std::string to_dot(const Poset& p, const std::string& name, const std::map<Id, std::string>& labels) {
  std::ostringstream out;
  out << "digraph " << dot_quote(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (const auto& x : p.elements()) {
    out << "  " << dot_quote(x);
    if (auto it = labels.find(x); it != labels.end()) out << " [label=" << dot_quote(it->second) << "]";
    out << ";\n";
  }
  for (const auto& [lo, hi] : p.covers()) out << "  " << dot_quote(lo) << " -> " << dot_quote(hi) << ";\n";
  out << "}\n";
  return out.str();
}

Poset containment_poset(const std::vector<IdSet>& family) {
  std::vector<Id> names;
  std::vector<std::pair<Id, Id>> pairs;
  for (const auto& a : family) {
    names.push_back(set_name(a));
    for (const auto& b : family)
      if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end())) pairs.emplace_back(set_name(a), set_name(b));
  }
  std::sort(names.begin(), names.end());
  return Poset::from_pairs(names, pairs);
}

}  // namespace latmatch::io
