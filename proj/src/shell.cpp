#include "latmatch/shell.hpp"

#include <chrono>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>

#include "CLI11.hpp"

#include "latmatch/acceptance.hpp"
#include "latmatch/antimatroid.hpp"
#include "latmatch/augment.hpp"
#include "latmatch/generate.hpp"
#include "latmatch/io.hpp"
#include "latmatch/realize.hpp"

namespace latmatch::shell {

using io::Json;

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EnumerationBoundExceeded:
    case ErrorKind::SearchBoundExceeded:
    case ErrorKind::NonConvergence:
      return kSearchBound;
    case ErrorKind::NonLatticeStructure:
    case ErrorKind::NotRepresentable:
    case ErrorKind::ProjectionNotStable:
    case ErrorKind::IsomorphismFailure:
      return kInvariantBreach;
    default:
      return kValidation;
  }
}

namespace {

const char* outcome_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kValidation: return "validation_failure";
    case kSearchBound: return "search_bound_exceeded";
    default: return "invariant_breach";
  }
}

struct Settings {
  std::uint64_t bound_nodes = kDefaultNodeBound;
  std::size_t bound_elements = kDefaultElementBound;
  std::uint64_t seed = 1;
  std::string report_path;
  bool no_timing = false;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Json load(const std::string& path) {
    const auto text = io::read_text_file(path);
    inputs_.push_back(Json{{"path", path}, {"fnv1a64", io::hex64(io::fnv1a64(text))}});
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::Io, path + ": " + e.what(), {path});
    }
  }

  // Writes to `path`, or to `out` when the path is empty.
  void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
      out << text;
      outputs_.push_back(Json{{"path", "-"}, {"fnv1a64", io::hex64(io::fnv1a64(text))}});
    } else {
      io::write_text_file(path, text);
      outputs_.push_back(Json{{"path", path}, {"fnv1a64", io::hex64(io::fnv1a64(text))}});
    }
  }

  void check(const std::string& name, bool ok, const std::string& detail = {}, std::vector<std::string> witness = {}) {
    if (!ok && witness.empty()) witness.push_back(name);
    Json c{{"name", name}, {"ok", ok}};
    if (!detail.empty()) c["detail"] = detail;
    if (!ok) c["witness"] = witness;
    checks_.push_back(c);
    failed_ = failed_ || !ok;
  }

  bool failed() const { return failed_; }
  Json& result() { return result_; }

  Json to_json(int code, double seconds, bool timing) const {
    Json j{{"v", io::kFormatVersion}, {"kind", "report"},     {"command", command_}, {"inputs", inputs_},
           {"outputs", outputs_},     {"exit_code", code},    {"outcome", outcome_name(code)},
           {"checks", checks_},       {"result", result_}};
    if (timing) j["timing"] = Json{{"seconds", seconds}};
    return j;
  }

 private:
  std::string command_;
  Json inputs_ = Json::array();
  Json outputs_ = Json::array();
  Json checks_ = Json::array();
  Json result_ = Json::object();
  bool failed_ = false;
};

EnumerateOptions enum_opts(const Settings& s) { return EnumerateOptions{s.bound_nodes}; }

struct LoadedMarket {
  MatchingMarket market;
  std::optional<io::Bundle> bundle;
};

LoadedMarket load_market(Report& r, const std::string& path) {
  const Json j = r.load(path);
  const auto kind = io::document_kind(j);
  if (kind == "market") return {io::market_from_json(j), std::nullopt};
  if (kind == "bundle") {
    auto b = io::bundle_from_json(j);
    auto m = b.market.market;
    return {std::move(m), std::move(b)};
  }
  throw Error(ErrorKind::Io, path + ": expected a market or bundle, got '" + kind + "'", {path});
}

// Every distinct choice function has to be path independent before any
// stable-matching machinery runs on the market.
void validate_choice_functions(Report& r, const MatchingMarket& m) {
  std::set<std::string> seen;
  for (const auto& [agent, spec] : m.choice) {
    if (!seen.insert(io::choice_to_json(spec).dump()).second) continue;
    const auto rep = check_path_independence(spec);
    if (!rep.ok)
      throw Error(ErrorKind::NotPathIndependent,
                  "choice function of '" + agent + "' fails " + rep.property + " at " + set_name(rep.set),
                  {agent, rep.property, set_name(rep.set), rep.removed});
  }
  r.check("path_independence", true, std::to_string(seen.size()) + " distinct choice functions");
}

void require_size(const Lattice& l, const Settings& s) {
  if (l.size() > s.bound_elements)
    throw Error(ErrorKind::EnumerationBoundExceeded,
                std::to_string(l.size()) + " elements exceed --bound-elements " + std::to_string(s.bound_elements));
}

Json iso_table(const std::map<Id, Matching>& iso) {
  Json t = Json::object();
  for (const auto& [x, mu] : iso) t[x] = io::matching_to_json(mu);
  return t;
}

Json rational_json(const Rational& v) {
  return Json{{"numerator", v.numerator()}, {"denominator", v.denominator()},
              {"text", v.denominator() == 1 ? std::to_string(v.numerator())
                                            : std::to_string(v.numerator()) + "/" + std::to_string(v.denominator())}};
}

// ---- commands

void cmd_synthesize(Report& r, const Settings& s, const std::string& in, const std::string& out_path,
                    std::ostream& out) {
  const Lattice l = io::lattice_from_json(r.load(in));
  require_size(l, s);
  const auto syn = synthesize_from_lattice(l, enum_opts(s));
  std::map<Id, Id> f;
  for (const auto& [x, mu] : syn.iso) f[x] = syn.stable.id_of(mu);
  const auto iso = check_order_isomorphism(f, l.order(), syn.stable.lattice.order());
  r.check("order_isomorphism", iso.ok, iso.reason, iso.witness);
  r.check("stable_count", syn.stable.matchings.size() == l.size(),
          std::to_string(syn.stable.matchings.size()) + " stable matchings for " + std::to_string(l.size()) + " elements");

  io::Bundle b;
  b.market = syn.market;
  b.source = "lattice";
  b.lattice = l;
  b.iso = syn.iso;
  r.emit(out_path, io::dump(io::bundle_to_json(b)), out);
  r.result() = Json{{"elements", l.size()},
                    {"join_irreducibles", syn.market.base.phi.size()},
                    {"constraints", syn.omega.size()},
                    {"agents", syn.market.market.agent_count()},
                    {"stable_matchings", syn.stable.matchings.size()},
                    {"iso", iso_table(syn.iso)}};
}

void cmd_verify(Report& r, const Settings& s, const std::string& market_path, const std::string& lattice_path) {
  const auto lm = load_market(r, market_path);
  const Lattice l = io::lattice_from_json(r.load(lattice_path));
  require_size(l, s);
  validate_choice_functions(r, lm.market);
  const auto sl = stable_lattice(lm.market, enum_opts(s));
  r.check("stable_count", sl.matchings.size() == l.size(),
          std::to_string(sl.matchings.size()) + " stable matchings, " + std::to_string(l.size()) + " lattice elements",
          {std::to_string(sl.matchings.size()), std::to_string(l.size())});
  const auto found = find_order_isomorphism(l.order(), sl.lattice.order());
  r.check("order_isomorphism", found.has_value(),
          found ? "" : "the Blair lattice of the market is not isomorphic to the given lattice", {"no isomorphism"});
  if (found) {
    std::map<Id, Matching> iso;
    for (const auto& [x, id] : *found) iso[x] = sl.matchings.at(id);
    r.result()["iso"] = iso_table(iso);
  }
  if (lm.bundle) {
    const auto& em = lm.bundle->market;
    const auto rep = verify_extension(em.base, em, em.applied, enum_opts(s));
    for (const auto& c : rep.checks) r.check("extension:" + c.name, c.ok, c.detail, {c.detail});
  }
  r.result()["stable_matchings"] = sl.matchings.size();
}

void cmd_enumerate(Report& r, const Settings& s, const std::string& in, const std::string& out_path,
                   std::ostream& out) {
  const auto lm = load_market(r, in);
  validate_choice_functions(r, lm.market);
  EnumerateStats stats;
  const auto all = enumerate_stable(lm.market, enum_opts(s), &stats);
  r.emit(out_path, io::dump(io::matchings_to_json(all)), out);
  r.result() = Json{{"stable_matchings", all.size()}, {"search_nodes", stats.nodes}};
}

void cmd_rotations(Report& r, const Settings& s, const std::string& in, const std::string& out_path,
                   const std::string& dot_path, std::ostream& out) {
  const auto lm = load_market(r, in);
  const auto rp = extract_rotations(lm.market, enum_opts(s));
  r.emit(out_path, io::dump(io::rotations_to_json(rp)), out);
  if (!dot_path.empty()) r.emit(dot_path, io::to_dot(rp.order, "rotations"), out);
  r.result() = Json{{"rotations", rp.rotations.size()}, {"covers", rp.order.covers().size()}};
}

void cmd_reduce(Report& r, const std::string& in, const std::string& costs_path, const std::string& out_path,
                std::ostream& out) {
  const Json j = r.load(in);
  const auto kind = io::document_kind(j);
  PathPoset pp;
  std::optional<GroundCosts> costs;
  if (kind == "graph") {
    const auto wa = independent_set_antimatroid(io::graph_from_json(j));
    pp = compute_path_poset(wa.family);
    costs = wa.weights;
  } else if (kind == "antimatroid") {
    pp = io::path_poset_from_json(j);
  } else {
    throw Error(ErrorKind::Io, in + ": expected an antimatroid or graph, got '" + kind + "'", {in});
  }
  if (!costs_path.empty()) costs = io::ground_costs_from_json(r.load(costs_path));
  if (!costs) throw Error(ErrorKind::InvalidInput, "an antimatroid needs a costs file", {in});
  for (const auto& [x, c] : *costs)
    if (!std::binary_search(pp.ground.begin(), pp.ground.end(), x))
      throw Error(ErrorKind::UnknownElementId, "cost given for '" + x + "', which is not a ground element", {x});
  const auto red = reduce_to_matching(pp, *costs);

  io::Bundle b;
  b.market = red.market;
  b.source = "antimatroid";
  b.costs = red.costs;
  r.emit(out_path, io::dump(io::bundle_to_json(b)), out);
  Json recover = Json::object();
  for (const auto& [x, rho] : red.base.phi) recover[x] = rho;
  r.result() = Json{{"ground", pp.ground.size()},
                    {"paths", pp.paths.size()},
                    {"constraints", red.omega.size()},
                    {"agents", red.market.market.agent_count()},
                    {"recover", recover}};
  r.check("reduction_built", true);
}

void cmd_solve(Report& r, const Settings& s, const std::string& in, const std::string& costs_path,
               const std::string& sense_name, bool integer) {
  const auto lm = load_market(r, in);
  const Sense sense = sense_name == "max" ? Sense::Max : Sense::Min;
  PairCosts costs;
  if (!costs_path.empty())
    costs = io::pair_costs_from_json(r.load(costs_path));
  else if (lm.bundle && lm.bundle->costs)
    costs = *lm.bundle->costs;
  else
    throw Error(ErrorKind::InvalidInput, "no costs: pass a costs file or a bundle that carries costs", {in});
  for (const auto& [p, c] : costs)
    if (!lm.market.is_firm(p.first) || !lm.market.is_worker(p.second))
      throw Error(ErrorKind::UnknownPartnerId, "cost for a pair outside the market", {p.first, p.second});
  validate_choice_functions(r, lm.market);

  const auto opt = min_cost_stable(lm.market, costs, sense, enum_opts(s));
  r.result()["sense"] = sense_name;
  r.result()["value"] = rational_json(opt.value);
  r.result()["matching"] = io::matching_to_json(opt.matching);
  if (integer) {
    long long scale = 1;
    for (const auto& [p, c] : costs) scale = std::lcm(scale, c.denominator());
    const Rational scaled = opt.value * scale;
    r.check("integer_scaling", scaled.denominator() == 1);
    r.result()["integer"] = Json{{"scale", scale}, {"value", scaled.numerator()}};
  }
  if (lm.bundle && lm.bundle->source == "antimatroid") {
    const auto& em = lm.bundle->market;
    Reduction red{em.base, em.applied, em, costs};
    r.result()["recovered"] = red.recover(opt.matching);
  }
  r.check("optimum_found", true);
}

void cmd_export_dot(Report& r, const std::string& in, const std::string& out_path, std::ostream& out) {
  const Json j = r.load(in);
  const auto kind = io::document_kind(j);
  std::string dot;
  if (kind == "lattice") {
    dot = io::to_dot(io::lattice_from_json(j).order(), "lattice");
  } else if (kind == "poset" || kind == "rotations") {
    dot = io::to_dot(io::poset_from_json(j), kind);
  } else if (kind == "antimatroid") {
    dot = io::to_dot(io::containment_poset(io::antimatroid_from_json(j).feasible), "antimatroid");
  } else if (kind == "bundle") {
    const auto b = io::bundle_from_json(j);
    if (!b.lattice) throw Error(ErrorKind::Io, in + ": bundle carries no lattice", {in});
    dot = io::to_dot(b.lattice->order(), "lattice");
  } else {
    throw Error(ErrorKind::Io, in + ": cannot draw a '" + kind + "' document", {in});
  }
  r.emit(out_path, dot, out);
}

int cmd_selftest(Report& r, const Settings& s, const std::vector<int>& only, std::ostream& out) {
  const auto results = acceptance::run({s.seed, s.bound_nodes}, only);
  for (const auto& c : results) {
    out << acceptance::format_line(c) << "\n";
    r.check("criterion " + std::to_string(c.number), c.ok, c.title, c.failures);
  }
  return r.failed() ? kInvariantBreach : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Realize lattices as stable-matching lattices and reduce antimatroid costs to stable matchings."};
  app.name("latmatch");
  app.require_subcommand(1);
  Settings s;
  app.add_option("--bound-nodes", s.bound_nodes, "Search node limit for stable-matching enumeration");
  app.add_option("--bound-elements", s.bound_elements, "Largest lattice accepted as input");
  app.add_option("--seed", s.seed, "Seed for generated fixtures");
  app.add_option("--report", s.report_path, "Write the run report here");
  app.add_flag("--no-timing", s.no_timing, "Leave timing out of the run report");

  std::string in, in2, out_path, dot_path, sense = "min";
  bool integer = false;
  std::vector<int> only;

  auto* syn = app.add_subcommand("synthesize", "Build a market whose stable matchings form the given lattice");
  syn->add_option("lattice", in, "Lattice file")->required();
  syn->add_option("-o,--out", out_path, "Bundle file to write")->required();

  auto* ver = app.add_subcommand("verify", "Check a market's stable-matching lattice against a lattice");
  ver->add_option("market", in, "Market or bundle file")->required();
  ver->add_option("lattice", in2, "Lattice file")->required();

  auto* en = app.add_subcommand("enumerate", "List all stable matchings");
  en->add_option("market", in, "Market or bundle file")->required();
  en->add_option("-o,--out", out_path, "Matchings file (default: stdout)");

  auto* rot = app.add_subcommand("rotations", "Extract the rotation poset of a one-to-one market");
  rot->add_option("market", in, "Market file")->required();
  rot->add_option("-o,--out", out_path, "Rotations file (default: stdout)");
  rot->add_option("--dot", dot_path, "Also write the rotation order as DOT");

  auto* red = app.add_subcommand("reduce", "Reduce a weighted antimatroid to a stable-matching market");
  red->add_option("input", in, "Antimatroid or graph file")->required();
  red->add_option("costs", in2, "Ground costs file (graphs default to the independent-set weights)");
  red->add_option("-o,--out", out_path, "Bundle file to write")->required();

  auto* sol = app.add_subcommand("solve", "Minimum (or maximum) cost stable matching");
  sol->add_option("bundle", in, "Market or bundle file")->required();
  sol->add_option("costs", in2, "Pair costs file (default: the bundle's costs)");
  sol->add_option("--sense", sense, "min or max")->check(CLI::IsMember({"min", "max"}));
  sol->add_flag("--integer", integer, "Also report the value scaled to an integer");

  auto* dot = app.add_subcommand("export-dot", "Draw a lattice, poset, rotation poset or antimatroid");
  dot->add_option("file", in, "Input file")->required();
  dot->add_option("-o,--out", out_path, "DOT file (default: stdout)");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--only", only, "Criterion numbers to run");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidation;
  }

  auto* cmd = app.get_subcommands().front();
  Report r(cmd->get_name());
  // Artifacts written to stdout push the report to stderr.
  const bool artifact_on_stdout = (cmd == en || cmd == rot || cmd == dot) && out_path.empty();
  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (cmd == syn) cmd_synthesize(r, s, in, out_path, out);
    if (cmd == ver) cmd_verify(r, s, in, in2);
    if (cmd == en) cmd_enumerate(r, s, in, out_path, out);
    if (cmd == rot) cmd_rotations(r, s, in, out_path, dot_path, out);
    if (cmd == red) cmd_reduce(r, in, in2, out_path, out);
    if (cmd == sol) cmd_solve(r, s, in, in2, sense, integer);
    if (cmd == dot) cmd_export_dot(r, in, out_path, out);
    if (cmd == self) code = cmd_selftest(r, s, only, out);
    if (r.failed() && code == kOk) code = kInvariantBreach;
  } catch (const Error& e) {
    code = exit_code_for(e.kind());
    std::vector<std::string> w = e.witness();
    if (w.empty()) w.push_back(to_string(e.kind()));
    r.check("error", false, e.what(), w);
    err << "latmatch: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    code = kValidation;
    r.check("error", false, e.what(), {"malformed input"});
    err << "latmatch: " << e.what() << "\n";
  } catch (const std::exception& e) {
    code = kInvariantBreach;
    r.check("error", false, e.what(), {"internal"});
    err << "latmatch: " << e.what() << "\n";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string report = io::dump(r.to_json(code, seconds, !s.no_timing));
  try {
    // selftest prints its criterion lines instead of a report.
    if (!s.report_path.empty())
      io::write_text_file(s.report_path, report);
    else if (artifact_on_stdout)
      err << report;
    else if (cmd != self)
      out << report;
  } catch (const Error& e) {
    err << "latmatch: " << e.what() << "\n";
    if (code == kOk) code = kValidation;
  }
  return code;
}

}  // namespace latmatch::shell
