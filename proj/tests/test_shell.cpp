#include "doctest.h"

#include <filesystem>
#include <random>
#include <sstream>

#include "latmatch/augment.hpp"
#include "latmatch/fixtures.hpp"
#include "latmatch/io.hpp"
#include "latmatch/shell.hpp"

using namespace latmatch;
using io::Json;
namespace fs = std::filesystem;

namespace {

const std::string kCli = LATMATCH_CLI_DIR;

std::string cli(const std::string& name) { return kCli + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = shell::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("latmatch-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::map<std::string, bool> checks_of(const Json& report) {
  std::map<std::string, bool> out;
  for (const auto& c : report.at("checks")) out[c.at("name").get<std::string>()] = c.at("ok").get<bool>();
  return out;
}

void write_market(const std::string& path, const MatchingMarket& m) {
  io::write_text_file(path, io::dump(io::market_to_json(m)));
}

}  // namespace

TEST_CASE("synthesize and verify the six-element lattice") {
  TempDir tmp;
  const auto syn = run({"synthesize", cli("six_element.json"), "-o", tmp / "six.json"});
  REQUIRE(syn.code == 0);
  const auto rep = syn.report();
  CHECK(rep.at("outcome") == "ok");
  CHECK(rep.at("result").at("stable_matchings") == 6);
  CHECK(rep.at("result").at("iso").size() == 6);
  for (const auto& [name, ok] : checks_of(rep)) CHECK_MESSAGE(ok, name);

  const auto b = io::bundle_from_json(io::read_json_file(tmp / "six.json"));
  CHECK(b.source == "lattice");
  CHECK(b.iso.size() == 6);
  CHECK(enumerate_stable(b.market.market).size() == 6);

  const auto ok = run({"verify", tmp / "six.json", cli("six_element.json")});
  CHECK(ok.code == 0);
  for (const auto& [name, pass] : checks_of(ok.report())) CHECK_MESSAGE(pass, name);
  CHECK(checks_of(ok.report()).count("extension:image equals the constrained base matchings"));

  const auto wrong = run({"verify", tmp / "six.json", cli("pentagon.json")});
  CHECK(wrong.code == shell::kInvariantBreach);
  CHECK(wrong.report().at("outcome") == "invariant_breach");
  CHECK_FALSE(checks_of(wrong.report()).at("stable_count"));
  CHECK_FALSE(checks_of(wrong.report()).at("order_isomorphism"));
}

TEST_CASE("synthesize small lattices") {
  TempDir tmp;
  const auto one = run({"synthesize", cli("one_element.json"), "-o", tmp / "one.json"});
  REQUIRE(one.code == 0);
  const auto b = io::bundle_from_json(io::read_json_file(tmp / "one.json"));
  CHECK(b.market.market.agent_count() == 0);
  CHECK(b.market.applied.empty());
  CHECK(b.iso == std::map<Id, Matching>{{"only", {}}});

  const auto n5 = run({"synthesize", cli("pentagon.json"), "-o", tmp / "n5.json"});
  CHECK(n5.code == 0);
  CHECK(run({"verify", tmp / "n5.json", cli("pentagon.json")}).code == 0);
  const auto m3 = run({"synthesize", cli("diamond.json"), "-o", tmp / "m3.json"});
  CHECK(m3.code == 0);
  CHECK(run({"verify", tmp / "m3.json", cli("diamond.json")}).code == 0);
  CHECK(run({"verify", tmp / "m3.json", cli("pentagon.json")}).code == shell::kInvariantBreach);
}

TEST_CASE("enumerate") {
  TempDir tmp;
  const auto gi = run({"enumerate", cli("gi_market.json")});
  REQUIRE(gi.code == 0);
  std::vector<Matching> expected;
  for (const auto& [k, mu] : fixtures::gi_matchings()) expected.push_back(mu);
  std::sort(expected.begin(), expected.end());
  CHECK(io::matchings_from_json(Json::parse(gi.out)) == expected);
  // The report went to stderr because the matchings took stdout.
  CHECK(Json::parse(gi.err).at("result").at("stable_matchings") == 10);

  const auto base = fixtures::gi_base();
  const auto em = augment(as_extendable(base), derive_sets(fixtures::gi_worked_constraint(), base.rotation_poset));
  write_market(tmp / "aug.json", em.market);
  const auto aug = run({"enumerate", tmp / "aug.json", "-o", tmp / "aug_m.json"});
  REQUIRE(aug.code == 0);
  CHECK(io::matchings_from_json(io::read_json_file(tmp / "aug_m.json")).size() == 7);
  CHECK(aug.report().at("outputs")[0].at("path") == tmp / "aug_m.json");

  const auto empty = run({"enumerate", cli("empty_market.json")});
  REQUIRE(empty.code == 0);
  CHECK(io::matchings_from_json(Json::parse(empty.out)) == std::vector<Matching>{Matching{}});
}

TEST_CASE("rotations") {
  TempDir tmp;
  const auto gi = run({"rotations", cli("gi_market.json"), "-o", tmp / "rot.json", "--dot", tmp / "rot.dot"});
  REQUIRE(gi.code == 0);
  const auto rp = io::rotations_from_json(io::read_json_file(tmp / "rot.json"));
  CHECK(rp == extract_rotations(fixtures::gi_market()));
  CHECK(rp.rotations.size() == 4);
  CHECK(rp.order.covers().size() == 2);
  const auto dot = io::read_text_file(tmp / "rot.dot");
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  CHECK(gi.report().at("outputs").size() == 2);

  write_market(tmp / "anti.json", antichain_base({"x", "y"}).market);
  const auto anti = run({"rotations", tmp / "anti.json"});
  REQUIRE(anti.code == 0);
  const auto arp = io::rotations_from_json(Json::parse(anti.out));
  CHECK(arp.rotations.size() == 2);
  CHECK(arp.order.covers().empty());

  MatchingMarket unique;
  unique.firms = {"f1", "f2"};
  unique.workers = {"w1", "w2"};
  unique.choice["f1"] = PreferenceList{{{"w1"}, {"w2"}}};
  unique.choice["f2"] = PreferenceList{{{"w2"}, {"w1"}}};
  unique.choice["w1"] = PreferenceList{{{"f1"}, {"f2"}}};
  unique.choice["w2"] = PreferenceList{{{"f2"}, {"f1"}}};
  write_market(tmp / "unique.json", unique);
  const auto u = run({"rotations", tmp / "unique.json"});
  REQUIRE(u.code == 0);
  CHECK(io::rotations_from_json(Json::parse(u.out)).rotations.empty());
}

TEST_CASE("reduce and solve") {
  TempDir tmp;
  const auto red = run({"reduce", cli("ant_paths.json"), cli("ant_costs.json"), "-o", tmp / "ant.json"});
  REQUIRE(red.code == 0);
  CHECK(red.report().at("result").at("constraints") == 4);
  CHECK(red.report().at("result").at("recover").size() == 4);

  const auto mn = run({"solve", tmp / "ant.json", "--integer"});
  REQUIRE(mn.code == 0);
  const auto res = mn.report().at("result");
  CHECK(res.at("value").at("text") == "-4");
  CHECK(res.at("recovered") == Json::array({"a", "b", "c", "d"}));
  CHECK(res.at("integer").at("scale") == 2);
  CHECK(res.at("integer").at("value") == -8);

  const auto mx = run({"solve", tmp / "ant.json", "--sense", "max"});
  REQUIRE(mx.code == 0);
  CHECK(mx.report().at("result").at("value").at("text") == "0");
  CHECK(mx.report().at("result").at("recovered") == Json::array());

  // The feasible-set form of the same antimatroid gives the same bundle.
  CHECK(run({"reduce", cli("ant_feasible.json"), cli("ant_costs.json"), "-o", tmp / "ant2.json"}).code == 0);
  CHECK(io::read_text_file(tmp / "ant.json") == io::read_text_file(tmp / "ant2.json"));

  // C4 has independence number 2.
  REQUIRE(run({"reduce", cli("c4.json"), "-o", tmp / "c4.json"}).code == 0);
  const auto c4 = run({"solve", tmp / "c4.json", "--sense", "max"});
  REQUIRE(c4.code == 0);
  CHECK(c4.report().at("result").at("value").at("text") == "2");

  // A separate costs file overrides the bundle's.
  io::write_text_file(tmp / "zero.json", io::dump(io::pair_costs_to_json({})));
  const auto zero = run({"solve", tmp / "ant.json", tmp / "zero.json"});
  CHECK(zero.code == 0);
  CHECK(zero.report().at("result").at("value").at("text") == "0");

  CHECK(run({"reduce", cli("ant_paths.json"), "-o", tmp / "x.json"}).code == shell::kValidation);
  CHECK(run({"solve", cli("gi_market.json")}).code == shell::kValidation);
}

TEST_CASE("export-dot") {
  const auto six = run({"export-dot", cli("six_element.json")});
  REQUIRE(six.code == 0);
  std::size_t edges = 0;
  for (std::size_t p = six.out.find("->"); p != std::string::npos; p = six.out.find("->", p + 1)) ++edges;
  CHECK(edges == 7);
  CHECK(six.out.find("\"a\" -> \"b\";") != std::string::npos);

  const auto ant = run({"export-dot", cli("ant_feasible.json")});
  REQUIRE(ant.code == 0);
  CHECK(ant.out.find("\"{a,c}\" -> \"{a,c,d}\";") != std::string::npos);
  CHECK(run({"export-dot", cli("gi_market.json")}).code == shell::kValidation);
}

TEST_CASE("exit codes and witnesses") {
  TempDir tmp;
  const std::vector<std::pair<std::vector<std::string>, int>> cases = {
      {{"synthesize", cli("bad_version.json"), "-o", tmp / "x.json"}, shell::kValidation},
      {{"synthesize", cli("not_a_lattice.json"), "-o", tmp / "x.json"}, shell::kValidation},
      {{"export-dot", cli("cyclic_order.json")}, shell::kValidation},
      {{"reduce", cli("not_an_antimatroid.json"), cli("ant_costs.json"), "-o", tmp / "x.json"}, shell::kValidation},
      {{"enumerate", tmp / "missing.json"}, shell::kValidation},
      {{"synthesize", cli("six_element.json"), "-o", tmp / "x.json", "--bound-elements", "3"}, shell::kSearchBound},
      {{"enumerate", cli("gi_market.json"), "--bound-nodes", "2"}, shell::kSearchBound},
      {{"verify", cli("gi_market.json"), cli("six_element.json")}, shell::kInvariantBreach},
  };
  for (const auto& [args, code] : cases) {
    const auto r = run(args);
    CHECK_MESSAGE(r.code == code, (args[0] + " " + args[1]));
    // Reports land on stdout, or on stderr after the diagnostic line.
    const auto& text = r.out.empty() ? r.err.substr(r.err.find('{')) : r.out;
    const auto rep = Json::parse(text);
    CHECK(rep.at("exit_code") == code);
    for (const auto& c : rep.at("checks"))
      if (!c.at("ok").get<bool>()) CHECK_FALSE(c.at("witness").empty());
  }
  CHECK(run({"frobnicate"}).code == shell::kValidation);
  CHECK(run({"solve", cli("gi_market.json"), "--sense", "sideways"}).code == shell::kValidation);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("a choice function that is not path independent is rejected") {
  TempDir tmp;
  MatchingMarket m;
  m.firms = {"f1"};
  m.workers = {"w1", "w2"};
  // Takes both only when offered both: not substitutable.
  m.choice["f1"] = PreferenceList{{{"w1", "w2"}, {"w2"}}};
  m.choice["w1"] = PreferenceList{{{"f1"}}};
  m.choice["w2"] = PreferenceList{{{"f1"}}};
  write_market(tmp / "m.json", m);
  const auto r = run({"enumerate", tmp / "m.json"});
  CHECK(r.code == shell::kValidation);
  CHECK(r.err.find("NotPathIndependent") != std::string::npos);
}

TEST_CASE("outputs are byte-deterministic") {
  TempDir tmp;
  std::vector<std::string> first;
  for (int round = 0; round < 2; ++round) {
    const std::vector<std::vector<std::string>> cmds = {
        {"--no-timing", "--report", tmp / "r1.json", "synthesize", cli("six_element.json"), "-o", tmp / "b.json"},
        {"--no-timing", "--report", tmp / "r2.json", "enumerate", tmp / "b.json", "-o", tmp / "m.json"},
        {"--no-timing", "--report", tmp / "r3.json", "rotations", cli("gi_market.json"), "-o", tmp / "rot.json"},
        {"--no-timing", "--report", tmp / "r4.json", "reduce", cli("c4.json"), "-o", tmp / "c4.json"},
        {"--no-timing", "--report", tmp / "r5.json", "solve", tmp / "c4.json"},
        {"--no-timing", "--report", tmp / "r6.json", "export-dot", cli("ant_paths.json"), "-o", tmp / "ant.dot"}};
    for (const auto& c : cmds) REQUIRE(run(c).code == 0);
    std::vector<std::string> files;
    for (const auto* f : {"r1.json", "r2.json", "r3.json", "r4.json", "r5.json", "r6.json", "b.json", "m.json",
                          "rot.json", "c4.json", "ant.dot"})
      files.push_back(io::read_text_file(tmp / f));
    if (round == 0)
      first = files;
    else
      for (std::size_t i = 0; i < files.size(); ++i) CHECK_MESSAGE(files[i] == first[i], i);
  }
  // Report digests describe the bytes actually written.
  const auto rep = io::read_json_file(tmp / "r1.json");
  CHECK(rep.at("outputs")[0].at("fnv1a64") == io::hex64(io::fnv1a64(io::read_text_file(tmp / "b.json"))));
  CHECK(rep.at("inputs")[0].at("fnv1a64") == io::hex64(io::fnv1a64(io::read_text_file(cli("six_element.json")))));
  CHECK_FALSE(rep.contains("timing"));
}

TEST_CASE("selftest runs chosen criteria") {
  const auto r = run({"selftest", "--only", "1", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("criterion 1 PASS", 0) == 0);
  CHECK(r.out.find("criterion 2 PASS") != std::string::npos);
  CHECK(r.out.find("criterion 3") == std::string::npos);
}
