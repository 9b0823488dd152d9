#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gwa/cli/cli.hpp"
#include "gwa/core/canonical.hpp"
#include "gwa/core/validate.hpp"
#include "gwa/io/json.hpp"
#include "gwa/witnesses/theorem2.hpp"

namespace gwa {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return parse_json(out, "stdout"); }
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gwa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("GWA_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("GWA_SEED");
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  static Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(cli::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate"}).code, 2);
  EXPECT_EQ(run({"validate", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "repro", "claim3"}).code, 2);
  EXPECT_EQ(run({"witness", "F", "--n", "3", "--k", "4", "--d", "nowhere"}).code, 2);
  // Counter automaton needs n >= 4.
  EXPECT_EQ(run({"witness", "automaton", "--n", "2", "--k", "9"}).code, 2);
}

TEST_F(CliTest, MalformedFilesGiveLocations) {
  write("bad.json", "{\n  \"nodes\": [\n    {\"id\": \"v\" \"label\": \"r\"}\n  ]\n}\n");
  Result r = run({"validate", path("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.json:3:"), std::string::npos) << r.err;

  write("sig.json", dump(signature_to_json(*theorem2_signature(9))));
  write("g.json", R"({"nodes": [{"id": "v", "label": "nope"}], "initial": "v", "edges": []})");
  r = run({"validate", path("g.json"), "--sig", path("sig.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/nodes/0"), std::string::npos) << r.err;
}

TEST_F(CliTest, ValidateTamperedGraphExitsOne) {
  ASSERT_EQ(run({"witness", "G-counter", "--n", "4", "--k", "9", "--i", "1", "--j", "1", "-o", path("g.json")}).code, 0);
  Result ok = run({"validate", path("g.json")});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;

  Json g = read_json_file(path("g.json"));
  g["edges"].erase(g["edges"].begin());
  write("tampered.json", dump(g));
  Result bad = run({"--format", "machine", "validate", path("tampered.json")});
  EXPECT_EQ(bad.code, 1);
  Json report = bad.json();
  EXPECT_EQ(report["status"], "failed");
  ASSERT_FALSE(report["counterexamples"].empty());
  EXPECT_EQ(report["counterexamples"][0]["kind"], "missing edge");
  EXPECT_EQ(report["inputs"][0]["sha256"], cli::sha256_hex(read_text_file(path("tampered.json"))));
}

TEST_F(CliTest, WitnessGraphsMatchTheLibrary) {
  ASSERT_EQ(run({"witness", "G-probe", "--n", "4", "--k", "9", "--i", "2", "--d=-b", "--dprime", "c", "-o", path("g.json"),
                 "--dot", path("g.dot")})
                .code,
            0);
  Graph g = graph_from_json(read_json_file(path("g.json")), nullptr);
  SignaturePtr sig = theorem2_signature(9);
  Graph expected = build_G_probe(sig, 4, 2, sig->direction("-b"), sig->direction("c"));
  EXPECT_EQ(canonical_encode(g.rebind(sig)), canonical_encode(expected));
  EXPECT_TRUE(fs::exists(path("g.dot")));

  // Without -o the document itself is printed.
  Result h = run({"witness", "H", "--n", "2", "--k", "4", "--variant", "fake"});
  ASSERT_EQ(h.code, 0);
  Json doc = h.json();
  EXPECT_EQ(doc["port"]["dir"], "a");
  EXPECT_EQ(doc["nodes"].size(), 8u);
}

TEST_F(CliTest, ReproClaim3Tables) {
  Result r = run({"--format", "machine", "repro", "claim3", "--n", "4", "--k", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  ASSERT_EQ(j["results"]["counter"].size(), 16u * 9u);
  ASSERT_EQ(j["results"]["probe"].size(), 4u * 81u);
  for (const auto& row : j["results"]["counter"]) EXPECT_EQ(row["accepted"], row["i"] == row["j"]);
  for (const auto& row : j["results"]["probe"]) EXPECT_EQ(row["accepted"], row["d"] == row["dprime"]);
}

TEST_F(CliTest, ReproThm1Small) {
  Result r = run({"--format", "machine", "repro", "thm1", "--suite", "small"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  for (const auto& row : j["results"]["state_counts"]) {
    const std::size_t nk = row["n"].get<std::size_t>() * row["k"].get<std::size_t>();
    EXPECT_EQ(row["states"], row["unique_initial"].get<bool>() ? nk : nk + 1);
  }
  for (const auto& s : j["results"]["suites"]) EXPECT_EQ(s["acceptance_disagreements"], 0);
  EXPECT_NE(run({"repro", "thm1", "--suite", "small"}).out.find("(nk+1 = 9)"), std::string::npos);
}

TEST_F(CliTest, ReportsAreDeterministic) {
  std::vector<std::string> args{"--format", "machine", "witness", "sweep", "--n", "4", "--k", "9"};
  Result a = run(args);
  std::vector<std::string> parallel = args;
  parallel.insert(parallel.begin(), {"--jobs", "4"});
  Result b = run(parallel);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, run(args).out);

  std::vector<std::string> timed = args;
  timed.insert(timed.begin(), "--timing");
  EXPECT_TRUE(run(timed).json().contains("wall_seconds"));
  EXPECT_FALSE(a.json().contains("wall_seconds"));
}

TEST_F(CliTest, SeedFlagAndEnvironment) {
  ASSERT_EQ(run({"witness", "hom", "--k", "9", "-o", path("h.json")}).code, 0);
  ASSERT_EQ(run({"witness", "automaton", "--n", "4", "--k", "9", "-o", path("a.json")}).code, 0);
  std::vector<std::string> args{"--format", "machine", "hom", "verify", path("h.json"), "-a", path("a.json"),
                                "--suite", "random", "--count", "5", "--max-nodes", "5"};
  Result plain = run(args);
  ASSERT_EQ(plain.code, 0) << plain.out << plain.err;
  EXPECT_EQ(plain.json()["parameters"]["seed"], 20240601u);
  setenv("GWA_SEED", "99", 1);
  EXPECT_EQ(run(args).json()["parameters"]["seed"], 99u);
  std::vector<std::string> flagged = args;
  flagged.insert(flagged.begin(), {"--seed", "7"});
  EXPECT_EQ(run(flagged).json()["parameters"]["seed"], 7u);
  setenv("GWA_SEED", "banana", 1);
  EXPECT_EQ(run(args).code, 2);
}

TEST_F(CliTest, InvertAndAgree) {
  ASSERT_EQ(run({"witness", "hom", "--k", "9", "-o", path("h.json")}).code, 0);
  ASSERT_EQ(run({"witness", "automaton", "--n", "4", "--k", "9", "-o", path("a.json")}).code, 0);
  Result inv = run({"--format", "machine", "hom", "invert", path("h.json"), "-a", path("a.json"), "-o", path("b.json")});
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_EQ(inv.json()["results"]["states"], inv.json()["results"]["predicted"]);
  EXPECT_EQ(run({"validate", path("b.json")}).code, 0);

  Result same = run({"--format", "machine", "agree", path("a.json"), path("a.json"), "--random", "10"});
  EXPECT_EQ(same.code, 0) << same.err;
  EXPECT_EQ(same.json()["results"]["graphs"], 10);

  // Dropping the accepting q0? entry must change the answer on G_{0,0,a}.
  ASSERT_EQ(run({"witness", "G-counter", "--n", "4", "--k", "9", "--i", "0", "--j", "0", "-o", path("g.json")}).code, 0);
  Result one = run({"run", "-a", path("a.json"), "-g", path("g.json")});
  EXPECT_NE(one.out.find("accept"), std::string::npos);
  Json b = read_json_file(path("a.json"));
  Json filtered = Json::array();
  for (const auto& pair : b["accept"]) {
    if (pair[1] != "q0?") filtered.push_back(pair);
  }
  b["accept"] = filtered;
  write("a3.json", dump(b));
  Result diff = run({"agree", path("a.json"), path("a3.json"), "-g", path("g.json")});
  EXPECT_EQ(diff.code, 1) << diff.out;
}

TEST_F(CliTest, TraceTruncates) {
  ASSERT_EQ(run({"witness", "automaton", "--n", "4", "--k", "9", "-o", path("a.json")}).code, 0);
  ASSERT_EQ(run({"witness", "G-counter", "--n", "4", "--k", "9", "--i", "3", "--j", "3", "-o", path("g.json")}).code, 0);
  Json full = run({"--format", "machine", "trace", "-a", path("a.json"), "-g", path("g.json")}).json();
  EXPECT_EQ(full["results"]["outcome"], "accept");
  EXPECT_EQ(full["results"]["trace"].size(), full["results"]["steps"].get<std::size_t>() + 1);
  EXPECT_FALSE(full["results"]["truncated"]);
  Json cut = run({"--format", "machine", "trace", "-a", path("a.json"), "-g", path("g.json"), "--max-len", "3"}).json();
  EXPECT_EQ(cut["results"]["trace"].size(), 3u);
  EXPECT_TRUE(cut["results"]["truncated"]);
}

TEST_F(CliTest, TreeCommands) {
  Result ch = run({"tree", "characterize", "--builtin", "parity", "-o", path("bundle")});
  ASSERT_EQ(ch.code, 0) << ch.err;
  for (const char* f : {"reg.json", "mid.json", "comp.json", "g.json", "h.json", "automaton.json"}) {
    EXPECT_TRUE(fs::exists(path("bundle/") + f)) << f;
  }
  EXPECT_EQ(run({"validate", path("bundle/g.json")}).code, 0);
  EXPECT_EQ(run({"tree", "validate", path("bundle/automaton.json")}).code, 0);

  Result v = run({"--format", "machine", "tree", "verify", "-a", path("bundle/automaton.json"), "--max-nodes", "5"});
  ASSERT_EQ(v.code, 0) << v.out << v.err;
  EXPECT_EQ(v.json()["results"]["fishbone_mismatches"], 0);

  // r2(x1_0, x2_0): three nodes, odd.
  write("t.json", R"({"nodes": [{"id": "r", "label": "r2"}, {"id": "u", "label": "x1_0"}, {"id": "w", "label": "x2_0"}],
                      "initial": "r", "edges": [{"from": "r", "dir": "+1", "to": "u"}, {"from": "r", "dir": "+2", "to": "w"}]})");
  Json e = run({"--format", "machine", "tree", "eval", "-a", path("bundle/automaton.json"), "-t", path("t.json")}).json();
  EXPECT_EQ(e["results"]["root_state"], "odd");
  EXPECT_EQ(e["results"]["accepted"], false);

  // A missing transition makes the automaton invalid.
  Json a = read_json_file(path("bundle/automaton.json"));
  a["delta"].erase(a["delta"].begin());
  write("partial.json", dump(a));
  EXPECT_EQ(run({"tree", "validate", path("partial.json")}).code, 1);
  EXPECT_EQ(run({"tree", "verify", "-a", path("partial.json")}).code, 1);
}

TEST_F(CliTest, ReproThm4) {
  Result r = run({"--format", "machine", "repro", "thm4", "--max-nodes", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = r.json();
  ASSERT_EQ(j["results"]["automata"].size(), 2u);
  for (const auto& row : j["results"]["automata"]) EXPECT_EQ(row["h_roundtrips"], row["reg_trees"]);
  // Per-command defaults apply even when global flags come first.
  EXPECT_EQ(j["parameters"]["k"], 2);
  Result d = run({"--jobs", "2", "--format", "machine", "repro", "thm4"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.json()["parameters"]["max_nodes"], 7);
  EXPECT_EQ(d.json()["parameters"]["k"], 2);
}

}  // namespace
}  // namespace gwa
