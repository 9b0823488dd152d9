#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "gwa/cli/cli.hpp"
#include "gwa/core/generate.hpp"
#include "gwa/core/validate.hpp"
#include "gwa/engine/run.hpp"
#include "gwa/hom/invert.hpp"
#include "gwa/repro/thm1.hpp"
#include "gwa/repro/thm4.hpp"
#include "gwa/trees/characterization.hpp"
#include "gwa/witnesses/probe.hpp"
#include "gwa/witnesses/theorem2.hpp"

namespace gwa::cli {
namespace {

// Input problems that are not parse errors (missing file, bad flag value).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  // global
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool timing = false;
  std::string dot;
  // shared
  std::string file;
  std::string second;
  std::string sig;
  std::string kind = "auto";
  std::string automaton;
  std::string graph;
  std::vector<std::string> graphs;
  std::string tree;
  std::string output;
  std::size_t max_len = 1000;
  std::size_t enumerate = 0;
  std::size_t random = 0;
  std::size_t max_nodes = 4;
  std::size_t count = 50;
  std::string suite = "enumerate";
  // witnesses
  std::size_t n = 4;
  std::vector<std::size_t> ns;
  std::size_t k = 9;
  std::size_t i = 0;
  std::optional<std::size_t> i_opt;
  std::size_t j = 0;
  std::string d = "a";
  std::string dprime = "a";
  std::string variant = "start";
  std::string family = "theorem2";
  std::size_t max_states = 2;
  bool image = false;
  std::string builtin;
};

class Command {
 public:
  Command(const Options& o, std::ostream& out, std::string name) : o_(o), out_(out) {
    report.command = std::move(name);
    if (o.seed) seed_ = *o.seed;
    else if (const char* env = std::getenv("GWA_SEED")) seed_ = parse_seed(env);
    else seed_ = kDefaultSeed;
  }

  RunReport report;
  bool artifact_printed = false;

  std::uint64_t seed() {
    report.parameters["seed"] = seed_;
    return seed_;
  }

  Json load(const std::string& path) {
    std::string text = read_text_file(path);
    report.inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
    return parse_json(text, path);
  }

  SignaturePtr supplied_signature() {
    if (o_.sig.empty()) return nullptr;
    return signature_from_json(load(o_.sig), o_.sig);
  }

  // Writes the document to -o, or prints it in place of the report.
  void emit(const Json& doc) {
    const std::string text = dump(doc);
    if (o_.output.empty()) {
      out_ << text;
      artifact_printed = true;
      return;
    }
    write_file(o_.output, text);
    report.results["output"] = {{"path", o_.output}, {"sha256", sha256_hex(text)}};
    report.text.push_back("wrote " + o_.output);
  }

  void emit_dot(const Graph& g) {
    if (o_.dot.empty()) return;
    write_file(o_.dot, to_dot(g));
    report.results["dot"] = o_.dot;
  }

  void violations(const ValidationReport& r, const std::string& prefix = "") {
    for (const auto& v : r.violations) {
      report.counterexamples.push_back({{"kind", v.kind}, {"subject", prefix + v.subject}, {"detail", v.detail}});
    }
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw UsageError(path + ": cannot write file");
  }

  static std::uint64_t parse_seed(const std::string& s) {
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(s, &used, 0);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("GWA_SEED: not an unsigned integer: '" + s + "'");
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::uint64_t seed_;
};

DirId direction_arg(const Signature& sig, const std::string& name, const std::string& flag) {
  if (auto d = sig.find_direction(name)) return *d;
  std::string all;
  for (std::size_t d = 0; d < sig.direction_count(); ++d) all += (d ? ", " : "") + sig.direction_name(DirId(d));
  throw UsageError(flag + ": unknown direction '" + name + "' (have " + all + ")");
}

Json configuration_json(const WalkingAutomaton& a, const Graph& g, Configuration c) {
  return {a.state_name(c.state), g.id(c.node)};
}

Json outcome_json(const WalkingAutomaton& a, const Graph& g, const Outcome& o) {
  Json j = {{"outcome", outcome_name(o)},
            {"steps", outcome_steps(o)},
            {"at", configuration_json(a, g, outcome_configuration(o))}};
  if (const auto* loop = std::get_if<Loop>(&o)) j["cycle_length"] = loop->cycle_length;
  return j;
}

std::string result_name(const Signature& source, const WalkingAutomaton& a, const PatternResult& r) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AcceptInside>) return "accept";
        else if constexpr (std::is_same_v<T, RejectInside>) return "reject";
        else if constexpr (std::is_same_v<T, LoopInside>) return "loop";
        else return "exit " + source.direction_name(x.dir) + " in " + a.state_name(x.state);
      },
      r);
}

// ---- core / engine ------------------------------------------------------

std::string detect_kind(const Json& doc) {
  if (!doc.is_object()) return "";
  if (doc.contains("source_sig")) return "hom";
  if (doc.contains("delta")) return "tree-automaton";
  if (doc.contains("transitions")) return "automaton";
  if (doc.contains("nodes")) return "graph";
  if (doc.contains("directions")) return "signature";
  return "";
}

void cmd_validate(Command& c, const Options& o) {
  Json doc = c.load(o.file);
  std::string kind = o.kind == "auto" ? detect_kind(doc) : o.kind;
  if (kind.empty()) throw UsageError(o.file + ": cannot tell what kind of document this is; pass --kind");
  c.report.parameters["kind"] = kind;
  if (kind == "signature") {
    SignaturePtr sig = signature_from_json(doc, o.file);
    c.violations(validate_signature(*sig));
    c.report.results = {{"directions", sig->direction_count()}, {"labels", sig->label_count()}};
  } else if (kind == "graph") {
    Graph g = graph_from_json(doc, c.supplied_signature(), o.file);
    c.violations(validate_signature(g.signature()), "signature: ");
    if (c.report.counterexamples.empty()) c.violations(validate_graph(g));
    c.report.results = {{"nodes", g.node_count()}};
  } else if (kind == "automaton") {
    WalkingAutomaton a = automaton_from_json(doc, c.supplied_signature(), o.file);
    c.violations(validate_automaton(a));
    c.report.results = {{"states", a.state_count()}};
  } else if (kind == "hom") {
    Homomorphism h = homomorphism_from_json(doc, o.file);
    c.violations(validate_signature(h.source()), "source_sig: ");
    c.violations(validate_signature(h.target()), "target_sig: ");
    if (c.report.counterexamples.empty()) c.violations(validate_homomorphism(h));
    c.report.results = {{"labels", h.source().label_count()}};
  } else if (kind == "tree-automaton") {
    SignaturePtr sig = c.supplied_signature();
    if (!sig) sig = embedded_signature(doc, o.file);
    if (sig) c.violations(validate_tree_signature(*sig), "signature: ");
    if (c.report.counterexamples.empty()) {
      TreeAutomaton a = tree_automaton_from_json(doc, sig, o.file);
      c.violations(validate_tree_automaton(a));
      c.report.results = {{"states", a.state_count()}};
    }
  } else {
    throw UsageError("--kind: unknown document kind '" + kind + "'");
  }
  c.report.results["valid"] = c.report.counterexamples.empty();
  c.report.text.push_back(kind + ": " + (c.report.counterexamples.empty() ? "valid" : "INVALID"));
}

struct Loaded {
  WalkingAutomaton automaton;
  Graph graph;
};

Loaded load_run_inputs(Command& c, const Options& o) {
  WalkingAutomaton a = automaton_from_json(c.load(o.automaton), c.supplied_signature(), o.automaton);
  Graph g = graph_from_json(c.load(o.graph), a.signature_ptr(), o.graph);
  c.violations(validate_automaton(a), "automaton: ");
  c.violations(validate_graph(g), "graph: ");
  return {std::move(a), std::move(g)};
}

void cmd_run(Command& c, const Options& o) {
  Loaded in = load_run_inputs(c, o);
  if (!c.report.ok()) return;
  Outcome out = run(in.automaton, in.graph);
  c.report.results = outcome_json(in.automaton, in.graph, out);
  c.report.text.push_back(std::string(outcome_name(out)) + " after " + std::to_string(outcome_steps(out)) + " steps");
}

void cmd_trace(Command& c, const Options& o) {
  Loaded in = load_run_inputs(c, o);
  if (!c.report.ok()) return;
  c.report.parameters["max_len"] = o.max_len;
  std::vector<Configuration> t = trace(in.automaton, in.graph, o.max_len);
  Outcome out = run(in.automaton, in.graph);
  Json confs = Json::array();
  for (const auto& conf : t) confs.push_back(configuration_json(in.automaton, in.graph, conf));
  const bool truncated = outcome_steps(out) + 1 > t.size();
  c.report.results = outcome_json(in.automaton, in.graph, out);
  c.report.results["trace"] = confs;
  c.report.results["truncated"] = truncated;
  for (std::size_t s = 0; s < t.size(); ++s) {
    c.report.text.push_back(std::to_string(s) + ": " + in.automaton.state_name(t[s].state) + " @ " + in.graph.id(t[s].node));
  }
  if (truncated) c.report.text.push_back("... (truncated)");
  c.report.text.push_back(outcome_name(out));
}

std::vector<Graph> graph_suite(Command& c, const Options& o, const SignaturePtr& sig) {
  std::vector<Graph> suite;
  for (const auto& path : o.graphs) suite.push_back(graph_from_json(c.load(path), sig, path));
  if (o.enumerate > 0) {
    c.report.parameters["enumerate"] = o.enumerate;
    for (auto& g : enumerate_graphs(sig, o.enumerate)) suite.push_back(std::move(g));
  }
  if (o.random > 0) {
    c.report.parameters["random"] = o.random;
    c.report.parameters["max_nodes"] = o.max_nodes;
    Rng rng(c.seed());
    for (std::size_t r = 0; r < o.random; ++r) suite.push_back(random_graph(sig, rng, 1, o.max_nodes));
  }
  if (suite.empty()) throw UsageError("no graphs: give --graph, --enumerate or --random");
  return suite;
}

void cmd_agree(Command& c, const Options& o) {
  SignaturePtr sig = c.supplied_signature();
  WalkingAutomaton a1 = automaton_from_json(c.load(o.file), sig, o.file);
  WalkingAutomaton a2 = automaton_from_json(c.load(o.second), a1.signature_ptr(), o.second);
  c.violations(validate_automaton(a1), "first: ");
  c.violations(validate_automaton(a2), "second: ");
  if (!c.report.ok()) return;
  std::vector<Graph> suite = graph_suite(c, o, a1.signature_ptr());
  AgreementReport r = agree_on(a1, a2, suite);
  for (const auto& e : r.entries) {
    if (e.acceptance_agrees) continue;
    c.report.counterexamples.push_back({{"graph", e.graph},
                                        {"first", outcome_json(a1, suite[e.graph], e.first)},
                                        {"second", outcome_json(a2, suite[e.graph], e.second)}});
  }
  c.report.results = {{"graphs", suite.size()},
                      {"acceptance_disagreements", r.acceptance_disagreements},
                      {"variant_disagreements", r.variant_disagreements}};
  c.report.text.push_back(std::to_string(suite.size()) + " graphs, " + std::to_string(r.acceptance_disagreements) +
                          " acceptance disagreements, " + std::to_string(r.variant_disagreements) +
                          " outcome-variant disagreements");
}

// ---- hom ----------------------------------------------------------------

Homomorphism load_hom(Command& c, const Options& o) { return homomorphism_from_json(c.load(o.file), o.file); }

bool hom_ok(Command& c, const Homomorphism& h) {
  c.violations(validate_homomorphism(h), "hom: ");
  return c.report.ok();
}

void cmd_hom_validate(Command& c, const Options& o) {
  Homomorphism h = load_hom(c, o);
  c.violations(validate_signature(h.source()), "source_sig: ");
  c.violations(validate_signature(h.target()), "target_sig: ");
  if (c.report.ok()) hom_ok(c, h);
  c.report.results = {{"valid", c.report.ok()}};
  c.report.text.push_back(std::string("homomorphism: ") + (c.report.ok() ? "valid" : "INVALID"));
}

void cmd_hom_apply(Command& c, const Options& o) {
  Homomorphism h = load_hom(c, o);
  Graph g = graph_from_json(c.load(o.graph), h.source_ptr(), o.graph);
  if (!hom_ok(c, h)) return;
  c.violations(validate_graph(g), "graph: ");
  if (!c.report.ok()) return;
  Graph image = apply(h, g);
  c.report.results = {{"nodes", image.node_count()}};
  c.report.text.push_back("h(G) has " + std::to_string(image.node_count()) + " nodes");
  c.emit_dot(image);
  c.emit(graph_to_json(image, true));
}

void cmd_hom_invert(Command& c, const Options& o) {
  Homomorphism h = load_hom(c, o);
  WalkingAutomaton a = automaton_from_json(c.load(o.automaton), h.target_ptr(), o.automaton);
  if (!hom_ok(c, h)) return;
  c.violations(validate_automaton(a), "automaton: ");
  if (!c.report.ok()) return;
  Inversion b = invert_with_layout(a, h);
  c.report.results = {{"states", b.automaton.state_count()},
                      {"predicted", predicted_inverse_states(a, h)},
                      {"degenerate", b.layout.degenerate},
                      {"p0", b.layout.has_p0}};
  c.report.text.push_back("B has " + std::to_string(b.automaton.state_count()) + " states (n=" +
                          std::to_string(a.state_count()) + ", k=" + std::to_string(h.source().direction_count()) + ")");
  c.emit(automaton_to_json(b.automaton, true));
}

void cmd_hom_verify(Command& c, const Options& o) {
  Homomorphism h = load_hom(c, o);
  WalkingAutomaton a = automaton_from_json(c.load(o.automaton), h.target_ptr(), o.automaton);
  if (!hom_ok(c, h)) return;
  c.violations(validate_automaton(a), "automaton: ");
  if (!c.report.ok()) return;
  c.report.parameters["suite"] = o.suite;
  std::vector<Graph> suite;
  if (o.suite == "enumerate") {
    c.report.parameters["max_nodes"] = o.max_nodes;
    suite = enumerate_graphs(h.source_ptr(), o.max_nodes);
  } else if (o.suite == "random") {
    c.report.parameters["count"] = o.count;
    c.report.parameters["max_nodes"] = o.max_nodes;
    Rng rng(c.seed());
    for (std::size_t r = 0; r < o.count; ++r) suite.push_back(random_graph(h.source_ptr(), rng, 1, o.max_nodes));
  } else {
    throw UsageError("--suite: expected enumerate or random, got '" + o.suite + "'");
  }
  InverseReport r = verify_inverse(a, h, suite);
  for (const InverseCase* f : r.failures()) c.report.counterexamples.push_back({{"graph", f->graph}, {"detail", f->detail}});
  c.report.results = {{"graphs", suite.size()},
                      {"b_states", r.b_states},
                      {"acceptance_disagreements", r.acceptance_disagreements},
                      {"alignment_failures", r.alignment_failures},
                      {"refinement_failures", r.refinement_failures},
                      {"bound_failures", r.bound_failures}};
  c.report.text.push_back(std::to_string(suite.size()) + " graphs, |B| = " + std::to_string(r.b_states) + ", " +
                          std::to_string(r.acceptance_disagreements) + " acceptance disagreements, " +
                          std::to_string(r.alignment_failures) + " alignment failures");
}

// ---- witnesses ----------------------------------------------------------

Json pluggable_json(const Pluggable& p) {
  Json j = graph_to_json(p.body, true);
  j["port"] = {{"node", p.body.id(p.port)}, {"dir", p.body.signature().direction_name(p.dir)}};
  return j;
}

void witness_parameters(Command& c, const Options& o, bool with_n = true) {
  if (with_n) c.report.parameters["n"] = o.n;
  c.report.parameters["k"] = o.k;
}

void cmd_witness_H(Command& c, const Options& o) {
  witness_parameters(c, o);
  c.report.parameters["variant"] = o.variant;
  if (o.variant != "start" && o.variant != "fake") throw UsageError("--variant: expected start or fake");
  Pluggable h = build_H(start_signature(o.k), o.n, o.variant == "start" ? HVariant::kStart : HVariant::kFake);
  c.violations(validate_pluggable(h));
  c.emit_dot(h.body);
  c.emit(pluggable_json(h));
}

void cmd_witness_F(Command& c, const Options& o) {
  witness_parameters(c, o);
  SignaturePtr sig = f_signature(o.k);
  c.report.parameters["d"] = o.d;
  if (o.i_opt) c.report.parameters["i"] = *o.i_opt;
  Pluggable f = build_F(sig, o.n, direction_arg(*sig, o.d, "--d"), o.i_opt);
  c.violations(validate_pluggable(f));
  c.emit_dot(f.body);
  c.emit(pluggable_json(f));
}

void emit_theorem2_graph(Command& c, const Options& o, const SignaturePtr& sig, Graph g) {
  c.violations(validate_graph(g));
  if (o.image) {
    c.report.parameters["image"] = true;
    g = apply(theorem2_homomorphism(sig), g);
  }
  c.emit_dot(g);
  c.emit(graph_to_json(g, true));
}

void cmd_witness_G_counter(Command& c, const Options& o) {
  witness_parameters(c, o);
  SignaturePtr sig = theorem2_signature(o.k);
  c.report.parameters.update({{"i", o.i}, {"j", o.j}, {"d", o.d}});
  emit_theorem2_graph(c, o, sig, build_G_counter(sig, o.n, o.i, o.j, direction_arg(*sig, o.d, "--d")));
}

void cmd_witness_G_probe(Command& c, const Options& o) {
  witness_parameters(c, o);
  SignaturePtr sig = theorem2_signature(o.k);
  c.report.parameters.update({{"i", o.i}, {"d", o.d}, {"dprime", o.dprime}});
  emit_theorem2_graph(c, o, sig,
                      build_G_probe(sig, o.n, o.i, direction_arg(*sig, o.d, "--d"), direction_arg(*sig, o.dprime, "--dprime")));
}

void cmd_witness_sig(Command& c, const Options& o) {
  witness_parameters(c, o, false);
  c.report.parameters["family"] = o.family;
  SignaturePtr sig;
  if (o.family == "start") sig = start_signature(o.k);
  else if (o.family == "f") sig = f_signature(o.k);
  else if (o.family == "theorem2") sig = theorem2_signature(o.k);
  else if (o.family == "tree") sig = standard_tree_signature(o.k);
  else throw UsageError("--family: expected start, f, theorem2 or tree");
  c.violations(validate_signature(*sig));
  c.emit(signature_to_json(*sig));
}

void cmd_witness_hom(Command& c, const Options& o) {
  witness_parameters(c, o, false);
  Homomorphism h = theorem2_homomorphism(theorem2_signature(o.k));
  c.violations(validate_homomorphism(h));
  c.emit(homomorphism_to_json(h));
}

void cmd_witness_automaton(Command& c, const Options& o) {
  witness_parameters(c, o);
  const std::string kind = o.kind == "auto" ? "counter" : o.kind;
  c.report.parameters["kind"] = kind;
  WalkingAutomaton a = kind == "counter"  ? build_counter_automaton(theorem2_signature(o.k), o.n)
                       : kind == "escape" ? build_escape_automaton(f_signature(o.k), o.n)
                                          : throw UsageError("--kind: expected counter or escape");
  c.violations(validate_automaton(a));
  c.emit(automaton_to_json(a, true));
}

void cmd_witness_sweep(Command& c, const Options& o) {
  witness_parameters(c, o);
  Claim3Report r = claim3_sweep(o.n, o.k, o.jobs);
  SignaturePtr sig = theorem2_signature(o.k);
  Json counter = Json::array();
  for (const auto& row : r.counter) {
    Json j = {{"i", row.i}, {"j", row.j}, {"d", sig->direction_name(row.d)}, {"expected", row.expected},
              {"accepted", row.accepted}, {"outcome", row.outcome}};
    if (row.expected != row.accepted) {
      Json x = j;
      x["table"] = "G_counter";
      c.report.counterexamples.push_back(std::move(x));
    }
    counter.push_back(std::move(j));
  }
  Json probe = Json::array();
  for (const auto& row : r.probe) {
    Json j = {{"i", row.i}, {"d", sig->direction_name(row.d)}, {"dprime", sig->direction_name(row.dprime)},
              {"expected", row.expected}, {"accepted", row.accepted}, {"outcome", row.outcome}};
    if (row.expected != row.accepted) {
      Json x = j;
      x["table"] = "G_probe";
      c.report.counterexamples.push_back(std::move(x));
    }
    probe.push_back(std::move(j));
  }
  if (!r.bound_ok) c.report.counterexamples.push_back("a run exceeded |Q|.|V| + 1 steps");
  c.report.results = {{"counter", counter}, {"probe", probe}, {"mismatches", r.mismatches},
                      {"max_steps", r.max_steps}, {"bound_ok", r.bound_ok}};

  // Text: one i x j grid per d, one d x d' grid per i; A = accepted.
  auto& t = c.report.text;
  t.push_back("counter automaton on h(G_{i,j,d}) (rows i, columns j, A = accept):");
  for (std::size_t d = 0; d < sig->direction_count(); ++d) {
    t.push_back("  d=" + sig->direction_name(DirId(d)));
    for (std::size_t i = 0; i < o.n; ++i) {
      std::string line = "    ";
      for (const auto& row : r.counter) {
        if (row.d == DirId(d) && row.i == i) line += row.accepted ? "A" : ".";
      }
      t.push_back(line);
    }
  }
  t.push_back("counter automaton on h(G_{i,d,d'}) (rows d, columns d', A = accept):");
  for (std::size_t i = 0; i < o.n; ++i) {
    t.push_back("  i=" + std::to_string(i));
    for (std::size_t d = 0; d < sig->direction_count(); ++d) {
      std::string line = "    ";
      for (const auto& row : r.probe) {
        if (row.i == i && row.d == DirId(d)) line += row.accepted ? "A" : ".";
      }
      t.push_back(line + "  " + sig->direction_name(DirId(d)));
    }
  }
  t.push_back(std::to_string(r.counter.size() + r.probe.size()) + " runs, " + std::to_string(r.mismatches) +
              " mismatches, longest run " + std::to_string(r.max_steps) + " steps");
}

void cmd_witness_escape(Command& c, const Options& o) {
  std::vector<std::size_t> ns = o.ns.empty() ? std::vector<std::size_t>{o.n} : o.ns;
  c.report.parameters["n"] = ns;
  c.report.parameters["k"] = o.k;
  EscapeReport r = escape_sweep(ns, o.k);
  SignaturePtr sig = f_signature(o.k);
  WalkingAutomaton names = build_escape_automaton(sig, *std::max_element(ns.begin(), ns.end()));
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j = {{"n", row.n}, {"i", row.i}, {"d", sig->direction_name(row.d)}, {"ok", row.ok}};
    j["exit_state"] = row.exit_state ? Json(names.state_name(*row.exit_state)) : Json(nullptr);
    if (!row.ok) c.report.counterexamples.push_back(j);
    rows.push_back(std::move(j));
  }
  c.report.results = {{"rows", rows}, {"failures", r.failures}};
  c.report.text.push_back(std::to_string(r.rows.size()) + " (n, i, d) cases, " + std::to_string(r.failures) +
                          " not leaving F_{i,d} in q_i");
}

void cmd_witness_probe(Command& c, const Options& o) {
  witness_parameters(c, o);
  c.report.parameters["max_states"] = o.max_states;
  ProbeSuite s = probe_suite(o.n, o.k, o.max_states, o.jobs);
  Json rows = Json::array();
  for (std::size_t r = 0; r < s.reports.size(); ++r) {
    const ProbeReport& p = s.reports[r];
    Json examples = Json::array();
    for (const auto& ex : p.examples) {
      examples.push_back({{"entry", ex.automaton.state_name(ex.entry)},
                          {"first", result_name(ex.automaton.signature(), ex.automaton, ex.first)},
                          {"second", result_name(ex.automaton.signature(), ex.automaton, ex.second)},
                          {"automaton", automaton_to_json(ex.automaton)}});
    }
    rows.push_back({{"pair", p.name}, {"states", p.num_states}, {"labels", p.labels}, {"automata", p.automata},
                    {"expected", s.expected[r]}, {"distinguishing", p.distinguishing}, {"explored", p.explored},
                    {"examples", examples}});
    if (!p.complete(s.expected[r])) {
      c.report.counterexamples.push_back(p.name + ": covered " + std::to_string(p.automata) + " of " +
                                         std::to_string(s.expected[r]) + " automata");
    }
    c.report.text.push_back(p.name + " with " + std::to_string(p.num_states) + " state(s): " +
                            std::to_string(p.distinguishing) + " of " + std::to_string(p.automata) +
                            " automata distinguish");
  }
  c.report.results = {{"reports", rows}, {"complete", s.complete()}, {"distinguishing", s.distinguishing()}};
  c.report.text.push_back("distinguishers are observations: the diode-free subgraphs carry no indistinguishability "
                          "guarantee");
}

// ---- trees --------------------------------------------------------------

TreeAutomaton load_tree_automaton(Command& c, const Options& o) {
  if (!o.builtin.empty()) {
    c.report.parameters["builtin"] = o.builtin;
    c.report.parameters["k"] = o.k;
    SignaturePtr sig = standard_tree_signature(o.k);
    if (o.builtin == "parity") return parity_automaton(sig);
    if (o.builtin == "accept-all") return accept_all_automaton(sig);
    throw UsageError("--builtin: expected parity or accept-all");
  }
  if (o.automaton.empty()) throw UsageError("give --automaton FILE or --builtin NAME");
  Json doc = c.load(o.automaton);
  SignaturePtr sig = c.supplied_signature();
  if (!sig) sig = embedded_signature(doc, o.automaton);
  if (sig) {
    ValidationReport r = validate_tree_signature(*sig);
    if (!r.ok()) throw ParseError(o.automaton + ": not a tree signature: " + r.violations.front().kind);
  }
  return tree_automaton_from_json(doc, sig, o.automaton);
}

void cmd_tree_validate(Command& c, const Options& o) {
  Options copy = o;
  copy.kind = "tree-automaton";
  cmd_validate(c, copy);
}

void cmd_tree_eval(Command& c, const Options& o) {
  TreeAutomaton a = load_tree_automaton(c, o);
  c.violations(validate_tree_automaton(a), "automaton: ");
  Graph t = graph_from_json(c.load(o.tree), a.signature_ptr(), o.tree);
  c.violations(validate_graph(t), "tree: ");
  if (!c.report.ok()) return;
  TreeRun r = eval_dta(a, t);
  Json states = Json::object();
  for (std::size_t v = 0; v < t.node_count(); ++v) states[t.id(NodeId(v))] = a.state_name(r.states[v]);
  c.report.results = {{"accepted", r.accepted}, {"root_state", a.state_name(r.root)}, {"states", states}};
  c.report.text.push_back(tree_term(t) + " -> " + a.state_name(r.root) + (r.accepted ? " (accepted)" : " (rejected)"));
}

void cmd_tree_characterize(Command& c, const Options& o) {
  TreeAutomaton a = load_tree_automaton(c, o);
  c.violations(validate_tree_automaton(a));
  if (!c.report.ok()) return;
  Characterization ch = build_characterization(a);
  std::map<std::string, Json> parts{{"reg.json", signature_to_json(*ch.reg)},
                                    {"mid.json", signature_to_json(*ch.mid)},
                                    {"comp.json", signature_to_json(*ch.comp)},
                                    {"g.json", homomorphism_to_json(ch.g)},
                                    {"h.json", homomorphism_to_json(ch.h)},
                                    {"automaton.json", tree_automaton_to_json(a)}};
  c.report.results = {{"reg_labels", ch.reg->label_count()},
                      {"mid_labels", ch.mid->label_count()},
                      {"comp_labels", ch.comp->label_count()}};
  c.report.text.push_back("S_reg " + std::to_string(ch.reg->label_count()) + " labels, S_mid " +
                          std::to_string(ch.mid->label_count()) + ", S_comp " + std::to_string(ch.comp->label_count()));
  if (o.output.empty()) {
    Json bundle = Json::object();
    for (const auto& [name, doc] : parts) bundle[name.substr(0, name.size() - 5)] = doc;
    c.emit(bundle);
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(o.output, ec);
  if (ec) throw UsageError(o.output + ": cannot create directory: " + ec.message());
  Json files = Json::array();
  for (const auto& [name, doc] : parts) {
    const std::string path = (std::filesystem::path(o.output) / name).string();
    const std::string text = dump(doc);
    Command::write_file(path, text);
    files.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
  }
  c.report.results["files"] = files;
  c.report.text.push_back("wrote " + std::to_string(files.size()) + " files to " + o.output);
}

Json characterization_json(const CharacterizationReport& r, const FishboneCheck& f) {
  return {{"reg_trees", r.reg_trees},       {"accepted", r.accepted},       {"comp_trees", r.comp_trees},
          {"consistent", r.consistent},     {"h_roundtrips", r.h_roundtrips}, {"g_roundtrips", r.g_roundtrips},
          {"g_equals_h", r.g_equals_h},     {"fishbone_trees", f.trees},    {"fishbone_edges", f.edges},
          {"fishbone_mismatches", f.mismatches}};
}

void cmd_tree_verify(Command& c, const Options& o) {
  TreeAutomaton a = load_tree_automaton(c, o);
  c.violations(validate_tree_automaton(a));
  if (!c.report.ok()) return;
  c.report.parameters["max_nodes"] = o.max_nodes;
  Characterization ch = build_characterization(a);
  CharacterizationReport r = verify_characterization(ch, o.max_nodes, o.jobs);
  FishboneCheck f = measure_fishbones(ch, o.max_nodes, o.jobs);
  for (const auto& x : r.counterexamples) c.report.counterexamples.push_back(x);
  for (const auto& x : f.examples) c.report.counterexamples.push_back(x);
  c.report.results = characterization_json(r, f);
  c.report.text.push_back(std::to_string(r.reg_trees) + " reg trees (" + std::to_string(r.accepted) + " accepted), " +
                          std::to_string(r.comp_trees) + " comp trees (" + std::to_string(r.consistent) +
                          " consistent); round trips h " + std::to_string(r.h_roundtrips) + ", g " +
                          std::to_string(r.g_roundtrips) + "; fishbone edges " + std::to_string(f.edges) + ", " +
                          std::to_string(f.mismatches) + " mismatches");
}

// ---- repro --------------------------------------------------------------

void cmd_repro_thm1(Command& c, const Options& o) {
  c.report.parameters["suite"] = o.suite;
  Thm1Suites which = o.suite == "small"    ? Thm1Suites::kSmall
                     : o.suite == "random" ? Thm1Suites::kRandom
                     : o.suite == "all"    ? Thm1Suites::kAll
                                           : throw UsageError("--suite: expected small, random or all");
  Thm1Report r = thm1_report(which, which == Thm1Suites::kSmall ? kDefaultSeed : c.seed(), o.jobs);
  Json counts = Json::array();
  for (const auto& row : r.counts) {
    counts.push_back({{"n", row.n}, {"k", row.k}, {"unique_initial", row.unique_initial}, {"expected", row.expected},
                      {"states", row.actual}});
    c.report.text.push_back("n=" + std::to_string(row.n) + " k=" + std::to_string(row.k) +
                            (row.unique_initial ? " unique initial:  " : " several initial: ") +
                            std::to_string(row.actual) + " states (" +
                            (row.unique_initial ? "nk = " : "nk+1 = ") + std::to_string(row.expected) + ")");
    if (row.actual != row.expected) {
      c.report.counterexamples.push_back("state count n=" + std::to_string(row.n) + " k=" + std::to_string(row.k));
    }
  }
  Json suites = Json::array();
  for (const auto& s : r.suites) {
    suites.push_back({{"suite", s.suite},
                      {"graphs", s.graphs},
                      {"automata", s.automata},
                      {"cases", s.cases},
                      {"b_states", s.b_states},
                      {"acceptance_disagreements", s.acceptance_disagreements},
                      {"alignment_failures", s.alignment_failures},
                      {"refinement_failures", s.refinement_failures},
                      {"bound_failures", s.bound_failures},
                      {"state_count_failures", s.state_count_failures}});
    for (const auto& x : s.counterexamples) c.report.counterexamples.push_back(s.suite + ": " + x);
    c.report.text.push_back("suite " + s.suite + ": " + std::to_string(s.graphs) + " graphs x " +
                            std::to_string(s.automata) + " automata, " + std::to_string(s.acceptance_disagreements) +
                            " disagreements, " + std::to_string(s.alignment_failures) + " alignment failures, " +
                            std::to_string(s.bound_failures) + " step-bound failures");
  }
  c.report.results = {{"state_counts", counts}, {"suites", suites}};
}

void cmd_repro_claim3(Command& c, const Options& o) { cmd_witness_sweep(c, o); }

void cmd_repro_thm4(Command& c, const Options& o) {
  c.report.parameters["max_nodes"] = o.max_nodes;
  c.report.parameters["k"] = o.k;
  Json rows = Json::array();
  for (const auto& row : thm4_report(o.max_nodes, o.k, o.jobs)) {
    Json j = characterization_json(row.report, row.fishbones);
    j["automaton"] = row.automaton;
    j["states"] = row.states;
    rows.push_back(j);
    for (const auto& x : row.report.counterexamples) c.report.counterexamples.push_back(row.automaton + ": " + x);
    for (const auto& x : row.fishbones.examples) c.report.counterexamples.push_back(row.automaton + ": " + x);
    c.report.text.push_back(row.automaton + ": " + std::to_string(row.report.reg_trees) + " reg trees, " +
                            std::to_string(row.report.comp_trees) + " comp trees, " +
                            std::to_string(row.report.counterexamples.size()) + " counterexamples, " +
                            std::to_string(row.fishbones.mismatches) + " fishbone mismatches");
  }
  c.report.results = {{"automata", rows}};
}

// ---- wiring -------------------------------------------------------------

using Handler = std::function<void(Command&, const Options&)>;

struct Registry {
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  CLI::App* add(CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = parent->add_subcommand(name, help);
    handlers.emplace_back(sub, std::move(h));
    return sub;
  }
};

std::string command_name(const CLI::App* app) {
  std::string out;
  for (const CLI::App* a = app; a && a->get_parent(); a = a->get_parent()) out = a->get_name() + (out.empty() ? "" : " " + out);
  return out;
}

void add_witness_size(CLI::App* s, Options& o, bool n = true) {
  if (n) s->add_option("--n", o.n, "Number of states / counter size")->capture_default_str();
  s->add_option("--k", o.k, "Number of directions")->capture_default_str();
}

void add_output(CLI::App* s, Options& o) { s->add_option("-o,--output", o.output, "Write the document here instead of stdout"); }

// The subcommand words of a command line, skipping the global options (and
// their values) that may precede them.
std::vector<std::string> command_path(const std::vector<std::string>& args) {
  static const std::set<std::string> with_value{"--format", "--seed", "--jobs", "--dot"};
  std::vector<std::string> path;
  for (std::size_t i = 0; i < args.size() && path.size() < 2; ++i) {
    if (with_value.count(args[i])) {
      ++i;
    } else if (!args[i].empty() && args[i][0] == '-') {
      if (!path.empty()) break;
    } else {
      path.push_back(args[i]);
    }
  }
  return path;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Graph-walking automata, homomorphisms, witness families and tree characterizations", "gwa"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for random suites (default: $GWA_SEED, else a fixed seed)");
  app.add_option("--jobs", o.jobs, "Worker threads for sweeps (0: one per hardware thread)")->capture_default_str();
  app.add_flag("--timing", o.timing, "Record wall time in the report");
  app.add_option("--dot", o.dot, "Also write produced graphs as Graphviz");

  Registry reg;
  auto* validate = reg.add(&app, "validate", "Validate a signature, graph, automaton, homomorphism or tree automaton", cmd_validate);
  validate->add_option("file", o.file, "Document")->required();
  validate->add_option("--sig", o.sig, "Signature file, when the document has none inline");
  validate->add_option("--kind", o.kind, "Document kind")
      ->check(CLI::IsMember({"auto", "signature", "graph", "automaton", "hom", "tree-automaton"}));

  for (auto [name, help, handler] : {std::tuple{"run", "Run an automaton on a graph", Handler(cmd_run)},
                                     std::tuple{"trace", "Print the computation of an automaton on a graph", Handler(cmd_trace)}}) {
    auto* s = reg.add(&app, name, help, handler);
    s->add_option("--automaton,-a", o.automaton, "Automaton file")->required();
    s->add_option("--graph,-g", o.graph, "Graph file")->required();
    s->add_option("--sig", o.sig, "Signature file, when the automaton has none inline");
    if (std::string(name) == "trace") s->add_option("--max-len", o.max_len, "Longest trace printed")->capture_default_str();
  }

  auto* agree = reg.add(&app, "agree", "Compare two automata on a suite of graphs", cmd_agree);
  agree->add_option("first", o.file, "Automaton file")->required();
  agree->add_option("second", o.second, "Automaton file")->required();
  agree->add_option("--sig", o.sig, "Signature file, when the automata have none inline");
  agree->add_option("--graph,-g", o.graphs, "Graph file (repeatable)");
  agree->add_option("--enumerate", o.enumerate, "All graphs up to this many nodes");
  agree->add_option("--random", o.random, "This many seeded random graphs");
  agree->add_option("--max-nodes", o.max_nodes, "Size bound for random graphs")->capture_default_str();

  auto* hom = app.add_subcommand("hom", "Homomorphisms");
  hom->require_subcommand(1);
  auto* hv = reg.add(hom, "validate", "Validate a homomorphism", cmd_hom_validate);
  hv->add_option("file", o.file, "Homomorphism file")->required();
  auto* ha = reg.add(hom, "apply", "Compute h(G)", cmd_hom_apply);
  ha->add_option("file", o.file, "Homomorphism file")->required();
  ha->add_option("--graph,-g", o.graph, "Graph over the source signature")->required();
  add_output(ha, o);
  auto* hi = reg.add(hom, "invert", "Build the automaton for the inverse image", cmd_hom_invert);
  hi->add_option("file", o.file, "Homomorphism file")->required();
  hi->add_option("--automaton,-a", o.automaton, "Automaton over the target signature")->required();
  add_output(hi, o);
  auto* hver = reg.add(hom, "verify", "Check invert(A, h) against A on h(G) over a graph suite", cmd_hom_verify);
  hver->add_option("file", o.file, "Homomorphism file")->required();
  hver->add_option("--automaton,-a", o.automaton, "Automaton over the target signature")->required();
  hver->add_option("--suite", o.suite, "enumerate or random")->capture_default_str();
  hver->add_option("--max-nodes", o.max_nodes, "Largest graph")->capture_default_str();
  hver->add_option("--count", o.count, "Random graphs")->capture_default_str();

  auto* witness = app.add_subcommand("witness", "Lower-bound witness families");
  witness->require_subcommand(1);
  auto* wh = reg.add(witness, "H", "H_start or H_fake", cmd_witness_H);
  add_witness_size(wh, o);
  wh->add_option("--variant", o.variant, "start or fake")->capture_default_str();
  add_output(wh, o);
  auto* wf = reg.add(witness, "F", "F_{i,d}, or F_d without --i", cmd_witness_F);
  add_witness_size(wf, o);
  wf->add_option("--i", o.i_opt, "Spine position of H_start");
  wf->add_option("--d", o.d, "Exit direction (write --d=-a for negative directions)")->capture_default_str();
  add_output(wf, o);
  auto* wgc = reg.add(witness, "G-counter", "G_{i,j,d}", cmd_witness_G_counter);
  add_witness_size(wgc, o);
  wgc->add_option("--i", o.i)->capture_default_str();
  wgc->add_option("--j", o.j)->capture_default_str();
  wgc->add_option("--d", o.d)->capture_default_str();
  wgc->add_flag("--image", o.image, "Emit h(G) instead of G");
  add_output(wgc, o);
  auto* wgp = reg.add(witness, "G-probe", "G_{i,d,d'}", cmd_witness_G_probe);
  add_witness_size(wgp, o);
  wgp->add_option("--i", o.i)->capture_default_str();
  wgp->add_option("--d", o.d)->capture_default_str();
  wgp->add_option("--dprime", o.dprime)->capture_default_str();
  wgp->add_flag("--image", o.image, "Emit h(G) instead of G");
  add_output(wgp, o);
  auto* ws = reg.add(witness, "sig", "A witness signature", cmd_witness_sig);
  add_witness_size(ws, o, false);
  ws->add_option("--family", o.family, "start, f, theorem2 or tree")->capture_default_str();
  add_output(ws, o);
  auto* whom = reg.add(witness, "hom", "The ring homomorphism", cmd_witness_hom);
  add_witness_size(whom, o, false);
  add_output(whom, o);
  auto* wa = reg.add(witness, "automaton", "Counter or escape automaton", cmd_witness_automaton);
  add_witness_size(wa, o);
  wa->add_option("--kind", o.kind, "counter or escape");
  add_output(wa, o);
  auto* wsw = reg.add(witness, "sweep", "Acceptance tables of the counter automaton", cmd_witness_sweep);
  add_witness_size(wsw, o);
  auto* we = reg.add(witness, "escape", "Exit states of the escape automaton on every F_{i,d}", cmd_witness_escape);
  we->add_option("--n", o.ns, "Sizes (repeatable)");
  we->add_option("--k", o.k)->capture_default_str();
  auto* wp = reg.add(witness, "probe", "Exhaustive distinguishability probe on the H and F pairs", cmd_witness_probe);
  wp->add_option("--n", o.n, "Counter size of the H and F pairs (default 2)");
  wp->add_option("--k", o.k, "Number of directions (default 4)");
  wp->add_option("--max-states", o.max_states, "Largest automata")->capture_default_str();

  auto* tree = app.add_subcommand("tree", "Tree automata and the homomorphic characterization");
  tree->require_subcommand(1);
  auto add_tree_automaton = [&](CLI::App* s) {
    s->add_option("--automaton,-a", o.automaton, "Tree automaton file");
    s->add_option("--builtin", o.builtin, "parity or accept-all over the standard tree signature");
    s->add_option("--k", o.k, "Rank bound for --builtin");
    s->add_option("--sig", o.sig, "Tree signature file, when the automaton has none inline");
  };
  auto* tv = reg.add(tree, "validate", "Validate a tree automaton", cmd_tree_validate);
  tv->add_option("file", o.file, "Tree automaton file")->required();
  tv->add_option("--sig", o.sig, "Tree signature file");
  auto* te = reg.add(tree, "eval", "Evaluate a tree automaton on a tree", cmd_tree_eval);
  add_tree_automaton(te);
  te->add_option("--tree,-t", o.tree, "Tree file")->required();
  auto* tc = reg.add(tree, "characterize", "Emit S_reg, S_mid, S_comp, g and h", cmd_tree_characterize);
  add_tree_automaton(tc);
  tc->add_option("-o,--output", o.output, "Bundle directory");
  auto* tver = reg.add(tree, "verify", "Check the characterization on every small tree", cmd_tree_verify);
  add_tree_automaton(tver);
  tver->add_option("--max-nodes", o.max_nodes, "Largest tree (default 5)");

  auto* repro = app.add_subcommand("repro", "Reproduce the stated results");
  repro->require_subcommand(1);
  auto* r1 = reg.add(repro, "thm1", "State counts and correctness of the inverse construction", cmd_repro_thm1);
  r1->add_option("--suite", o.suite, "small, random or all");
  auto* r3 = reg.add(repro, "claim3", "Counter automaton acceptance tables", cmd_repro_claim3);
  add_witness_size(r3, o);
  auto* r4 = reg.add(repro, "thm4", "Characterization of regular tree languages", cmd_repro_thm4);
  r4->add_option("--max-nodes", o.max_nodes, "Largest tree (default 7)");
  r4->add_option("--k", o.k, "Rank bound (default 2)");

  // Defaults that differ per command.
  std::vector<std::string> argv(args.rbegin(), args.rend());
  const std::vector<std::string> path = command_path(args);
  const auto at = [&](std::size_t i) { return i < path.size() ? path[i] : std::string(); };
  const bool is_repro_thm1 = at(0) == "repro" && at(1) == "thm1";
  const bool is_thm4 = at(0) == "repro" && at(1) == "thm4";
  const bool is_tree = at(0) == "tree";
  const bool is_probe = at(0) == "witness" && at(1) == "probe";
  if (is_repro_thm1) o.suite = "all";
  if (is_thm4) o.max_nodes = 7;
  if (is_thm4 || is_tree) o.k = 2;
  if (is_tree) o.max_nodes = 5;
  if (is_probe) o.n = 2, o.k = 4;

  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  for (const auto& [sub, handler] : reg.handlers) {
    if (!sub->parsed()) continue;
    try {
      Command c(o, out, command_name(sub));
      auto start = std::chrono::steady_clock::now();
      handler(c, o);
      if (o.timing) c.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!c.artifact_printed) out << (o.format == "machine" ? dump(c.report.to_json()) : c.report.to_text());
      else if (!c.report.ok()) err << c.report.to_text();
      return c.report.ok() ? kOk : kFailed;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  err << app.help();
  return kUsage;
}

}  // namespace gwa::cli
