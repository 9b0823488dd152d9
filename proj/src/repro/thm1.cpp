#include "gwa/repro/thm1.hpp"

#include "gwa/core/generate.hpp"
#include "gwa/util/parallel.hpp"

namespace gwa {

SignaturePtr pair_signature() {
  return Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {"a", "-a"}}, {"x", false, {"a", "-a"}}});
}

SignaturePtr self_opposite_pair_signature() {
  return Signature::make({{"s", "s"}, {"t", "t"}}, {{"r", true, {"s"}}, {"x", false, {"s", "t"}}});
}

SignaturePtr grid_signature() {
  return Signature::make({{"a", "-a"}, {"-a", "a"}, {"b", "-b"}, {"-b", "b"}},
                         {{"r1", true, {"a", "-a"}}, {"r2", true, {"b", "-b"}}, {"x", false, {"a", "-a", "b", "-b"}}});
}

Homomorphism expanding_homomorphism(const SignaturePtr& source) {
  std::vector<DirectionDecl> dirs = source->direction_decls();
  dirs.push_back({"u", "-u"});
  dirs.push_back({"-u", "u"});
  dirs.push_back({"w", "-w"});
  dirs.push_back({"-w", "w"});

  std::vector<LabelDecl> labels;
  std::vector<std::vector<std::string>> halves;  // per source label: first half, rest
  for (const auto& a : source->label_decls()) {
    const std::size_t half = (a.dirs.size() + 1) / 2;
    std::vector<std::string> first(a.dirs.begin(), a.dirs.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<std::string> rest(a.dirs.begin() + static_cast<std::ptrdiff_t>(half), a.dirs.end());
    halves.push_back(first);
    halves.push_back(rest);
    first.push_back("u");
    rest.insert(rest.end(), {"-u", "w", "-w"});
    labels.push_back({a.name + ".0", a.initial, first});
    labels.push_back({a.name + ".1", false, rest});
  }
  auto target = Signature::make(std::move(dirs), std::move(labels));

  std::vector<Pattern> patterns;
  for (std::size_t l = 0; l < source->label_count(); ++l) {
    const std::string& name = source->label_name(LabelId(l));
    GraphBuilder b(target);
    b.add_node("0", name + ".0");
    b.add_node("1", name + ".1");
    b.connect("0", "u", "1");
    b.connect("1", "w", "1");
    std::map<std::string, std::string> ports;
    for (const auto& d : halves[2 * l]) ports[d] = "0";
    for (const auto& d : halves[2 * l + 1]) ports[d] = "1";
    patterns.push_back(make_pattern(*source, *target, std::move(b).build(), ports));
  }
  return Homomorphism(source, target, std::move(patterns));
}

std::vector<GraphSuite> small_suites(std::size_t max_nodes) {
  std::vector<GraphSuite> out;
  for (const auto& [name, sig] : {std::pair{"pair", pair_signature()}, std::pair{"self-opposite", self_opposite_pair_signature()}}) {
    out.push_back({name, sig, enumerate_graphs(sig, max_nodes)});
  }
  return out;
}

GraphSuite random_suite(std::uint64_t seed, std::size_t count, std::size_t max_nodes) {
  GraphSuite s{"random", grid_signature(), {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) s.graphs.push_back(random_graph(s.sig, rng, 1, max_nodes));
  return s;
}

std::vector<WalkingAutomaton> thm1_automata(const Homomorphism& h, std::size_t count, std::uint64_t seed,
                                            std::size_t num_states) {
  Rng rng(seed);
  std::vector<WalkingAutomaton> out;
  const LabelId a0 = h.source().initial_labels().front();
  for (int attempt = 0; out.empty() && attempt < 10000; ++attempt) {
    WalkingAutomaton a = random_automaton(h.target_ptr(), num_states, rng, 50, 50);
    if (std::holds_alternative<Exit>(simulate_in_pattern(a, h, a0, StartEntry{}))) out.push_back(std::move(a));
  }
  while (out.size() < count) out.push_back(random_automaton(h.target_ptr(), num_states, rng, 100, 100));
  return out;
}

std::vector<StateCountRow> state_count_table(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& ks) {
  std::vector<StateCountRow> rows;
  for (std::size_t k : ks) {
    auto dirs = standard_directions(k);
    std::vector<std::string> all;
    for (const auto& d : dirs) all.push_back(d.name);
    for (bool unique : {false, true}) {
      std::vector<LabelDecl> labels;
      if (unique) {
        labels.push_back({"r", true, all});
      } else {
        labels.push_back({"r1", true, all});
        labels.push_back({"r2", true, all});
      }
      labels.push_back({"x", false, all});
      auto sig = Signature::make(dirs, labels);
      Homomorphism h = identity_homomorphism(sig);
      for (std::size_t n : ns) {
        // Moves along the first direction from every initial label in q0.
        WalkingAutomaton a(sig, [n] {
          std::vector<std::string> names;
          for (std::size_t q = 0; q < n; ++q) names.push_back("q" + std::to_string(q));
          return names;
        }());
        for (LabelId r : sig->initial_labels()) a.set_move(a.initial(), r, StateId(n - 1), DirId(std::size_t{0}));
        a.set_accept(StateId(n - 1), sig->label("x"));
        StateCountRow row{n, k, unique, unique ? n * k : n * k + 1, invert(a, h).state_count()};
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace gwa

namespace gwa {
namespace {

constexpr std::size_t kAutomataPerSize = 6;
constexpr std::size_t kMaxCounterexamples = 10;

Thm1SuiteRun run_suite(const GraphSuite& suite, const std::vector<std::size_t>& sizes, std::uint64_t seed,
                       std::size_t jobs) {
  const Homomorphism h = expanding_homomorphism(suite.sig);
  std::vector<WalkingAutomaton> automata;
  for (std::size_t n : sizes) {
    for (auto& a : thm1_automata(h, kAutomataPerSize, seed + n, n)) automata.push_back(std::move(a));
  }
  auto reports = parallel_map(automata.size(), jobs, [&](std::size_t i) {
    return verify_inverse(automata[i], h, suite.graphs);
  });

  Thm1SuiteRun out;
  out.suite = suite.name;
  out.graphs = suite.graphs.size();
  out.automata = automata.size();
  for (std::size_t i = 0; i < automata.size(); ++i) {
    const InverseReport& r = reports[i];
    out.cases += r.cases.size();
    out.b_states.push_back(r.b_states);
    out.acceptance_disagreements += r.acceptance_disagreements;
    out.alignment_failures += r.alignment_failures;
    out.refinement_failures += r.refinement_failures;
    out.bound_failures += r.bound_failures;
    const std::size_t predicted = predicted_inverse_states(automata[i], h);
    if (r.b_states != predicted) {
      ++out.state_count_failures;
      if (out.counterexamples.size() < kMaxCounterexamples) {
        out.counterexamples.push_back("automaton " + std::to_string(i) + ": " + std::to_string(r.b_states) +
                                      " states, predicted " + std::to_string(predicted));
      }
    }
    for (const InverseCase* c : r.failures()) {
      if (out.counterexamples.size() >= kMaxCounterexamples) break;
      out.counterexamples.push_back("automaton " + std::to_string(i) + ", graph " + std::to_string(c->graph) + ": " +
                                    c->detail);
    }
  }
  return out;
}

}  // namespace

std::size_t predicted_inverse_states(const WalkingAutomaton& a, const Homomorphism& h) {
  const auto initials = h.source().initial_labels();
  const std::size_t nk = a.state_count() * h.source().direction_count();
  if (initials.size() > 1) return nk + 1;
  const bool leaves = std::holds_alternative<Exit>(simulate_in_pattern(a, h, initials.front(), StartEntry{}));
  return leaves ? nk : 1;
}

bool Thm1Report::ok() const {
  for (const auto& row : counts) {
    if (row.actual != row.expected) return false;
  }
  for (const auto& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

Thm1Report thm1_report(Thm1Suites which, std::uint64_t seed, std::size_t jobs) {
  Thm1Report report;
  report.counts = state_count_table({2, 3, 4}, {4, 9});
  if (which != Thm1Suites::kRandom) {
    for (const auto& suite : small_suites(6)) report.suites.push_back(run_suite(suite, {1, 2, 3}, seed, jobs));
  }
  if (which != Thm1Suites::kSmall) {
    report.suites.push_back(run_suite(random_suite(seed, 200, 10), {2, 3}, seed, jobs));
  }
  return report;
}

}  // namespace gwa
