#include <gtest/gtest.h>

#include "gwa/engine/run.hpp"
#include "gwa/hom/invert.hpp"
#include "gwa/repro/thm1.hpp"
#include "support/fixtures.hpp"

namespace gwa {
namespace {

TEST(Homomorphism, IdentityIsValid) {
  for (const auto& sig : {pair_signature(), grid_signature(), self_opposite_pair_signature()}) {
    EXPECT_TRUE(validate_homomorphism(identity_homomorphism(sig)).ok());
  }
}

TEST(Homomorphism, ExpandingIsValid) {
  for (const auto& sig : {pair_signature(), grid_signature(), self_opposite_pair_signature()}) {
    auto report = validate_homomorphism(expanding_homomorphism(sig));
    EXPECT_TRUE(report.ok()) << report;
  }
}

TEST(Homomorphism, InitialLabelWithoutInitialNode) {
  auto sig = pair_signature();
  auto target = Signature::make(sig->direction_decls(), {{"r", true, {"a", "-a"}}, {"x", false, {"a", "-a"}}});
  std::vector<Pattern> patterns;
  for (const char* label : {"x", "x"}) {
    GraphBuilder b(target);
    b.add_node("n", label);
    patterns.push_back(make_pattern(*sig, *target, std::move(b).build(), {{"a", "n"}, {"-a", "n"}}));
  }
  auto report = validate_homomorphism(Homomorphism(sig, target, std::move(patterns)));
  ASSERT_TRUE(report.has("initial node mismatch"));
  EXPECT_EQ(report.violations.front().subject, "r");
}

TEST(Homomorphism, PortProblems) {
  auto sig = pair_signature();
  std::vector<Pattern> patterns;
  {
    GraphBuilder b(sig);
    b.add_node("n", "r");
    patterns.push_back(make_pattern(*sig, *sig, std::move(b).build(), {{"a", "n"}}));
  }
  {
    GraphBuilder b(sig);
    NodeId n = b.add_node("n", "x");
    b.connect(n, sig->direction("a"), n);
    patterns.push_back(make_pattern(*sig, *sig, std::move(b).build(), {{"a", "n"}, {"-a", "n"}}));
  }
  auto report = validate_homomorphism(Homomorphism(sig, sig, std::move(patterns)));
  EXPECT_TRUE(report.has("missing port"));
  EXPECT_TRUE(report.has("open slot"));
  EXPECT_TRUE(report.has("port slot used"));
}

TEST(Apply, IdentityPreservesCode) {
  Rng rng(1);
  auto sig = grid_signature();
  auto h = identity_homomorphism(sig);
  for (int i = 0; i < 50; ++i) {
    Graph g = random_graph(sig, rng, 1, 10);
    EXPECT_EQ(canonical_encode(apply(h, g)), canonical_encode(g));
  }
}

// Validity, node count and the bijection between edges of G and external
// edges of h(G).
TEST(ApplyProperty, ValidImageAndEdgeBijection) {
  Rng rng(2);
  for (const auto& sig : {grid_signature(), self_opposite_pair_signature()}) {
    auto h = expanding_homomorphism(sig);
    for (int i = 0; i < 100; ++i) {
      Graph g = random_graph(sig, rng, 1, 10);
      Image img = apply_with_origin(h, g);
      auto report = validate_graph(img.graph);
      ASSERT_TRUE(report.ok()) << report;
      std::size_t expected_nodes = 0;
      for (std::size_t v = 0; v < g.node_count(); ++v) expected_nodes += h.pattern(g.label(NodeId(v))).body().node_count();
      EXPECT_EQ(img.graph.node_count(), expected_nodes);

      std::size_t g_slots = 0;
      for (std::size_t v = 0; v < g.node_count(); ++v) g_slots += sig->dirs(g.label(NodeId(v))).size();
      std::size_t external = 0;
      for (auto x : img.external) external += x;
      EXPECT_EQ(external, g_slots);
      EXPECT_EQ(img.graph.id(NodeId(std::size_t{0})), "(" + g.id(NodeId(std::size_t{0})) + ",0)");
    }
  }
}

TEST(Simulate, SingleNodePattern) {
  auto sig = pair_signature();
  auto h = identity_homomorphism(sig);
  WalkingAutomaton a(sig, {"q0", "q1"});
  a.set_accept(a.initial(), sig->label("r"));
  a.set_move(StateId(std::size_t{1}), sig->label("r"), a.initial(), sig->direction("-a"));
  EXPECT_TRUE(std::holds_alternative<AcceptInside>(simulate_in_pattern(a, h, sig->label("r"), StartEntry{})));
  auto r = simulate_in_pattern(a, h, sig->label("r"), EnterEntry{StateId(std::size_t{1}), sig->direction("a")});
  ASSERT_TRUE(std::holds_alternative<Exit>(r));
  EXPECT_EQ(std::get<Exit>(r).state, a.initial());
  EXPECT_EQ(std::get<Exit>(r).dir, sig->direction("-a"));
  EXPECT_TRUE(std::holds_alternative<RejectInside>(
      simulate_in_pattern(a, h, sig->label("x"), EnterEntry{a.initial(), sig->direction("a")})));
}

TEST(Simulate, EnterWithoutPortThrows) {
  auto sig = Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {"a"}}, {"x", false, {"-a"}}});
  auto h = identity_homomorphism(sig);
  WalkingAutomaton a(sig, {"q0"});
  EXPECT_THROW(simulate_in_pattern(a, h, sig->label("r"), EnterEntry{a.initial(), sig->direction("a")}),
               PreconditionError);
  EXPECT_NO_THROW(simulate_in_pattern(a, h, sig->label("r"), EnterEntry{a.initial(), sig->direction("-a")}));
  EXPECT_THROW(simulate_in_pattern(a, h, sig->label("x"), StartEntry{}), PreconditionError);
}

// Port convention, by embedding: the external edge u + d = v of G leads from
// copy(u) into copy(v) at the port node w_{-d}, and walking on from there
// inside h(G) reproduces simulate_in_pattern(Enter(q, d)).
TEST(SimulateProperty, MatchesEmbeddedRun) {
  Rng rng(9);
  for (const auto& sig : {grid_signature(), self_opposite_pair_signature()}) {
    auto h = expanding_homomorphism(sig);
    for (int i = 0; i < 30; ++i) {
      Graph g = random_graph(sig, rng, 2, 8);
      Image img = apply_with_origin(h, g);
      WalkingAutomaton a = random_automaton(h.target_ptr(), 3, rng);
      for (std::size_t x = 0; x < img.graph.node_count(); ++x) {
        for (std::size_t dd = 0; dd < h.target().direction_count(); ++dd) {
          const NodeId from(x);
          const DirId td(dd);
          if (!img.graph.has_edge(from, td) || !img.is_external(from, td)) continue;
          const NodeId y = img.graph.neighbor(from, td);
          const NodeId v = img.owner[y.index()];
          const DirId d = sig->direction(h.target().direction_name(td));
          const Pattern& p = h.pattern(g.label(v));
          ASSERT_EQ(img.pattern_node[y.index()], p.port_node(sig->opposite(d)));

          for (std::size_t q = 0; q < a.state_count(); ++q) {
            Walker w;
            PatternResult expected = simulate_in_pattern(a, p, *sig, EnterEntry{StateId(q), d}, w);
            // Reference: step through h(G) until the walk leaves copy(v).
            Configuration c{StateId(q), y};
            std::vector<Configuration> seen;
            std::string got;
            while (true) {
              if (std::find(seen.begin(), seen.end(), c) != seen.end()) {
                got = "loop";
                break;
              }
              seen.push_back(c);
              const Action& act = a.action(c.state, img.graph.label(c.node));
              if (act.kind == Action::Kind::kAccept) {
                got = "accept";
                break;
              }
              if (act.kind == Action::Kind::kUndefined) {
                got = "reject";
                break;
              }
              if (img.is_external(c.node, act.dir)) {
                got = "exit " + a.state_name(act.next) + " " + h.target().direction_name(act.dir);
                break;
              }
              c = {act.next, img.graph.neighbor(c.node, act.dir)};
            }
            std::string want = std::visit(
                [&](const auto& r) -> std::string {
                  using T = std::decay_t<decltype(r)>;
                  if constexpr (std::is_same_v<T, AcceptInside>) return "accept";
                  if constexpr (std::is_same_v<T, RejectInside>) return "reject";
                  if constexpr (std::is_same_v<T, LoopInside>) return "loop";
                  if constexpr (std::is_same_v<T, Exit>) return "exit " + a.state_name(r.state) + " " + sig->direction_name(r.dir);
                },
                expected);
            EXPECT_EQ(got, want);
          }
        }
      }
    }
  }
}

TEST(Invert, StateCounts) {
  for (const auto& row : state_count_table({2, 3, 4}, {4, 9})) {
    EXPECT_EQ(row.actual, row.expected) << "n=" << row.n << " k=" << row.k << " unique=" << row.unique_initial;
  }
  auto rows = state_count_table({3}, {4});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].actual, 13u);
  EXPECT_EQ(rows[1].actual, 12u);
}

TEST(Invert, DegenerateSingleState) {
  auto sig = pair_signature();
  auto h = identity_homomorphism(sig);
  WalkingAutomaton a(sig, {"q0", "q1", "q2"});
  a.set_accept(a.initial(), sig->label("r"));
  auto inv = invert_with_layout(a, h);
  EXPECT_TRUE(inv.layout.degenerate);
  ASSERT_EQ(inv.automaton.state_count(), 1u);
  EXPECT_TRUE(inv.automaton.accepts(inv.automaton.initial(), sig->label("r")));
  auto suite = enumerate_graphs(sig, 4);
  EXPECT_TRUE(verify_inverse(a, h, suite).ok());
}

TEST(Invert, UniqueInitialStartsInCompositeState) {
  auto sig = pair_signature();
  auto h = identity_homomorphism(sig);
  WalkingAutomaton a(sig, {"q0", "q1"});
  a.set_move(a.initial(), sig->label("r"), StateId(std::size_t{1}), sig->direction("a"));
  auto b = invert(a, h);
  EXPECT_EQ(b.state_count(), 4u);
  EXPECT_EQ(b.state_name(b.initial()), "(q0,-a)");
}

TEST(Invert, RejectsForeignAutomaton) {
  auto h = identity_homomorphism(pair_signature());
  WalkingAutomaton a(grid_signature(), {"q0"});
  EXPECT_THROW(invert(a, h), PreconditionError);
}

TEST(VerifyInverse, EmptySuite) {
  auto h = identity_homomorphism(pair_signature());
  WalkingAutomaton a(h.target_ptr(), {"q0"});
  auto report = verify_inverse(a, h, std::span<const Graph>());
  EXPECT_TRUE(report.cases.empty());
  EXPECT_TRUE(report.ok());
}

// Oracle: run(A, apply(h, G)).
TEST(VerifyInverse, IdentityOverRandomSuite) {
  auto suite = random_suite(77);
  auto h = identity_homomorphism(suite.sig);
  for (const auto& a : thm1_automata(h, 5, 13, 3)) {
    const WalkingAutomaton b = invert(a, h);
    EXPECT_EQ(b.state_count(), 3u * 4u + 1u);
    for (const auto& g : suite.graphs) EXPECT_EQ(accepted(run(b, g)), accepted(run(a, apply(h, g))));
  }
}

TEST(VerifyInverse, ExpandingOverSmallSuites) {
  std::size_t outcomes[3] = {0, 0, 0};
  for (const auto& suite : small_suites(6)) {
    auto h = expanding_homomorphism(suite.sig);
    for (std::size_t n : {1, 2, 3}) {
      for (const auto& a : thm1_automata(h, 6, 100 + n, n)) {
        auto report = verify_inverse(a, h, suite.graphs);
        EXPECT_TRUE(report.ok()) << suite.name << ": " << (report.failures().empty() ? "" : report.failures()[0]->detail);
        for (const auto& c : report.cases) ++outcomes[c.b_outcome.index()];
      }
    }
  }
  // The suite must exercise all three outcomes to mean anything.
  EXPECT_GT(outcomes[0], 0u);
  EXPECT_GT(outcomes[1], 0u);
  EXPECT_GT(outcomes[2], 0u);
}

TEST(VerifyInverse, ExpandingOverRandomSuite) {
  auto suite = random_suite(5);
  auto h = expanding_homomorphism(suite.sig);
  for (const auto& a : thm1_automata(h, 6, 21, 3)) {
    auto report = verify_inverse(a, h, suite.graphs);
    EXPECT_TRUE(report.ok()) << (report.failures().empty() ? "" : report.failures()[0]->detail);
    EXPECT_EQ(report.b_states, 3u * 4u + 1u);
  }
}

}  // namespace
}  // namespace gwa
