#include <gtest/gtest.h>

#include <set>

#include "gwa/engine/enumerate.hpp"
#include "gwa/engine/run.hpp"
#include "support/fixtures.hpp"

namespace gwa {
namespace {

using testing::cycle_signature;
using testing::grid_signature;

TEST(Run, AcceptAtStart) {
  auto sig = cycle_signature();
  Graph g = enumerate_graphs(sig, 1).front();
  WalkingAutomaton a(sig, {"q0"});
  a.set_accept(a.initial(), sig->label("r"));
  Outcome o = run(a, g);
  ASSERT_TRUE(std::holds_alternative<Accept>(o));
  EXPECT_EQ(outcome_steps(o), 0u);
  EXPECT_EQ(trace(a, g).size(), 1u);
}

TEST(Run, RejectAtStart) {
  auto sig = cycle_signature();
  Graph g = enumerate_graphs(sig, 1).front();
  WalkingAutomaton a(sig, {"q0"});
  Outcome o = run(a, g);
  ASSERT_TRUE(std::holds_alternative<Reject>(o));
  EXPECT_EQ(std::get<Reject>(o).at, (Configuration{a.initial(), g.initial()}));
}

// r --a--> x, back with -a: three configurations, the third repeats the first.
TEST(Run, TwoNodeLoop) {
  auto sig = Signature::make({{"d", "-d"}, {"-d", "d"}}, {{"a", true, {"d"}}, {"b", false, {"-d"}}});
  GraphBuilder b(sig);
  b.add_node("u", "a");
  b.add_node("w", "b");
  b.connect("u", "d", "w");
  Graph g = std::move(b).build();
  WalkingAutomaton a(sig, {"q0"});
  a.set_move(a.initial(), sig->label("a"), a.initial(), sig->direction("d"));
  a.set_move(a.initial(), sig->label("b"), a.initial(), sig->direction("-d"));
  Outcome o = run(a, g);
  ASSERT_TRUE(std::holds_alternative<Loop>(o));
  EXPECT_EQ(std::get<Loop>(o).cycle_length, 2u);
  EXPECT_EQ(std::get<Loop>(o).steps, 2u);
  auto t = trace(a, g);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0], t[2]);
  EXPECT_EQ(trace(a, g, 2).size(), 2u);
}

TEST(Run, SignatureMismatchThrows) {
  auto sig = cycle_signature();
  WalkingAutomaton a(testing::grid_signature(), {"q0"});
  EXPECT_THROW(run(a, enumerate_graphs(sig, 1).front()), PreconditionError);
}

TEST(Automaton, Validation) {
  auto sig = cycle_signature();
  WalkingAutomaton a(sig, {"q0", "q0"});
  a.set_move(StateId(std::size_t{0}), sig->label("r"), StateId(std::size_t{5}), sig->direction("a"));
  auto report = validate_automaton(a);
  EXPECT_TRUE(report.has("duplicate state"));
  EXPECT_TRUE(report.has("next state out of range"));

  auto narrow = Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {"a"}}, {"x", false, {"-a"}}});
  WalkingAutomaton b(narrow, {"q0"});
  b.set_move(b.initial(), narrow->label("r"), b.initial(), narrow->direction("-a"));
  EXPECT_TRUE(validate_automaton(b).has("direction not in label"));
}

TEST(Automaton, Unreachable) {
  auto sig = cycle_signature();
  WalkingAutomaton a(sig, {"q0", "q1", "q2"});
  a.set_move(StateId(std::size_t{0}), sig->label("x"), StateId(std::size_t{2}), sig->direction("a"));
  auto u = unreachable_states(a);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0], StateId(std::size_t{1}));
}

// Closed form for the enumeration size: prod over cells of (2 + |Q||D_a|).
TEST(Enumerate, Counts) {
  auto empty_dirs = Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {}}});
  EXPECT_EQ(enumerate_automata(empty_dirs, 1, 1000).size(), 2u);
  auto two_dirs = Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {"a", "-a"}}});
  EXPECT_EQ(enumerate_automata(two_dirs, 1, 1000).size(), 4u);
  EXPECT_TRUE(enumerate_automata(two_dirs, 1, 0).empty());
  EXPECT_EQ(enumerate_automata(two_dirs, 2, 1000).size(), 36u);
  EXPECT_EQ(automaton_count(*two_dirs, 2), 36u);
  EXPECT_EQ(enumerate_automata(two_dirs, 2, 10).size(), 10u);
  EXPECT_THROW(AutomatonEnumerator(two_dirs, 0), PreconditionError);
}

TEST(Enumerate, PairwiseDistinctAndValid) {
  auto sig = cycle_signature();
  auto all = enumerate_automata(sig, 2, UINT64_MAX);
  ASSERT_EQ(all.size(), *automaton_count(*sig, 2));
  std::set<std::vector<int>> seen;
  for (const auto& a : all) {
    EXPECT_TRUE(validate_automaton(a).ok());
    std::vector<int> key;
    for (std::size_t q = 0; q < 2; ++q) {
      for (std::size_t l = 0; l < 2; ++l) {
        const Action& act = a.action(StateId(q), LabelId(l));
        key.push_back(static_cast<int>(act.kind));
        key.push_back(static_cast<int>(act.next.value));
        key.push_back(static_cast<int>(act.dir.value));
      }
    }
    seen.insert(key);
  }
  EXPECT_EQ(seen.size(), all.size());
}

TEST(Enumerate, OrderIsOdometer) {
  auto sig = Signature::make({{"a", "-a"}, {"-a", "a"}}, {{"r", true, {"a"}}});
  auto all = enumerate_automata(sig, 1, 10);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].action(StateId(std::size_t{0}), LabelId(std::size_t{0})).kind, Action::Kind::kAccept);
  EXPECT_EQ(all[1].action(StateId(std::size_t{0}), LabelId(std::size_t{0})).kind, Action::Kind::kUndefined);
  EXPECT_EQ(all[2].action(StateId(std::size_t{0}), LabelId(std::size_t{0})).kind, Action::Kind::kMove);
}

// Termination bound, replay soundness and determinism over random pairs.
TEST(RunProperty, BoundReplayDeterminism) {
  Rng rng(2024);
  auto sig = grid_signature();
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(sig, rng, 1, 12);
    WalkingAutomaton a = random_automaton(sig, 1 + rng.below(4), rng, 50, 50);
    Outcome o = run(a, g);
    auto t = trace(a, g);
    EXPECT_LE(t.size(), a.state_count() * g.node_count() + 1);
    EXPECT_TRUE(replay_consistent(a, g, t, o));
    EXPECT_EQ(run(a, g).index(), o.index());
    EXPECT_EQ(outcome_steps(run(a, g)), outcome_steps(o));
  }
}

TEST(Agree, SelfAndRenamed) {
  Rng rng(5);
  auto sig = grid_signature();
  std::vector<Graph> suite;
  for (int i = 0; i < 40; ++i) suite.push_back(random_graph(sig, rng, 1, 8));
  WalkingAutomaton a = random_automaton(sig, 3, rng);
  EXPECT_TRUE(agree_on(a, a, suite).fully_ok());

  // Renamed and permuted control: swap q1 and q2.
  WalkingAutomaton b(sig, {"s0", "s2", "s1"});
  auto perm = [](StateId q) { return q.index() == 0 ? q : StateId(3 - q.index()); };
  for (std::size_t q = 0; q < 3; ++q) {
    for (std::size_t l = 0; l < sig->label_count(); ++l) {
      Action act = a.action(StateId(q), LabelId(l));
      if (act.kind == Action::Kind::kMove) act.next = perm(act.next);
      b.set_action(perm(StateId(q)), LabelId(l), act);
    }
  }
  auto report = agree_on(a, b, suite);
  EXPECT_TRUE(report.fully_ok());
  EXPECT_EQ(report.entries.size(), suite.size());
}

}  // namespace
}  // namespace gwa
