#include <gtest/gtest.h>

#include "gwa/core/canonical.hpp"
#include "gwa/core/generate.hpp"
#include "gwa/core/validate.hpp"
#include "gwa/hom/homomorphism.hpp"
#include "gwa/io/json.hpp"
#include "gwa/repro/thm1.hpp"
#include "gwa/trees/tree_automaton.hpp"
#include "gwa/witnesses/gadgets.hpp"
#include "gwa/witnesses/theorem2.hpp"
#include "support/fixtures.hpp"

namespace gwa {
namespace {

using testing::grid_signature;
using testing::self_opposite_signature;

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "<no error>";
}

// Physical edges counted from the slot table: a symmetric pair is one edge,
// and a self-opposite self-loop occupies one slot.
std::size_t physical_edges(const Graph& g) {
  std::size_t slots = 0;
  std::size_t single = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    for (std::size_t d = 0; d < g.signature().direction_count(); ++d) {
      NodeId u = g.neighbor(NodeId(v), DirId(d));
      if (!u.valid()) continue;
      ++slots;
      if (g.signature().is_self_opposite(DirId(d)) && u == NodeId(v)) ++single;
    }
  }
  return single + (slots - single) / 2;
}

TEST(SignatureIo, RoundTrip) {
  for (const SignaturePtr& sig : {grid_signature(), self_opposite_signature(), theorem2_signature(9)}) {
    Json j = signature_to_json(*sig);
    SignaturePtr back = signature_from_json(parse_json(dump(j), "sig"));
    EXPECT_TRUE(*back == *sig);
    EXPECT_EQ(dump(signature_to_json(*back)), dump(j));
  }
}

TEST(SignatureIo, DeclarationOrderIsKept) {
  SignaturePtr sig = Signature::make({{"z", "y"}, {"y", "z"}}, {{"b", true, {"z"}}, {"a", false, {"y", "z"}}});
  Json j = signature_to_json(*sig);
  EXPECT_EQ(j["directions"][0]["name"], "z");
  EXPECT_EQ(j["labels"][0]["name"], "b");
  // dirs are a set, so they are sorted.
  EXPECT_EQ(j["labels"][1]["dirs"], Json({"y", "z"}));
  SignaturePtr swapped = Signature::make({{"z", "y"}, {"y", "z"}}, {{"b", true, {"z"}}, {"a", false, {"z", "y"}}});
  EXPECT_TRUE(*swapped == *sig);
  SignaturePtr reordered = Signature::make({{"y", "z"}, {"z", "y"}}, {{"b", true, {"z"}}, {"a", false, {"y", "z"}}});
  EXPECT_FALSE(*reordered == *sig);
}

TEST(GraphIo, RoundTripEnumerated) {
  for (const SignaturePtr& sig : {grid_signature(), self_opposite_signature()}) {
    for (const Graph& g : enumerate_graphs(sig, 4)) {
      Json j = graph_to_json(g);
      EXPECT_EQ(j["edges"].size(), physical_edges(g));
      Graph back = graph_from_json(parse_json(dump(j), "g"), sig);
      EXPECT_EQ(canonical_encode(back), canonical_encode(g));
      EXPECT_EQ(dump(graph_to_json(back)), dump(j));
      EXPECT_TRUE(validate_graph(back).ok());
    }
  }
}

TEST(GraphIo, RoundTripRandomAndInline) {
  SignaturePtr sig = grid_signature();
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    Graph g = random_graph(sig, rng, 3, 12);
    Json j = graph_to_json(g, true);
    Graph back = graph_from_json(j, nullptr);
    EXPECT_EQ(canonical_encode(back), canonical_encode(g));
    EXPECT_EQ(back.id(back.initial()), g.id(g.initial()));
  }
}

TEST(GraphIo, NodeOrderInTheFileDoesNotMatter) {
  Graph g = enumerate_graphs(grid_signature(), 4).back();
  Json j = graph_to_json(g);
  Json shuffled = j;
  std::reverse(shuffled["nodes"].begin(), shuffled["nodes"].end());
  std::reverse(shuffled["edges"].begin(), shuffled["edges"].end());
  EXPECT_EQ(dump(graph_to_json(graph_from_json(shuffled, grid_signature()))), dump(j));
}

TEST(GraphIo, BrokenGraphsSurviveRoundTrip) {
  SignaturePtr sig = grid_signature();
  GraphBuilder b(sig);
  NodeId r = b.add_node("r", "r1");
  NodeId x = b.add_node("x", "x");
  b.set_half_edge(r, sig->direction("a"), x);
  Graph g = std::move(b).build();
  Json j = graph_to_json(g);
  ASSERT_EQ(j["edges"].size(), 1u);
  EXPECT_TRUE(j["edges"][0].value("half", false));
  Graph back = graph_from_json(j, sig);
  EXPECT_EQ(validate_graph(back).violations, validate_graph(g).violations);
  EXPECT_FALSE(validate_graph(back).ok());
}

TEST(GraphIo, ErrorsCarryLocations) {
  SignaturePtr sig = grid_signature();
  EXPECT_NE(message_of([] { parse_json("{\n  \"nodes\": [,]\n}", "bad.json"); }).find("bad.json:2:"), std::string::npos);

  Json j = graph_to_json(enumerate_graphs(sig, 2).back());
  Json unknown = j;
  unknown["nodes"][1]["label"] = "nope";
  EXPECT_NE(message_of([&] { graph_from_json(unknown, sig, "g.json"); }).find("g.json:/nodes/1: "), std::string::npos);

  Json missing = j;
  missing.erase("initial");
  EXPECT_NE(message_of([&] { graph_from_json(missing, sig); }).find("missing key 'initial'"), std::string::npos);

  Json bad_dir = j;
  bad_dir["edges"][0]["dir"] = "q";
  EXPECT_NE(message_of([&] { graph_from_json(bad_dir, sig); }).find("/edges/0"), std::string::npos);

  Json wrong_type = j;
  wrong_type["nodes"][0]["id"] = 3;
  EXPECT_NE(message_of([&] { graph_from_json(wrong_type, sig); }).find("/nodes/0/id: expected a string"),
            std::string::npos);

  EXPECT_NE(message_of([&] { graph_from_json(j, nullptr); }).find("no signature"), std::string::npos);
  Json other = graph_to_json(enumerate_graphs(sig, 2).back(), true);
  EXPECT_NE(message_of([&] { graph_from_json(other, self_opposite_signature()); }).find("differs"), std::string::npos);
}

TEST(AutomatonIo, RoundTrip) {
  SignaturePtr sig = grid_signature();
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    WalkingAutomaton a = random_automaton(sig, 1 + i % 4, rng);
    a.set_initial(StateId(static_cast<std::size_t>(i % a.state_count())));
    Json j = automaton_to_json(a, i % 2 == 0);
    WalkingAutomaton back = automaton_from_json(parse_json(dump(j), "a"), sig);
    EXPECT_TRUE(back == a);
    EXPECT_EQ(dump(automaton_to_json(back, i % 2 == 0)), dump(j));
  }
}

TEST(AutomatonIo, Errors) {
  SignaturePtr sig = grid_signature();
  Rng rng(3);
  Json j = automaton_to_json(random_automaton(sig, 2, rng, 0, 0));
  Json twice = j;
  twice["transitions"].push_back(j["transitions"][0]);
  EXPECT_NE(message_of([&] { automaton_from_json(twice, sig); }).find("defined twice"), std::string::npos);
  Json bad_state = j;
  bad_state["transitions"][2]["next"] = "zz";
  EXPECT_NE(message_of([&] { automaton_from_json(bad_state, sig); }).find("/transitions/2/next"), std::string::npos);
  Json no_states = j;
  no_states["states"] = Json::array();
  EXPECT_NE(message_of([&] { automaton_from_json(no_states, sig); }).find("/states"), std::string::npos);
}

TEST(HomomorphismIo, RoundTripPreservesImages) {
  std::vector<Homomorphism> homs{expanding_homomorphism(grid_signature()), theorem2_homomorphism(theorem2_signature(9)),
                                 identity_homomorphism(self_opposite_signature())};
  for (const Homomorphism& h : homs) {
    Json j = homomorphism_to_json(h);
    Homomorphism back = homomorphism_from_json(parse_json(dump(j), "h"));
    EXPECT_TRUE(validate_homomorphism(back).ok()) << validate_homomorphism(back);
    EXPECT_EQ(dump(homomorphism_to_json(back)), dump(j));
    for (const Graph& g : enumerate_graphs(h.source_ptr(), 3)) {
      Graph g2 = g.rebind(back.source_ptr());
      EXPECT_EQ(canonical_encode(apply(back, g2)), canonical_encode(apply(h, g)));
    }
  }
}

TEST(HomomorphismIo, Errors) {
  Json j = homomorphism_to_json(expanding_homomorphism(grid_signature()));
  Json extra = j;
  extra["patterns"]["ghost"] = j["patterns"]["x"];
  EXPECT_NE(message_of([&] { homomorphism_from_json(extra, "h.json"); }).find("h.json:/patterns/ghost"),
            std::string::npos);
  Json missing = j;
  missing["patterns"].erase("x");
  EXPECT_NE(message_of([&] { homomorphism_from_json(missing); }).find("missing key 'x'"), std::string::npos);
  Json bad_port = j;
  bad_port["patterns"]["x"]["ports"]["a"] = "nowhere";
  EXPECT_NE(message_of([&] { homomorphism_from_json(bad_port); }).find("/patterns/x/ports"), std::string::npos);
}

TEST(TreeAutomatonIo, RoundTripPreservesRuns) {
  SignaturePtr sig = standard_tree_signature(2);
  for (const TreeAutomaton& a : {parity_automaton(sig), accept_all_automaton(sig)}) {
    Json j = tree_automaton_to_json(a);
    TreeAutomaton back = tree_automaton_from_json(parse_json(dump(j), "t"), nullptr);
    EXPECT_EQ(dump(tree_automaton_to_json(back)), dump(j));
    for (const Graph& t : enumerate_trees(sig, 5)) {
      Graph t2 = t.rebind(back.signature_ptr());
      EXPECT_EQ(eval_dta(back, t2).accepted, eval_dta(a, t).accepted);
    }
  }
}

TEST(TreeAutomatonIo, Errors) {
  SignaturePtr sig = standard_tree_signature(2);
  Json j = tree_automaton_to_json(parity_automaton(sig));
  Json arity = j;
  arity["delta"][0]["args"].push_back("even");
  EXPECT_NE(message_of([&] { tree_automaton_from_json(arity, nullptr); }).find("/delta/0/args"), std::string::npos);
  Json twice = j;
  twice["delta"].push_back(j["delta"][3]);
  EXPECT_NE(message_of([&] { tree_automaton_from_json(twice, nullptr); }).find("defined twice"), std::string::npos);
  Json gap = j;
  gap["delta"].erase(gap["delta"].begin());
  TreeAutomaton partial = tree_automaton_from_json(gap, nullptr);
  EXPECT_TRUE(validate_tree_automaton(partial).has("missing transition"));
}

TEST(Dot, MentionsEveryNodeAndEdge) {
  Graph g = build_H(start_signature(4), 2, HVariant::kStart).body;
  std::string dot = to_dot(g);
  for (std::size_t v = 0; v < g.node_count(); ++v) EXPECT_NE(dot.find("\"" + g.id(NodeId(v)) + "\""), std::string::npos);
  EXPECT_EQ(static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '>')), physical_edges(g));
  EXPECT_NE(dot.find("doublecircle"), std::string::npos);
}

}  // namespace
}  // namespace gwa
