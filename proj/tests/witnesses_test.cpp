#include <gtest/gtest.h>

#include <map>
#include <set>

#include "gwa/core/canonical.hpp"
#include "gwa/engine/enumerate.hpp"
#include "gwa/witnesses/probe.hpp"
#include "gwa/witnesses/theorem2.hpp"

namespace gwa {
namespace {

// Gap constraint checked position by position on the raw sequence.
bool gap_holds(const Signature& sig, const std::vector<DirId>& seq) {
  const std::size_t k = seq.size();
  for (std::size_t p = 0; p < k; ++p) {
    DirId back = sig.opposite(seq[p]);
    if (seq[(p + 1) % k] == back || seq[(p + 2) % k] == back) return false;
  }
  return true;
}

std::size_t count_label(const Graph& g, std::string_view name) {
  std::size_t n = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) n += g.signature().label_name(g.label(NodeId(v))) == name;
  return n;
}

TEST(CyclicOrder, GapConstraintForNineAndTen) {
  for (std::size_t k : {9, 10, 11, 14}) {
    auto sig = Signature::make(standard_directions(k), {});
    CyclicOrder order = make_cyclic_order(*sig);
    ASSERT_EQ(order.size(), k);
    EXPECT_TRUE(gap_holds(*sig, order.order())) << k;
    std::set<DirId> seen(order.order().begin(), order.order().end());
    EXPECT_EQ(seen.size(), k);
    for (DirId d : order.order()) EXPECT_EQ(order.prev(order.next(d)), d);
  }
}

TEST(CyclicOrder, Deterministic) {
  auto sig = Signature::make(standard_directions(9), {});
  EXPECT_EQ(make_cyclic_order(*sig).order(), make_cyclic_order(*sig).order());
}

TEST(CyclicOrder, RefusedBelowNine) {
  auto sig = Signature::make(standard_directions(8), {});
  EXPECT_THROW(make_cyclic_order(*sig), PreconditionError);
}

TEST(CyclicOrder, SearchAgreesWithExistenceForSmallK) {
  // Exhaustive oracle: does any arrangement with the first direction fixed
  // satisfy the constraint?
  for (std::size_t k = 2; k <= 8; ++k) {
    auto sig = Signature::make(standard_directions(k), {});
    std::vector<DirId> rest;
    for (std::size_t i = 1; i < k; ++i) rest.push_back(DirId(i));
    bool exists = false;
    do {
      std::vector<DirId> seq{DirId(std::size_t{0})};
      seq.insert(seq.end(), rest.begin(), rest.end());
      exists = gap_holds(*sig, seq);
    } while (!exists && std::next_permutation(rest.begin(), rest.end()));
    auto found = find_cyclic_order(*sig);
    EXPECT_EQ(found.has_value(), exists) << k;
    if (found) EXPECT_TRUE(gap_holds(*sig, found->order()));
  }
}

TEST(Gadgets, HVariantsDifferInOneLabel) {
  for (std::size_t n : {2, 3, 5}) {
    auto sig = start_signature(4);
    Pluggable start = build_H(sig, n, HVariant::kStart);
    Pluggable fake = build_H(sig, n, HVariant::kFake);
    ASSERT_EQ(start.body.node_count(), 4 * n);
    ASSERT_EQ(fake.body.node_count(), 4 * n);
    std::size_t differing = 0;
    for (std::size_t v = 0; v < 4 * n; ++v) {
      differing += start.body.label(NodeId(v)) != fake.body.label(NodeId(v));
      for (std::size_t d = 0; d < 4; ++d) {
        EXPECT_EQ(start.body.neighbor(NodeId(v), DirId(d)), fake.body.neighbor(NodeId(v), DirId(d)));
      }
    }
    EXPECT_EQ(differing, 1u);
    EXPECT_TRUE(start.has_initial);
    EXPECT_FALSE(fake.has_initial);
    EXPECT_TRUE(validate_pluggable(start).ok()) << validate_pluggable(start);
    EXPECT_TRUE(validate_pluggable(fake).ok()) << validate_pluggable(fake);
  }
}

TEST(Gadgets, HShapeBounds) {
  auto sig = start_signature(4);
  EXPECT_THROW(build_H(sig, 1, HVariant::kStart), PreconditionError);
  EXPECT_THROW(build_H(sig, 2, HVariant::kStart, HShape{4, 3, 3}), PreconditionError);
  EXPECT_THROW(start_signature(3), PreconditionError);
  Pluggable custom = build_H(sig, 3, HVariant::kStart, HShape{7, 2, 5});
  EXPECT_EQ(custom.body.node_count(), 14u);
  EXPECT_TRUE(validate_pluggable(custom).ok());
}

TEST(Gadgets, EscapeLeavesHStart) {
  for (std::size_t n = 2; n <= 8; ++n) {
    auto sig = start_signature(4);
    Pluggable h = build_H(sig, n, HVariant::kStart);
    WalkingAutomaton m = build_escape_automaton(sig, n);
    ASSERT_EQ(m.state_count(), n);
    Walker w;
    Walk r = w.walk(m, h.body, {m.initial(), h.body.initial()});
    ASSERT_EQ(r.kind, Walk::Kind::kExit) << n;
    EXPECT_EQ(r.at.node, h.port);
    EXPECT_EQ(r.exit_dir, h.dir);
    EXPECT_EQ(r.exit_state, StateId(n - 1));
  }
}

TEST(Gadgets, FStructure) {
  auto sig = f_signature(9);
  for (std::size_t n : {2, 4}) {
    for (std::size_t d = 0; d < 9; ++d) {
      Pluggable fd = build_F(sig, n, DirId(d), std::nullopt);
      Pluggable fid = build_F(sig, n, DirId(d), n - 1);
      EXPECT_EQ(fd.body.node_count(), n + 1 + n * 4 * n);
      EXPECT_EQ(fd.dir, DirId(d));
      EXPECT_EQ(sig->label_name(fd.body.label(fd.port)), go_label(*sig, DirId(d)));
      ASSERT_EQ(fd.body.node_count(), fid.body.node_count());
      // Only the start/end_l label of one attached H differs.
      std::size_t differing = 0;
      for (std::size_t v = 0; v < fd.body.node_count(); ++v) {
        if (fd.body.label(NodeId(v)) == fid.body.label(NodeId(v))) continue;
        ++differing;
        EXPECT_EQ(sig->label_name(fd.body.label(NodeId(v))), "end_l");
        EXPECT_EQ(sig->label_name(fid.body.label(NodeId(v))), "start");
      }
      EXPECT_EQ(differing, 1u);
      EXPECT_TRUE(validate_pluggable(fd).ok()) << validate_pluggable(fd);
      EXPECT_TRUE(validate_pluggable(fid).ok()) << validate_pluggable(fid);
      std::size_t spine = 0;
      for (const char* l : {"c_st", "c'", "go'_a", "go'_b"}) spine += count_label(fd.body, l);
      EXPECT_EQ(spine + 1, n + 1);
    }
  }
}

TEST(Gadgets, EscapeExitStateLaw) {
  EscapeReport report = escape_sweep({2, 3, 4, 8}, 9);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.rows.size(), (2 + 3 + 4 + 8) * 9u);
  for (const auto& row : report.rows) {
    ASSERT_TRUE(row.exit_state.has_value());
    EXPECT_EQ(*row.exit_state, StateId(row.i));
  }
}

TEST(Theorem2, SignatureAndHomomorphismValid) {
  for (std::size_t k : {9, 10}) {
    auto sig = theorem2_signature(k);
    EXPECT_TRUE(validate_signature(*sig).ok()) << validate_signature(*sig);
    auto report = validate_homomorphism(theorem2_homomorphism(sig));
    EXPECT_TRUE(report.ok()) << report;
  }
  EXPECT_THROW(theorem2_signature(8), PreconditionError);
}

TEST(Theorem2, LabelDirectionSets) {
  auto sig = theorem2_signature(9);
  const Signature& s = *sig;
  CyclicOrder order = make_cyclic_order(s);
  EXPECT_EQ(s.dirs(s.label("q0?")).size(), 1u);
  EXPECT_TRUE(s.has_dir(s.label("c_-"), s.direction("a")));
  EXPECT_TRUE(s.has_dir(s.label("c_-"), s.direction("-a")));
  EXPECT_FALSE(s.find_label(go2_label(s, s.direction("a"), s.direction("a"))).has_value());
  EXPECT_TRUE(s.find_label(go2_label(s, s.direction("-b"), s.direction("a"))).has_value());
  for (std::size_t i = 0; i < 9; ++i) {
    DirId e(i);
    EXPECT_EQ(s.dirs(s.label(probe_label(s, e))).size(), 9u);
    std::set<DirId> used{s.opposite(e), s.opposite(order.next(e)), order.next(order.next(e))};
    EXPECT_EQ(used.size(), 3u);
    for (const auto& l : {accept_label(s, e), reject_label(s, e)}) {
      auto dirs = s.dirs(s.label(l));
      EXPECT_EQ(std::set<DirId>(dirs.begin(), dirs.end()), used);
    }
  }
}

TEST(Theorem2, RingPattern) {
  auto sig = theorem2_signature(9);
  Homomorphism h = theorem2_homomorphism(sig);
  WalkingAutomaton m = build_counter_automaton(sig, 4);
  for (std::size_t i = 0; i < 9; ++i) {
    DirId d(i);
    LabelId label = sig->label(probe_label(*sig, d));
    const Pattern& ring = h.pattern(label);
    EXPECT_EQ(ring.body().node_count(), 9u);
    EXPECT_EQ(ring.ports().size(), 9u);
    EXPECT_EQ(count_label(ring.body(), accept_label(*sig, d)), 1u);
    for (std::size_t j = 0; j < 9; ++j) {
      DirId e(j);
      // Arriving by a move along e lands at the port -e, i.e. at v_e.
      PatternResult r = simulate_in_pattern(m, h, label, EnterEntry{StateId(std::size_t{2}), e});
      if (e == d) {
        EXPECT_TRUE(std::holds_alternative<AcceptInside>(r));
      } else {
        EXPECT_TRUE(std::holds_alternative<RejectInside>(r));
      }
    }
  }
}

TEST(Theorem2, GeneratedGraphsValid) {
  for (std::size_t k : {9, 10}) {
    auto sig = theorem2_signature(k);
    Homomorphism h = theorem2_homomorphism(sig);
    for (std::size_t n = 2; n <= 8; ++n) {
      for (std::size_t d = 0; d < k; ++d) {
        // Corners of the (i, j) square plus the diagonal keep this quick.
        for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 0}, {0, n - 1}, {n - 1, 0}, {n - 1, n - 1}, {n / 2, n / 2}}) {
          Graph g = build_G_counter(sig, n, i, j, DirId(d));
          ASSERT_TRUE(validate_graph(g).ok()) << validate_graph(g);
          EXPECT_EQ(count_label(g, "c_-"), j);
          EXPECT_TRUE(validate_graph(apply(h, g)).ok());
        }
        for (std::size_t dp : {std::size_t{0}, d, k - 1}) {
          Graph g = build_G_probe(sig, n, n - 1, DirId(d), DirId(dp));
          ASSERT_TRUE(validate_graph(g).ok()) << validate_graph(g);
          std::size_t probes = 0;
          for (std::size_t e = 0; e < k; ++e) probes += count_label(g, probe_label(*sig, DirId(e)));
          EXPECT_EQ(probes, 1u);
          EXPECT_TRUE(validate_graph(apply(h, g)).ok());
        }
      }
    }
  }
}

TEST(Theorem2, CounterCodesDistinct) {
  auto sig = theorem2_signature(9);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t d = 0; d < 9; ++d) {
      std::map<CanonicalCode, std::pair<std::size_t, std::size_t>> seen;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Graph g = build_G_counter(sig, n, i, j, DirId(d));
          auto [it, fresh] = seen.emplace(canonical_encode(g), std::pair{i, j});
          EXPECT_TRUE(fresh) << "(" << i << "," << j << ") collides with (" << it->second.first << ","
                             << it->second.second << ")";
        }
      }
    }
  }
}

TEST(Theorem2, CounterAutomatonExamples) {
  auto sig = theorem2_signature(9);
  Homomorphism h = theorem2_homomorphism(sig);
  WalkingAutomaton m = build_counter_automaton(sig, 4);
  EXPECT_EQ(m.state_count(), 4u);
  EXPECT_TRUE(validate_automaton(m).ok()) << validate_automaton(m);
  EXPECT_THROW(build_counter_automaton(sig, 3), PreconditionError);
  for (std::size_t d = 0; d < 9; ++d) {
    EXPECT_TRUE(accepted(run(m, apply(h, build_G_counter(sig, 4, 3, 3, DirId(d))))));
    EXPECT_FALSE(accepted(run(m, apply(h, build_G_counter(sig, 4, 3, 2, DirId(d))))));
    EXPECT_FALSE(accepted(run(m, apply(h, build_G_counter(sig, 4, 2, 3, DirId(d))))));
    EXPECT_TRUE(accepted(run(m, apply(h, build_G_probe(sig, 4, 1, DirId(d), DirId(d))))));
    EXPECT_FALSE(accepted(run(m, apply(h, build_G_probe(sig, 4, 1, DirId(d), DirId((d + 1) % 9))))));
  }
}

TEST(Theorem2, Claim3TablesExact) {
  Claim3Report report = claim3_sweep(4, 9, 0);
  EXPECT_EQ(report.counter.size(), 16u * 9);
  EXPECT_EQ(report.probe.size(), 4u * 81);
  EXPECT_TRUE(report.bound_ok);
  EXPECT_EQ(report.mismatches, 0u);
  std::size_t accepted_counter = 0;
  for (const auto& row : report.counter) accepted_counter += row.accepted;
  EXPECT_EQ(accepted_counter, 4u * 9);
}

TEST(Theorem2, SweepIndependentOfJobs) {
  Claim3Report a = claim3_sweep(4, 9, 1);
  Claim3Report b = claim3_sweep(4, 9, 4);
  ASSERT_EQ(a.probe.size(), b.probe.size());
  for (std::size_t c = 0; c < a.probe.size(); ++c) EXPECT_EQ(a.probe[c].outcome, b.probe[c].outcome);
  EXPECT_EQ(a.max_steps, b.max_steps);
}

TEST(Probe, IdenticalSubgraphsNeverDistinguished) {
  auto sig = start_signature(4);
  Pluggable h = build_H(sig, 2, HVariant::kStart);
  ProbeReport lazy = lazy_probe(h, h, 2);
  EXPECT_EQ(lazy.distinguishing, 0u);
  EXPECT_EQ(lazy.automata, *automaton_count(*restrict_pair(h, h).sig, 2));
  AutomatonEnumerator e(sig, 1);
  ProbeReport plain = distinguishability_probe(h, h, [&] { return e.next(); });
  EXPECT_EQ(plain.automata, 750u);
  EXPECT_EQ(plain.distinguishing, 0u);
}

TEST(Probe, LazyMatchesPlainEnumeration) {
  auto sig = start_signature(4);
  Pluggable start = build_H(sig, 2, HVariant::kStart);
  Pluggable fake = build_H(sig, 2, HVariant::kFake);
  AutomatonEnumerator e(sig, 1);
  ProbeReport plain = distinguishability_probe(start, fake, [&] { return e.next(); });
  ProbeReport lazy = lazy_probe(start, fake, 1);
  EXPECT_EQ(lazy.automata, plain.automata);
  EXPECT_EQ(lazy.distinguishing, plain.distinguishing);
  EXPECT_LT(lazy.explored, plain.explored);
  for (const auto& ex : lazy.examples) {
    auto again = distinguishes(ex.automaton, restrict_pair(start, fake).x, restrict_pair(start, fake).y);
    EXPECT_TRUE(again.has_value());
  }
}

TEST(Probe, LazyMatchesPlainOnFPair) {
  auto fsig = f_signature(4);
  DirId d = fsig->direction("b");
  ProbePair pair = restrict_pair(build_F(fsig, 2, d, 0), build_F(fsig, 2, d, std::nullopt));
  AutomatonEnumerator e(pair.sig, 1);
  ProbeReport plain = distinguishability_probe(pair.x, pair.y, [&] { return e.next(); });
  ProbeReport lazy = lazy_probe(pair.x, pair.y, 1);
  EXPECT_EQ(lazy.automata, plain.automata);
  EXPECT_EQ(lazy.distinguishing, plain.distinguishing);
}

}  // namespace
}  // namespace gwa
